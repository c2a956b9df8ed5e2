"""Full decomposition reports for a vertex pair, and path rankings.

A report lists every simple path between two vertices together with its
weight and its share of the total association, then cross-checks the sum of
weights against the closed-form target (the corresponding matrix entry,
computed without touching any path weight). The residual of that comparison is
always reported, never hidden: it is the live certificate that the
decomposition identity held on this input.

Shares are fractions of the total absolute weight. When every weight between
a pair carries the same sign (which the signed-positivity check in
:mod:`pathweights.fit` can certify globally), shares coincide with signed
proportions of the association itself; the ``same_signed`` flag records
whether that reading applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from .errors import UndefinedShareError
from .graphs import DEFAULT_PATH_CAP, Path, enumerate_paths
from .model import CustomScaling, Kind, Measure, Model
from .symmetric import SymMatrix, chol_det
from .weights import DEFAULT_ZERO_TOL, _covariance_weight_seq, _endpoint_scale


@dataclass(frozen=True)
class PathContribution:
    path: Path
    weight: float
    share: float


@dataclass(frozen=True)
class DecompositionReport:
    """Decomposition of one association entry over the paths joining (x, y)."""

    x: str
    y: str
    measure: Kind
    restrict: tuple[str, ...] | None
    entries: tuple[PathContribution, ...]
    target: float
    residual: float
    same_signed: bool

    @property
    def total_weight(self) -> float:
        return math.fsum(e.weight for e in self.entries)

    def to_dict(self) -> dict:
        measure = self.measure.value if isinstance(self.measure, Measure) else "custom"
        return {
            "x": self.x,
            "y": self.y,
            "measure": measure,
            "restrict": list(self.restrict) if self.restrict is not None else None,
            "target": self.target,
            "residual": self.residual,
            "same_signed": self.same_signed,
            "paths": [
                {"path": list(e.path.sequence), "weight": e.weight, "share": e.share}
                for e in self.entries
            ],
        }


def _conditional_weight(cond: SymMatrix, m: Model, sequence, det_memo: dict) -> float:
    """Covariance weight of ``sequence`` against a conditional covariance block.

    Block determinants are memoized per call: distinct paths between a pair
    reuse the same vertex sets far more often than not.
    """
    vset = frozenset(sequence)
    det = det_memo.get(vset)
    if det is None:
        idx = [cond._pos[v] for v in vset]
        ii = np.array(idx, dtype=np.intp)
        det = chol_det(cond.values[ii[:, None], ii])
        det_memo[vset] = det
    sign = 1.0 if len(sequence) % 2 else -1.0
    prod = 1.0
    kv = m.kappa.values
    kpos = m.kappa._pos
    for u, v in zip(sequence, sequence[1:]):
        prod *= kv[kpos[u], kpos[v]]
    return sign * det * prod


def _conditional_scale(m: Model, kind: Kind, cond: SymMatrix, x: str, y: str) -> float:
    """Endpoint rescaling for weights computed against ``cond``.

    ``cond`` is the covariance the paths decompose: the full covariance when
    unrestricted, otherwise the partial covariance of the restriction set.
    The correlation measure scales by the (conditional) endpoint variances;
    the inflated-correlation measure scales by the concentration diagonal,
    which is the same for the conditional and the full model.
    """
    if kind is Measure.COVARIANCE:
        return 1.0
    if kind is Measure.CORRELATION:
        return 1.0 / math.sqrt(cond.entry(x, x) * cond.entry(y, y))
    if kind is Measure.INFLATED_CORRELATION:
        return math.sqrt(m.kappa.entry(x, x) * m.kappa.entry(y, y))
    if isinstance(kind, CustomScaling):
        return _endpoint_scale(m, kind, x, y)
    raise TypeError(f"unsupported measure kind: {kind!r}")


def decompose(
    m: Model,
    x: str,
    y: str,
    kind: Kind = Measure.COVARIANCE,
    restrict: Iterable[str] | None = None,
    cap: int = DEFAULT_PATH_CAP,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> DecompositionReport:
    """Decompose the (x, y) entry of the chosen measure over connecting paths.

    With ``restrict`` set to A, both the path collection and the target are
    taken from the conditional model on A (paths confined to A, target the
    corresponding entry of the partial measure), which generalizes the plain
    decomposition and reduces to it at A = V.

    The target is always computed from the matrix side (entry of a Schur
    complement or of an inverse), so the reported residual is an independent
    check of the path sum rather than a tautology.
    """
    if x == y:
        raise ValueError("decomposition endpoints must differ")
    m.graph.require_vertices([x, y])
    a = None if restrict is None else m.graph.require_vertices(restrict)
    if a is not None and not {x, y} <= set(a):
        raise ValueError("restrict set must contain both endpoints")

    src, dst = (x, y) if x <= y else (y, x)
    paths = enumerate_paths(m.graph, src, dst, restrict=a, cap=cap)

    if a is None:
        cond = m.sigma
        scale = _conditional_scale(m, kind, cond, src, dst)
        raw = [_covariance_weight_seq(m, p.sequence) * scale for p in paths]
    else:
        cond = m.sigma.schur_complement(a, m.graph.complement(a))
        scale = _conditional_scale(m, kind, cond, src, dst)
        det_memo: dict = {}
        raw = [_conditional_weight(cond, m, p.sequence, det_memo) * scale for p in paths]

    if kind is Measure.INFLATED_CORRELATION and a is not None:
        # Entry of the inverse of the restricted (I - partial_corr) block; the
        # one target the scaled Schur entry does not cover.
        target = m.conditional_inflated_correlation(a).entry(src, dst)
    else:
        target = cond.entry(src, dst) * scale

    total_abs = math.fsum(abs(w) for w in raw)
    shares = [abs(w) / total_abs if total_abs > 0.0 else 0.0 for w in raw]
    residual = math.fsum(raw) - target
    signs = {w > 0.0 for w in raw if abs(w) > zero_tol}
    return DecompositionReport(
        x=x,
        y=y,
        measure=kind,
        restrict=a,
        entries=tuple(
            PathContribution(path=p, weight=w, share=s)
            for p, w, s in zip(paths, raw, shares)
        ),
        target=target,
        residual=residual,
        same_signed=len(signs) <= 1,
    )


def subset_share(report: DecompositionReport, predicate: Callable[[Path], bool]) -> float:
    """Fraction of the total absolute weight carried by matching paths."""
    total = math.fsum(abs(e.weight) for e in report.entries)
    if not report.entries or total == 0.0:
        raise UndefinedShareError("shares are undefined: no paths or all weights zero")
    return math.fsum(abs(e.weight) for e in report.entries if predicate(e.path)) / total


def rank_paths(
    m: Model,
    vertex_count: int,
    kind: Kind = Measure.INFLATED_CORRELATION,
    cap: int = DEFAULT_PATH_CAP,
) -> list[tuple[Path, float]]:
    """All paths on exactly ``vertex_count`` vertices, strongest weight first.

    Only the inflated-correlation measure is accepted: it is the one measure
    whose weights share the same bounds for every endpoint pair, so comparing
    paths with different endpoints is meaningful. Ties break on the canonical
    vertex sequence, making the order fully deterministic.
    """
    if vertex_count < 2:
        raise ValueError("paths need at least two vertices")
    if kind is not Measure.INFLATED_CORRELATION:
        raise ValueError(
            "cross-pair ranking is only meaningful for the inflated-correlation measure"
        )
    ranked: list[tuple[Path, float]] = []
    for src, dst in combinations(m.graph.vertices, 2):
        src, dst = (src, dst) if src <= dst else (dst, src)
        scale = _conditional_scale(m, kind, m.sigma, src, dst)
        for p in enumerate_paths(m.graph, src, dst, max_len=vertex_count, cap=cap):
            if len(p) == vertex_count:
                ranked.append((p.canonical(), _covariance_weight_seq(m, p.sequence) * scale))
    ranked.sort(key=lambda item: (-abs(item[1]), item[0].sequence))
    return ranked
