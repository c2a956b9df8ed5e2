"""Path-weight computations for concentration graph models.

Every entry of the covariance matrix decomposes additively over the simple
paths joining its two variables in the concentration graph. The weight of a
path with vertex set P is

    weight = (-1)^(|P|+1) * |Sigma_PP| * prod(k_uv over path edges),

which equals the equivalent complement form (-1)^(|P|+1) |K_PbarPbar| / |K|
times the same edge product; the |Sigma_PP| form is used throughout because
the |P| x |P| determinant is cheaper and better conditioned than the
complement determinant. The same decomposition applies verbatim to any
congruence D * Sigma * D with nonzero diagonal D, whose path weights are just
the covariance weights rescaled by the two endpoint entries of D. Correlation
and inflated-correlation weights are the two named instances.

A weight factors into a partial weight (computed after linearly adjusting for
the variables outside a conditioning set) times an inflation factor, which is
how the package interprets what a weight means: the association carried by
the path itself, amplified by how strongly the path's variables are tied to
the rest of the network.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graphs import Path, validate_path
from .inflation import inflation_factor
from .model import CustomScaling, Kind, Measure, Model
from .symmetric import chol_det

#: Weights at or below this magnitude are treated as zero by sign checks.
DEFAULT_ZERO_TOL = 1e-12


# -- internal evaluation ----------------------------------------------------
#
# Path-weight workloads (decomposition across measures, betweenness, path
# rankings) recompute determinants of the same principal blocks over and over:
# a block determinant depends only on the vertex *set*, and the number of
# distinct sets is tiny next to the number of (path, measure) evaluations.
# These helpers memoize such scalars on the model, which is immutable, so a
# cache entry can never go stale.

_MEMO_LIMIT = 500_000


def _block_det(values: np.ndarray, pos: dict, labels) -> float:
    idx = np.fromiter((pos[v] for v in labels), dtype=np.intp, count=len(labels))
    return chol_det(values[idx[:, None], idx])


def _sigma_block_det(m: Model, vset: frozenset) -> float:
    memo = m._memo
    key = ("sigma_det", vset)
    val = memo.get(key)
    if val is None:
        val = _block_det(m.sigma.values, m.sigma._pos, vset)
        if len(memo) < _MEMO_LIMIT:
            memo[key] = val
    return val


def _i_minus_r(m: Model) -> np.ndarray:
    arr = m._memo.get("i_minus_r")
    if arr is None:
        arr = np.eye(m.sigma.dim) - m.partial_corr.values
        arr.flags.writeable = False
        m._memo["i_minus_r"] = arr
    return arr


def _imr_block_det(m: Model, vset: frozenset) -> float:
    memo = m._memo
    key = ("imr_det", vset)
    val = memo.get(key)
    if val is None:
        val = _block_det(_i_minus_r(m), m.partial_corr._pos, vset)
        if len(memo) < _MEMO_LIMIT:
            memo[key] = val
    return val


def _inflated_block_det(m: Model, vset: frozenset) -> float:
    memo = m._memo
    key = ("inflated_det", vset)
    val = memo.get(key)
    if val is None:
        val = _block_det(m.inflated.values, m.inflated._pos, vset)
        if len(memo) < _MEMO_LIMIT:
            memo[key] = val
    return val


def _inflated_full_det(m: Model) -> float:
    val = m._memo.get("inflated_full_det")
    if val is None:
        val = m.inflated.det()
        m._memo["inflated_full_det"] = val
    return val


def _covariance_weight_seq(m: Model, sequence: Sequence[str]) -> float:
    """Covariance weight of an already-validated vertex sequence."""
    det = _sigma_block_det(m, frozenset(sequence))
    sign = 1.0 if len(sequence) % 2 else -1.0
    prod = 1.0
    kv = m.kappa.values
    kpos = m.kappa._pos
    for u, v in zip(sequence, sequence[1:]):
        prod *= kv[kpos[u], kpos[v]]
    return sign * det * prod


def _delta_vector(m: Model, kind: Kind) -> np.ndarray:
    """Diagonal of the congruence that turns Sigma into the requested measure."""
    if isinstance(kind, CustomScaling):
        missing = [v for v in m.vertices if v not in kind.delta]
        if missing:
            raise ValueError(f"custom scaling is missing entries for {missing}")
        return np.array([float(kind.delta[v]) for v in m.vertices])
    cached = m._memo.get(kind)
    if cached is not None:
        return cached
    if kind is Measure.COVARIANCE:
        d = np.ones(m.sigma.dim)
    elif kind is Measure.CORRELATION:
        d = 1.0 / np.sqrt(m.sigma.diagonal())
    elif kind is Measure.INFLATED_CORRELATION:
        d = np.sqrt(m.kappa.diagonal())
    else:
        raise TypeError(f"unsupported measure kind: {kind!r}")
    m._memo[kind] = d
    return d


def _endpoint_scale(m: Model, kind: Kind, x: str, y: str) -> float:
    d = _delta_vector(m, kind)
    pos = m.sigma._pos
    return float(d[pos[x]] * d[pos[y]])


def _edge_pcor_product(m: Model, path: Path) -> float:
    r = m.partial_corr
    prod = 1.0
    for u, v in zip(path.sequence, path.sequence[1:]):
        prod *= r.values[r._pos[u], r._pos[v]]
    return prod


def _restriction(m: Model, path: Path, a: Iterable[str] | None) -> tuple[str, ...]:
    """Validated conditioning set: V(path) <= a <= V, default a = V(path)."""
    if a is None:
        return m.graph.require_vertices(path.vertex_set)
    a = m.graph.require_vertices(a)
    if not path.vertex_set <= set(a):
        raise ValueError("conditioning set must contain every vertex of the path")
    return a


# -- weights ------------------------------------------------------------------

def weight(m: Model, path: Path, kind: Kind = Measure.COVARIANCE) -> float:
    """Weight of ``path`` in the decomposition of the requested measure.

    The covariance weight is the path's additive contribution to
    sigma_xy = sum over paths; other kinds rescale it by the endpoint
    entries of the defining congruence, which is exactly the weight obtained
    by decomposing the scaled matrix directly.
    """
    validate_path(m.graph, path)
    base = _covariance_weight_seq(m, path.sequence)
    return base * _endpoint_scale(m, kind, path.x, path.y)


def partial_weight(
    m: Model,
    path: Path,
    a: Iterable[str] | None = None,
    kind: Kind = Measure.COVARIANCE,
) -> float:
    """Weight of ``path`` relative to X_A adjusted for everything outside A.

    ``a`` defaults to the path's own vertex set, the smallest legal choice and
    the one with the cleanest reading: the path's association with every
    off-path variable linearly removed. With ``a`` equal to all vertices this
    is just :func:`weight`. For the correlation measure the rescaling uses the
    conditional variances, matching the correlation matrix of the conditional
    distribution.
    """
    validate_path(m.graph, path)
    a = _restriction(m, path, a)
    abar = m.graph.complement(a)
    pset = m.graph.require_vertices(path.vertex_set)
    cond = m.sigma.schur_complement(pset, abar)  # Sigma_{PP.Abar}
    idx = cond.positions(path.sequence)
    sign = 1.0 if len(idx) % 2 else -1.0
    det = chol_det(cond.values)
    prod = 1.0
    kv, kpos = m.kappa.values, m.kappa._pos
    for u, v in zip(path.sequence, path.sequence[1:]):
        prod *= kv[kpos[u], kpos[v]]
    base = sign * det * prod
    if kind is Measure.COVARIANCE:
        return base
    if kind is Measure.CORRELATION:
        return base / math.sqrt(cond.entry(path.x, path.x) * cond.entry(path.y, path.y))
    if kind is Measure.INFLATED_CORRELATION:
        return base * math.sqrt(m.kappa.entry(path.x, path.x) * m.kappa.entry(path.y, path.y))
    if isinstance(kind, CustomScaling):
        return base * _endpoint_scale(m, kind, path.x, path.y)
    raise TypeError(f"unsupported measure kind: {kind!r}")


@dataclass(frozen=True)
class WeightBreakdown:
    """A path weight split into its interpretable components.

    ``weight = partial_weight * inflation / endpoint_inflation`` holds for
    every measure; ``endpoint_inflation`` is 1 except for the correlation
    measure, where the marginal and conditional variances of the endpoints
    differ. ``inflation`` is the inflation factor of the path's vertex set on
    the complement of the conditioning set. ``phi`` is the measure-free
    normalized weight in [-1, 1].
    """

    path: Path
    measure: Kind
    restrict: tuple[str, ...]
    weight: float
    partial_weight: float
    inflation: float
    endpoint_inflation: float
    phi: float

    def reconstructed_weight(self) -> float:
        return self.partial_weight * self.inflation / self.endpoint_inflation


def factorize(
    m: Model,
    path: Path,
    a: Iterable[str] | None = None,
    kind: Kind = Measure.COVARIANCE,
) -> WeightBreakdown:
    """Split the weight of ``path`` into partial weight and inflation factor."""
    validate_path(m.graph, path)
    a = _restriction(m, path, a)
    abar = m.graph.complement(a)
    pset = m.graph.require_vertices(path.vertex_set)
    w = weight(m, path, kind)
    pw = partial_weight(m, path, a, kind)
    infl = inflation_factor(m, pset, abar)
    if kind is Measure.CORRELATION:
        endpoint = math.sqrt(
            inflation_factor(m, [path.x], abar) * inflation_factor(m, [path.y], abar)
        )
    else:
        endpoint = 1.0
    return WeightBreakdown(
        path=path,
        measure=kind,
        restrict=a,
        weight=w,
        partial_weight=pw,
        inflation=infl,
        endpoint_inflation=endpoint,
        phi=normalized_weight(m, path),
    )


# -- explicit inflated-correlation forms --------------------------------------

def inflated_weight_explicit(m: Model, path: Path) -> float:
    """Inflated-correlation weight via its closed form.

    The weight equals the determinant of the path block of the inflated
    correlation matrix times the product of the edge partial correlations.
    Agrees with ``weight(m, path, Measure.INFLATED_CORRELATION)`` up to
    round-off; the two evaluations share no intermediate quantities, which is
    what makes their agreement a meaningful check.
    """
    validate_path(m.graph, path)
    det = _inflated_block_det(m, path.vertex_set)
    return det * _edge_pcor_product(m, path)


def partial_inflated_weight_explicit(m: Model, path: Path) -> float:
    """Closed form of the inflated-correlation weight after adjusting for
    everything off the path: edge partial correlations divided by the
    determinant of the path block of (I - partial_corr)."""
    validate_path(m.graph, path)
    det = _imr_block_det(m, path.vertex_set)
    return _edge_pcor_product(m, path) / det


def normalized_weight(m: Model, path: Path) -> float:
    """Scale-free path weight in [-1, 1].

    Product of the edge partial correlations times the determinant of the
    off-path block of (I - partial_corr). Equals the inflated-correlation
    weight divided by its sharp bound, the determinant of the inflated
    correlation matrix.
    """
    validate_path(m.graph, path)
    pbar = frozenset(m.vertices) - path.vertex_set
    det = _imr_block_det(m, pbar)
    return det * _edge_pcor_product(m, path)


def weight_bounds(m: Model, path: Path, kind: Kind = Measure.COVARIANCE) -> tuple[float, float]:
    """Sharp symmetric bounds on the weight of any path with these endpoints.

    The half-width is the determinant of the inflated correlation matrix times
    the geometric mean of the endpoints' scaled residual variances. For the
    inflated-correlation measure the endpoint term is identically 1, so every
    path in the graph shares the same bounds regardless of its endpoints.
    """
    validate_path(m.graph, path)
    det_inflated = _inflated_full_det(m)
    if kind is Measure.INFLATED_CORRELATION:
        return (-det_inflated, det_inflated)
    d = _delta_vector(m, kind)
    pos = m.sigma._pos
    kdiag = m.kappa.diagonal()
    ix, iy = pos[path.x], pos[path.y]
    half = det_inflated * math.sqrt(
        d[ix] ** 2 / kdiag[ix] * d[iy] ** 2 / kdiag[iy]
    )
    return (-half, half)


# -- single-edge measures ------------------------------------------------------

@dataclass(frozen=True)
class EdgeMeasures:
    """Association measures attached to a single edge.

    ``pc``        partial correlation given all other variables
    ``inflation`` inflation factor of the endpoint pair on the rest
    ``npc``       networked partial correlation, pc * inflation
    ``nipc``      networked inflated partial correlation,
                  pc / (1 - pc^2) * inflation; identical to the
                  inflated-correlation weight of the single-edge path
    """

    edge: tuple[str, str]
    pc: float
    inflation: float
    npc: float
    nipc: float


def edge_measures(m: Model, edge: Sequence[str]) -> EdgeMeasures:
    """Edge-level association record for an edge of the model's graph."""
    u, v = edge
    if not m.graph.has_edge(u, v):
        raise ValueError(f"{u!r}--{v!r} is not an edge of the graph")
    u, v = (u, v) if u <= v else (v, u)
    pc = m.partial_corr.entry(u, v)
    infl = inflation_factor(m, (u, v))
    return EdgeMeasures(
        edge=(u, v),
        pc=pc,
        inflation=infl,
        npc=pc * infl,
        nipc=pc / (1.0 - pc * pc) * infl,
    )
