"""Path-weight betweenness centrality.

For a pair (x, y) and a vertex v outside the pair, the betweenness of v is
the fraction of the total absolute path weight between x and y carried by the
paths passing through v. Summing over all unordered pairs gives an overall
centrality score, normalized to [0, 1] by min-max scaling. The ratio is
invariant under diagonal rescaling of the covariance, so covariance,
correlation and inflated-correlation weights all induce the same centrality;
inflated-correlation weights are used here.

By default every simple path contributes ("all-paths" mode); the conventional
variant restricted to shortest paths is available as "shortest-paths".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .graphs import DEFAULT_PATH_CAP, enumerate_paths
from .model import Measure, Model
from .weights import _covariance_weight_seq, _endpoint_scale

#: Pairs whose total absolute weight falls below this are skipped (0/0 guard).
DENOMINATOR_TOL = 1e-12

MODES = ("all-paths", "shortest-paths")


@dataclass(frozen=True)
class VertexCentrality:
    vertex: str
    betweenness: float
    normalized: float
    degree: int


@dataclass(frozen=True)
class CentralityTable:
    """Per-vertex betweenness, in graph vertex order.

    ``skipped_pairs`` lists pairs that contributed nothing: endpoints in
    different components (no connecting path) or a total absolute weight below
    the 0/0 guard. ``degenerate`` flags the case where every vertex has the
    same raw score, in which case all normalized values are 0.
    """

    mode: str
    rows: tuple[VertexCentrality, ...]
    skipped_pairs: tuple[tuple[str, str], ...]
    degenerate: bool

    def row(self, vertex: str) -> VertexCentrality:
        for r in self.rows:
            if r.vertex == vertex:
                return r
        raise KeyError(vertex)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "degenerate": self.degenerate,
            "skipped_pairs": [list(p) for p in self.skipped_pairs],
            "vertices": [
                {
                    "vertex": r.vertex,
                    "betweenness": r.betweenness,
                    "normalized": r.normalized,
                    "degree": r.degree,
                }
                for r in self.rows
            ],
        }


def betweenness(m: Model, mode: str = "all-paths", cap: int = DEFAULT_PATH_CAP) -> CentralityTable:
    """Betweenness centrality of every vertex under path weights.

    Per-pair numerators and denominators are accumulated with compensated
    summation so the result does not depend on path enumeration order.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    graph = m.graph
    comp_of: dict[str, int] = {}
    for i, comp in enumerate(graph.components()):
        for v in comp:
            comp_of[v] = i

    ratios: dict[str, list[float]] = {v: [] for v in graph.vertices}
    skipped: list[tuple[str, str]] = []
    for x, y in combinations(graph.vertices, 2):
        if comp_of[x] != comp_of[y]:
            skipped.append((x, y))
            continue
        if mode == "shortest-paths":
            max_len = graph.bfs_distances(x)[y] + 1
        else:
            max_len = None
        paths = enumerate_paths(graph, x, y, max_len=max_len, cap=cap)
        if not paths:
            skipped.append((x, y))
            continue
        scale = abs(_endpoint_scale(m, Measure.INFLATED_CORRELATION, x, y))
        wts = [abs(_covariance_weight_seq(m, p.sequence)) * scale for p in paths]
        denom = math.fsum(wts)
        if denom < DENOMINATOR_TOL:
            skipped.append((x, y))
            continue
        through: dict[str, list[float]] = {}
        for p, w in zip(paths, wts):
            for v in p.interior:
                through.setdefault(v, []).append(w)
        for v, contributions in through.items():
            ratios[v].append(math.fsum(contributions) / denom)

    raw = {v: math.fsum(ratios[v]) for v in graph.vertices}
    values = list(raw.values())
    b_min, b_max = (min(values), max(values)) if values else (0.0, 0.0)
    degenerate = not values or b_max == b_min
    rows = tuple(
        VertexCentrality(
            vertex=v,
            betweenness=raw[v],
            normalized=0.0 if degenerate else (raw[v] - b_min) / (b_max - b_min),
            degree=graph.degree(v),
        )
        for v in graph.vertices
    )
    return CentralityTable(
        mode=mode,
        rows=rows,
        skipped_pairs=tuple(skipped),
        degenerate=degenerate,
    )


def degree_centrality(m: Model) -> dict[str, int]:
    """Plain neighbour counts, for side-by-side comparison with betweenness."""
    return {v: m.graph.degree(v) for v in m.graph.vertices}
