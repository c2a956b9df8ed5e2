"""Inflation factors between variable blocks, and global collinearity.

The inflation factor of a block A on a disjoint block B measures the linear
association between X_A and X_B as a ratio of generalized variances. It is 1
exactly when the blocks are uncorrelated, grows without bound as they approach
collinearity, and equals the classical variance inflation factor when A is a
single variable and B is everything else. Three equivalent determinant
formulas exist; the canonical computation here divides |Sigma_AA| by the
determinant of the partial covariance |Sigma_AA.B| (two small factorizations),
with the other two forms retained as a diagnostic record for identity testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import Model


def inflation_factor(m: Model, a: Iterable[str], b: Iterable[str] | None = None) -> float:
    """Inflation factor of block ``a`` on block ``b`` (default: complement of a).

    Returns exactly 1.0 when either block is empty. Raises ValueError when the
    blocks overlap. The value is >= 1 up to factorization round-off for any
    positive-definite covariance; it is reported raw, never clamped.
    """
    a = m.graph.require_vertices(a)
    b = m.graph.complement(a) if b is None else m.graph.require_vertices(b)
    if set(a) & set(b):
        raise ValueError(f"blocks must be disjoint; both contain {sorted(set(a) & set(b))}")
    if not a or not b:
        return 1.0
    return m.sigma.det(a) / m.sigma.schur_complement(a, b).det()


@dataclass(frozen=True)
class InflationIdentities:
    """The same inflation factor computed along each determinant route.

    ``determinant_ratio``     |S_AA| |S_BB| / |S_{A u B}|
    ``partial_ratio``         |S_AA| / |S_AA.B|
    ``symmetric_ratio``       |S_{A u B}| / (|S_AA.B| |S_BB.A|)
    ``concentration_ratio``   |K_AA| |K_{comp}| / |K|, defined only when B is
                              the complement of A (None otherwise)
    """

    determinant_ratio: float
    partial_ratio: float
    symmetric_ratio: float
    concentration_ratio: float | None

    def values(self) -> tuple[float, ...]:
        out = (self.determinant_ratio, self.partial_ratio, self.symmetric_ratio)
        if self.concentration_ratio is not None:
            out = out + (self.concentration_ratio,)
        return out


def inflation_factor_identities(
    m: Model, a: Iterable[str], b: Iterable[str] | None = None
) -> InflationIdentities:
    """Evaluate every equivalent formula for the inflation factor of A on B.

    All routes agree in exact arithmetic; the record exists so tests (and
    suspicious users) can measure how far floating point lets them drift.
    """
    a = m.graph.require_vertices(a)
    b = m.graph.complement(a) if b is None else m.graph.require_vertices(b)
    if set(a) & set(b):
        raise ValueError(f"blocks must be disjoint; both contain {sorted(set(a) & set(b))}")
    complement_case = set(b) == set(m.graph.complement(a))
    if not a or not b:
        one = 1.0
        return InflationIdentities(one, one, one, one if complement_case else None)
    union = m.graph.require_vertices(set(a) | set(b))
    det_union = m.sigma.det(union)
    det_a = m.sigma.det(a)
    det_b = m.sigma.det(b)
    det_a_given_b = m.sigma.schur_complement(a, b).det()
    det_b_given_a = m.sigma.schur_complement(b, a).det()
    concentration = None
    if complement_case:
        concentration = m.kappa.det(a) * m.kappa.det(b) / m.kappa.det()
    return InflationIdentities(
        determinant_ratio=det_a * det_b / det_union,
        partial_ratio=det_a / det_a_given_b,
        symmetric_ratio=det_union / (det_a_given_b * det_b_given_a),
        concentration_ratio=concentration,
    )


def global_collinearity(
    m: Model,
    kind: str = "variance",
    partition: Sequence[Iterable[str]] | None = None,
) -> float:
    """Global measure of linear association in [1, inf).

    ``kind="variance"`` scales the generalized variance |Sigma| by its upper
    bound, the product of block variances: prod |S_BB| / |Sigma|. With the
    default singleton partition this equals 1 / |Omega|.

    ``kind="partial-variance"`` scales |Sigma| by its lower bound, the product
    of block partial variances: |Sigma| / prod |S_BB.rest|. With singletons
    this equals the determinant of the inflated correlation matrix.

    Both reduce to 1 for a diagonal covariance, and to 1 for the trivial
    partition {V}.
    """
    if kind not in ("variance", "partial-variance"):
        raise ValueError(f"kind must be 'variance' or 'partial-variance', got {kind!r}")
    if partition is None:
        blocks = [(v,) for v in m.graph.vertices]
    else:
        blocks = [m.graph.require_vertices(block) for block in partition]
        flat = [v for block in blocks for v in block]
        if len(flat) != len(set(flat)):
            raise ValueError("partition blocks must be disjoint")
        if set(flat) != set(m.graph.vertices):
            raise ValueError("partition must cover every vertex")
    det_sigma = m.sigma.det()
    if kind == "variance":
        prod = 1.0
        for block in blocks:
            prod *= m.sigma.det(block)
        return prod / det_sigma
    prod = 1.0
    for block in blocks:
        prod *= m.sigma.schur_complement(block, m.graph.complement(block)).det()
    return det_sigma / prod
