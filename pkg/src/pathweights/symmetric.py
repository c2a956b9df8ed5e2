"""Dense symmetric matrices indexed by vertex labels.

Everything downstream (covariance, concentration, correlation and
inflated-correlation matrices, and all their principal sub-blocks) lives in a
:class:`SymMatrix`: a square, exactly-symmetric float matrix whose rows and
columns are addressed by opaque string labels rather than integer positions.
Sub-block extraction always preserves the label order of the parent matrix,
which keeps determinant and Schur-complement calculations immune to silent
permutation bugs.

Determinants and inverses go through Cholesky factorization (all matrices in
scope are positive-definite principal submatrices); the determinant is the
product of squared pivots.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from scipy import linalg as sla

from .errors import InvalidMatrixError, NotPositiveDefiniteError, UnknownVertexError

#: Relative pivot tolerance for positive-definiteness checks.
DEFAULT_PIVOT_TOL = 1e-12

#: Relative tolerance for accepting nearly-symmetric input before averaging.
DEFAULT_SYMMETRY_TOL = 1e-12


def chol_det(a: np.ndarray) -> float:
    """Determinant of a symmetric matrix, empty-matrix convention det([]) = 1.

    Dimensions up to three use the exact closed forms; larger matrices use
    Cholesky (product of squared pivots) with an LU fallback for
    symmetric-indefinite input, so the function is total.
    """
    n = a.shape[0]
    if n == 0:
        return 1.0
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    if n == 3:
        return float(
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )
    try:
        pivots = np.diagonal(np.linalg.cholesky(a))
    except np.linalg.LinAlgError:
        return float(np.linalg.det(a))
    return float(np.prod(pivots) ** 2)


class SymMatrix:
    """Symmetric real matrix with vertex-label indexing.

    Parameters
    ----------
    labels : sequence of str
        Unique row/column identifiers; the storage order of the matrix.
    values : array-like, shape (n, n)
        Matrix entries. Must be finite and symmetric within ``symmetry_tol``
        (relative to the largest absolute entry); storage is symmetrized by
        averaging, so ``entry(u, v) == entry(v, u)`` holds exactly afterwards.
    """

    __slots__ = ("labels", "values", "_pos")

    def __init__(self, labels: Sequence[str], values, symmetry_tol: float = DEFAULT_SYMMETRY_TOL):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise InvalidMatrixError("labels must be unique")
        a = np.array(values, dtype=float)
        if a.shape != (len(labels), len(labels)):
            raise InvalidMatrixError(
                f"expected a {len(labels)}x{len(labels)} matrix, got shape {a.shape}"
            )
        if not np.all(np.isfinite(a)):
            raise InvalidMatrixError("matrix entries must be finite")
        if a.size:
            scale = max(1.0, float(np.abs(a).max()))
            asym = float(np.abs(a - a.T).max())
            if asym > symmetry_tol * scale:
                raise InvalidMatrixError(
                    f"matrix is not symmetric: max |a - a.T| = {asym:.3e}"
                )
        a = (a + a.T) / 2.0
        a.flags.writeable = False
        self.labels = labels
        self.values = a
        self._pos = {lab: i for i, lab in enumerate(labels)}

    # -- indexing ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self._pos

    def positions(self, labels: Iterable[str]) -> list[int]:
        """Positions of ``labels``, sorted into parent storage order."""
        labels = tuple(labels)
        missing = [lab for lab in labels if lab not in self._pos]
        if missing:
            raise UnknownVertexError(missing)
        return sorted(self._pos[lab] for lab in labels)

    def entry(self, u: str, v: str) -> float:
        iu, iv = self.positions([u])[0], self.positions([v])[0]
        return float(self.values[iu, iv])

    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.values).copy()

    def submatrix(self, labels: Iterable[str]) -> "SymMatrix":
        """Principal submatrix on ``labels``, keeping parent label order."""
        idx = self.positions(labels)
        return SymMatrix([self.labels[i] for i in idx], self.values[np.ix_(idx, idx)])

    def reindexed(self, labels: Sequence[str]) -> "SymMatrix":
        """The same matrix with rows and columns permuted into ``labels`` order."""
        labels = tuple(labels)
        if set(labels) != set(self.labels) or len(labels) != self.dim:
            raise UnknownVertexError(set(labels) ^ set(self.labels))
        if labels == self.labels:
            return self
        idx = [self._pos[lab] for lab in labels]
        return SymMatrix(labels, self.values[np.ix_(idx, idx)])

    # -- factorization-backed operations ----------------------------------

    def is_positive_definite(self, tol: float = DEFAULT_PIVOT_TOL) -> bool:
        """True iff Cholesky succeeds with every pivot > tol * max diagonal."""
        if self.dim == 0:
            return True
        diag = np.diagonal(self.values)
        if diag.max() <= 0:
            return False
        try:
            pivots = np.diagonal(np.linalg.cholesky(self.values)) ** 2
        except np.linalg.LinAlgError:
            return False
        return bool(np.all(pivots > tol * diag.max()))

    def det(self, labels: Iterable[str] | None = None) -> float:
        """Determinant of the principal submatrix on ``labels`` (default: all).

        The determinant of the empty-set block is 1 by convention.
        """
        if labels is None:
            idx = list(range(self.dim))
        else:
            idx = self.positions(labels)
        return chol_det(self.values[np.ix_(idx, idx)])

    def inverse(self) -> "SymMatrix":
        """Inverse via Cholesky; raises NotPositiveDefiniteError otherwise."""
        if self.dim == 0:
            return self
        try:
            factor = sla.cho_factor(self.values, lower=True)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefiniteError(f"matrix is not positive definite: {exc}") from exc
        inv = sla.cho_solve(factor, np.eye(self.dim))
        return SymMatrix(self.labels, (inv + inv.T) / 2.0)

    def schur_complement(self, a_labels: Iterable[str], b_labels: Iterable[str]) -> "SymMatrix":
        """Partial covariance block: M[A,A] - M[A,B] M[B,B]^{-1} M[B,A].

        A and B must be disjoint label sets; B may be empty, in which case the
        A-block is returned unchanged. Requires M[B,B] positive definite.
        """
        a_idx = self.positions(a_labels)
        b_idx = self.positions(b_labels)
        overlap = set(a_idx) & set(b_idx)
        if overlap:
            raise ValueError(
                f"A and B must be disjoint; both contain {sorted(self.labels[i] for i in overlap)}"
            )
        a_names = [self.labels[i] for i in a_idx]
        if not b_idx:
            return SymMatrix(a_names, self.values[np.ix_(a_idx, a_idx)])
        saa = self.values[np.ix_(a_idx, a_idx)]
        sab = self.values[np.ix_(a_idx, b_idx)]
        sbb = self.values[np.ix_(b_idx, b_idx)]
        try:
            factor = sla.cho_factor(sbb, lower=True)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefiniteError(
                f"conditioning block is not positive definite: {exc}"
            ) from exc
        out = saa - sab @ sla.cho_solve(factor, sab.T)
        return SymMatrix(a_names, (out + out.T) / 2.0)

    def __repr__(self) -> str:
        return f"SymMatrix(labels={self.labels!r}, dim={self.dim})"
