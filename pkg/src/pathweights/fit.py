"""Model fitting and sign-structure analysis.

Two independent pieces of data-side machinery:

- :func:`ips_fit` computes the graph-constrained Gaussian maximum-likelihood
  covariance by iterative proportional scaling over the pairwise generating
  class (edges plus singletons). The fixed point matches the sample moments
  on every edge and on the diagonal while keeping off-edge concentrations at
  exactly zero, so the fitted model is adapted by construction.

- :func:`mtp2_sign_search` decides whether flipping the signs of some
  variables can make every edge partial correlation nonnegative. Signs are
  propagated over a spanning forest of the sign-constrained edges and then
  verified on every edge; an assignment exists if and only if every cycle
  carries an even number of negative edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import NotConvergedError, NotPositiveDefiniteError, UnknownVertexError
from .graphs import Graph
from .model import Model
from .symmetric import SymMatrix

#: Sign constraints ignore partial correlations this close to zero.
DEFAULT_SIGN_TOL = 1e-10


def ips_fit(
    sample: SymMatrix,
    graph: Graph,
    tol: float = 1e-9,
    max_iter: int = 10000,
) -> Model:
    """Graph-constrained MLE covariance via iterative proportional scaling.

    Parameters
    ----------
    sample : SymMatrix
        Positive-definite sample covariance with one label per graph vertex.
    graph : Graph
        Target independence structure; non-edges become zero concentrations.
    tol : float
        Convergence threshold: maximum absolute mismatch between the fitted
        and sample covariance on the constrained positions (diagonal and
        edges), checked after each full sweep.
    max_iter : int
        Sweep budget; exceeding it raises NotConvergedError with diagnostics.
    """
    if set(sample.labels) != set(graph.vertices):
        raise UnknownVertexError(set(sample.labels) ^ set(graph.vertices))
    sample = sample.submatrix(graph.vertices)
    if not sample.is_positive_definite():
        raise NotPositiveDefiniteError("sample covariance is not positive definite")
    labels = graph.vertices
    pos = {v: i for i, v in enumerate(labels)}
    p = sample.dim
    s = sample.values

    cliques: list[list[int]] = [[i] for i in range(p)]
    cliques += [sorted((pos[u], pos[v])) for u, v in graph.sorted_edges()]
    constrained = np.eye(p, dtype=bool)
    for u, v in graph.edges:
        constrained[pos[u], pos[v]] = constrained[pos[v], pos[u]] = True

    k = np.diag(1.0 / np.diagonal(s))
    residual = np.inf
    for _ in range(max_iter):
        for c in cliques:
            block = np.ix_(c, c)
            fitted = np.linalg.inv(k)
            k[block] += np.linalg.inv(s[block]) - np.linalg.inv(fitted[block])
        k = (k + k.T) / 2.0
        fitted = np.linalg.inv(k)
        residual = float(np.abs((fitted - s)[constrained]).max())
        if residual < tol:
            break
    else:
        raise NotConvergedError(iterations=max_iter, residual=residual, tol=tol)

    fitted = (fitted + fitted.T) / 2.0
    return Model(graph, SymMatrix(labels, fitted), kappa=SymMatrix(labels, k))


@dataclass(frozen=True)
class SignAssignment:
    """Per-vertex signs that make every edge partial correlation nonnegative."""

    delta: Mapping[str, int]

    @property
    def flipped(self) -> tuple[str, ...]:
        return tuple(v for v, d in self.delta.items() if d < 0)

    @property
    def is_identity(self) -> bool:
        return not self.flipped


def is_mtp2(m: Model, tol: float = DEFAULT_SIGN_TOL) -> bool:
    """True iff every edge partial correlation is already >= -tol."""
    return all(m.partial_corr.entry(u, v) >= -tol for u, v in m.graph.edges)


def mtp2_sign_search(m: Model, tol: float = DEFAULT_SIGN_TOL) -> SignAssignment | None:
    """Search for a sign flip of the variables with all-nonnegative edges.

    Returns a :class:`SignAssignment` with delta in {+1, -1} per vertex such
    that delta_u * delta_v * pcor_uv >= -tol on every edge, or None when no
    such assignment exists (equivalently, some cycle of the graph carries an
    odd number of negative edges). Edges with |pcor| <= tol impose no
    constraint. Runs in time linear in the number of edges; exhaustive search
    over sign vectors is needed only as a testing oracle.
    """
    required: dict[tuple[str, str], int] = {}
    adj: dict[str, list[tuple[str, int]]] = {v: [] for v in m.graph.vertices}
    for u, v in m.graph.sorted_edges():
        pc = m.partial_corr.entry(u, v)
        if abs(pc) <= tol:
            continue
        sign = 1 if pc > 0 else -1
        required[(u, v)] = sign
        adj[u].append((v, sign))
        adj[v].append((u, sign))

    delta: dict[str, int] = {}
    for root in m.graph.vertices:
        if root in delta:
            continue
        delta[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for v, sign in adj[u]:
                if v not in delta:
                    delta[v] = delta[u] * sign
                    stack.append(v)

    for (u, v), sign in required.items():
        if delta[u] * delta[v] != sign:
            return None
    return SignAssignment(delta={v: delta[v] for v in m.graph.vertices})
