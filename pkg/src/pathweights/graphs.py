"""Undirected labelled graphs and exhaustive simple-path enumeration.

Vertices are opaque strings. Edges are unordered pairs without self-loops.
Path enumeration is depth-first with an on-path visited set and lexicographic
neighbor order, so the result list is deterministic (sorted by vertex
sequence) and independent of insertion order. Enumeration is guarded by a hard
cap and errors out rather than truncating, so downstream decomposition sums
are never silently incomplete.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InvalidPathError, PathExplosionError, UnknownVertexError

#: Default ceiling on the number of enumerated paths per vertex pair.
DEFAULT_PATH_CAP = 1_000_000


def _normalize_edge(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


class Graph:
    """Undirected graph with ordered vertex labels and no self-loops."""

    __slots__ = ("vertices", "edges", "_adj", "_vset")

    def __init__(self, vertices: Sequence[str], edges: Iterable[Sequence[str]] = ()):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("vertex labels must be unique")
        vset = set(vertices)
        norm: set[tuple[str, str]] = set()
        for pair in edges:
            u, v = pair
            if u == v:
                raise ValueError(f"self-loop {u!r}--{v!r} is not allowed")
            missing = [w for w in (u, v) if w not in vset]
            if missing:
                raise UnknownVertexError(missing)
            norm.add(_normalize_edge(u, v))
        adj: dict[str, list[str]] = {v: [] for v in vertices}
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self.vertices = vertices
        self.edges = frozenset(norm)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._vset = frozenset(vset)

    # -- basic accessors ---------------------------------------------------

    def __contains__(self, vertex: str) -> bool:
        return vertex in self._vset

    def has_edge(self, u: str, v: str) -> bool:
        return _normalize_edge(u, v) in self.edges

    def neighbors(self, v: str) -> tuple[str, ...]:
        if v not in self._vset:
            raise UnknownVertexError([v])
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges)

    def require_vertices(self, labels: Iterable[str]) -> tuple[str, ...]:
        """Validate membership and return ``labels`` in graph vertex order."""
        labels = set(labels)
        missing = labels - self._vset
        if missing:
            raise UnknownVertexError(sorted(missing))
        return tuple(v for v in self.vertices if v in labels)

    def complement(self, labels: Iterable[str]) -> tuple[str, ...]:
        labels = set(self.require_vertices(labels))
        return tuple(v for v in self.vertices if v not in labels)

    # -- structure ----------------------------------------------------------

    def induced_subgraph(self, labels: Iterable[str]) -> "Graph":
        keep = self.require_vertices(labels)
        kset = set(keep)
        return Graph(keep, (e for e in self.edges if e[0] in kset and e[1] in kset))

    def components(self) -> list[tuple[str, ...]]:
        """Connected components as vertex tuples, in graph vertex order."""
        seen: set[str] = set()
        out = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            out.append(tuple(v for v in self.vertices if v in comp))
        return out

    def is_tree(self) -> bool:
        return len(self.components()) == 1 and len(self.edges) == len(self.vertices) - 1

    def bfs_distances(self, source: str, restrict: Iterable[str] | None = None) -> dict[str, int]:
        """Unweighted distances from ``source`` to every reachable vertex."""
        allowed = self._vset if restrict is None else set(self.require_vertices(restrict))
        if source not in allowed:
            raise UnknownVertexError([source])
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w in allowed and w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class Path:
    """Simple path: an ordered sequence of at least two distinct vertices."""

    sequence: tuple[str, ...]

    def __post_init__(self):
        seq = tuple(self.sequence)
        object.__setattr__(self, "sequence", seq)
        if len(seq) < 2:
            raise InvalidPathError("a path needs at least two vertices")
        if len(set(seq)) != len(seq):
            raise InvalidPathError(f"path vertices must be distinct: {seq}")

    @classmethod
    def _wrap(cls, sequence: tuple[str, ...]) -> "Path":
        """Construct without validation; callers guarantee a legal sequence."""
        p = object.__new__(cls)
        object.__setattr__(p, "sequence", sequence)
        return p

    @property
    def x(self) -> str:
        return self.sequence[0]

    @property
    def y(self) -> str:
        return self.sequence[-1]

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.sequence)

    @property
    def interior(self) -> tuple[str, ...]:
        return self.sequence[1:-1]

    def edges(self) -> list[tuple[str, str]]:
        """Path edges as normalized pairs, in traversal order."""
        return [_normalize_edge(u, v) for u, v in zip(self.sequence, self.sequence[1:])]

    def reversed(self) -> "Path":
        return Path(self.sequence[::-1])

    def canonical(self) -> "Path":
        """Orientation with the lexicographically smaller endpoint first."""
        return self if self.x <= self.y else self.reversed()

    def __iter__(self) -> Iterator[str]:
        return iter(self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)

    def __str__(self) -> str:
        return " -- ".join(self.sequence)


def validate_path(graph: Graph, path: Path) -> None:
    """Raise InvalidPathError unless every consecutive pair is a graph edge."""
    missing = [v for v in path.sequence if v not in graph]
    if missing:
        raise InvalidPathError(f"path visits unknown vertices: {missing}")
    for u, v in zip(path.sequence, path.sequence[1:]):
        if not graph.has_edge(u, v):
            raise InvalidPathError(f"{u!r}--{v!r} is not an edge of the graph")


def enumerate_paths(
    graph: Graph,
    x: str,
    y: str,
    restrict: Iterable[str] | None = None,
    max_len: int | None = None,
    cap: int = DEFAULT_PATH_CAP,
) -> list[Path]:
    """All simple paths from ``x`` to ``y``, lexicographic by vertex sequence.

    Parameters
    ----------
    restrict : optional vertex set
        When given, only paths whose vertices all lie in the set are produced
        (equivalent to enumerating on the induced subgraph). Must contain both
        endpoints.
    max_len : optional int
        Maximum number of vertices per path (default: all of them).
    cap : int
        Hard ceiling on the number of paths; exceeding it raises
        PathExplosionError instead of truncating.
    """
    if x == y:
        raise ValueError("path endpoints must differ")
    graph.require_vertices([x, y])
    if restrict is not None:
        allowed = set(graph.require_vertices(restrict))
        if x not in allowed or y not in allowed:
            raise ValueError("restrict set must contain both endpoints")
    else:
        allowed = None
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if max_len is None:
        max_len = len(graph.vertices)

    found: list[Path] = []
    trail = [x]
    on_trail = {x}
    adj = graph._adj
    wrap = Path._wrap

    def extend(u: str) -> None:
        for w in adj[u]:
            if w in on_trail or (allowed is not None and w not in allowed):
                continue
            if w == y:
                if len(found) + 1 > cap:
                    raise PathExplosionError(cap=cap, found=len(found) + 1)
                found.append(wrap(tuple(trail) + (y,)))
                continue
            if len(trail) < max_len - 1:
                trail.append(w)
                on_trail.add(w)
                extend(w)
                trail.pop()
                on_trail.remove(w)

    if max_len >= 2:
        extend(x)
    return found


def chords(graph: Graph, path: Path) -> list[tuple[str, str]]:
    """Edges joining two non-consecutive vertices of ``path``, sorted."""
    validate_path(graph, path)
    on_path = set(path.edges())
    pset = path.vertex_set
    return sorted(
        e for e in graph.edges if e[0] in pset and e[1] in pset and e not in on_path
    )


def is_chordless(graph: Graph, path: Path) -> bool:
    return not chords(graph, path)
