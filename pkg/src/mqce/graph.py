"""Immutable undirected simple graphs and the structural preprocessing used by
the enumerators (k-core, degeneracy ordering, 2-hop neighbourhoods)."""

from __future__ import annotations

import heapq
from bisect import bisect_left
from typing import Container, Iterable, Sequence, TextIO


class EdgeListError(ValueError):
    """Raised for a malformed edge-list line."""

    def __init__(self, lineno: int, line: str, reason: str) -> None:
        super().__init__(f"line {lineno}: {reason}: {line.rstrip()!r}")
        self.lineno = lineno


class Graph:
    """Undirected simple graph over dense ids ``0..n-1``.

    Adjacency is kept in CSR form (``offsets`` into a flat ``targets`` array,
    each list strictly ascending).  ``labels[v]`` is the original label of
    vertex ``v`` as read from the input.
    """

    __slots__ = ("n", "m", "offsets", "targets", "labels", "nbrs", "nbr_sets", "max_degree")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[int] | None = None):
        buckets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                continue
            buckets[u].add(v)
            buckets[v].add(u)
        self.n = n
        self.nbrs: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(b)) for b in buckets)
        self.nbr_sets: tuple[frozenset[int], ...] = tuple(frozenset(b) for b in self.nbrs)
        offsets = [0]
        targets: list[int] = []
        for row in self.nbrs:
            targets.extend(row)
            offsets.append(len(targets))
        self.offsets = offsets
        self.targets = targets
        self.m = len(targets) // 2
        self.max_degree = max((len(r) for r in self.nbrs), default=0)
        self.labels = list(labels) if labels is not None else list(range(n))
        if len(self.labels) != n:
            raise ValueError("labels must have one entry per vertex")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def degree(self, v: int) -> int:
        return self.offsets[v + 1] - self.offsets[v]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.nbrs[u] if u < v]

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Return ``G[vertices]`` relabelled densely, plus the new->old id map."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (i, index[u]) for i, v in enumerate(keep) for u in self.nbrs[v] if u in index and u > v
        ]
        sub = Graph(len(keep), edges, [self.labels[v] for v in keep])
        return sub, keep


def load_edge_list(stream: TextIO | Iterable[str]) -> Graph:
    """Parse whitespace-separated integer pairs, one edge per line.

    Blank lines and ``#`` comments are skipped.  Self-loops and duplicate
    edges are dropped; their endpoints still become vertices.  Labels are
    densified in ascending label order.
    """
    pairs: list[tuple[int, int]] = []
    for lineno, line in enumerate(stream, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) != 2:
            raise EdgeListError(lineno, line, "expected two integers")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise EdgeListError(lineno, line, "non-integer token") from None
    labels = sorted({x for p in pairs for x in p})
    index = {lab: i for i, lab in enumerate(labels)}
    return Graph(len(labels), ((index[a], index[b]) for a, b in pairs), labels)


def write_edge_list(g: Graph, out: TextIO) -> None:
    for u, v in g.edges():
        out.write(f"{g.labels[u]} {g.labels[v]}\n")


def are_adjacent(g: Graph, u: int, v: int) -> bool:
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise IndexError(f"vertex out of range: ({u}, {v})")
    lo, hi = g.offsets[u], g.offsets[u + 1]
    i = bisect_left(g.targets, v, lo, hi)
    return i < hi and g.targets[i] == v


def _peel(g: Graph) -> tuple[list[int], list[int]]:
    """Repeatedly remove a minimum-degree vertex (lowest id on ties).

    Returns the removal order and the degree each vertex had when removed.
    """
    deg = [g.degree(v) for v in range(g.n)]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order: list[int] = []
    at_removal: list[int] = [0] * g.n
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        at_removal[v] = d
        for u in g.nbrs[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return order, at_removal


def k_core(g: Graph, k: int) -> list[int]:
    """Vertices of the k-core (sorted); empty if there is none."""
    if k <= 0:
        return list(range(g.n))
    deg = [g.degree(v) for v in range(g.n)]
    dead = [False] * g.n
    stack = [v for v in range(g.n) if deg[v] < k]
    for v in stack:
        dead[v] = True
    while stack:
        v = stack.pop()
        for u in g.nbrs[v]:
            if not dead[u]:
                deg[u] -= 1
                if deg[u] < k:
                    dead[u] = True
                    stack.append(u)
    return [v for v in range(g.n) if not dead[v]]


def degeneracy_ordering(g: Graph) -> tuple[list[int], int]:
    """Peeling order and the degeneracy ``omega`` (0 for an edgeless graph)."""
    order, at_removal = _peel(g)
    omega = max(at_removal, default=0)
    return order, omega


def two_hop_set(g: Graph, v: int, forbidden: Container[int] = frozenset()) -> set[int]:
    """``{v}`` plus vertices reachable from ``v`` in at most two hops.

    Forbidden vertices are neither returned nor used as the middle hop.
    """
    if v in forbidden:
        raise ValueError(f"anchor {v} is forbidden")
    result = {v}
    for u in g.nbrs[v]:
        if u in forbidden:
            continue
        result.add(u)
        for w in g.nbrs[u]:
            if w not in forbidden:
                result.add(w)
    return result
