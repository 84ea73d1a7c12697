"""Divide-and-conquer driver: core reduction, degeneracy-ordered 2-hop
subproblems, per-subproblem vertex pruning, then FastQC on each subproblem."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .branch import Branch
from .graph import Graph, degeneracy_ordering, k_core, two_hop_set
from .predicates import QcParams
from .search import QcSink, RunStats, Strategy, fastqc


class OrderPrefix:
    """Vertices ranked before ``cut`` in an ordering (membership in O(1))."""

    __slots__ = ("rank", "cut")

    def __init__(self, rank: list[int], cut: int) -> None:
        self.rank = rank
        self.cut = cut

    def __contains__(self, v: object) -> bool:
        return self.rank[v] < self.cut  # type: ignore[index]

    def __len__(self) -> int:
        return self.cut

    def __iter__(self):
        return (v for v, r in enumerate(self.rank) if r < self.cut)


@dataclass
class Subproblem:
    anchor: int
    vertices: set[int]
    prefix: OrderPrefix | frozenset = field(default_factory=frozenset)


def _common_with_anchor(g: Graph, anchor: int, u: int, anchor_nbrs: set[int]) -> int:
    nb = g.nbr_sets[u]
    if len(nb) < len(anchor_nbrs):
        return sum(1 for w in nb if w in anchor_nbrs)
    return sum(1 for w in anchor_nbrs if w in nb)


def one_hop_prune(g: Graph, sub: Subproblem, params: QcParams) -> set[int]:
    """Drop non-anchor vertices with fewer than ceil(gamma*(theta-1)) neighbours in V_i."""
    need = params.min_degree(params.theta)
    V = sub.vertices
    if need <= 0:
        return set(V)
    nbr_sets = g.nbr_sets
    keep = {
        u for u in V
        if u == sub.anchor or sum(1 for w in nbr_sets[u] if w in V) >= need
    }
    return keep


def two_hop_threshold(params: QcParams) -> int:
    theta = params.theta
    return theta - params.tau_int(theta) - params.tau_int(theta + 1)


def two_hop_prune(g: Graph, sub: Subproblem, params: QcParams) -> set[int]:
    """Drop vertices sharing too few neighbours with the anchor inside V_i."""
    f = two_hop_threshold(params)
    V = sub.vertices
    anchor = sub.anchor
    anchor_nbrs = {w for w in g.nbrs[anchor] if w in V}
    keep = {anchor}
    for u in V:
        if u == anchor:
            continue
        need = f if u in anchor_nbrs else f + 2
        if need <= 0 or _common_with_anchor(g, anchor, u, anchor_nbrs) >= need:
            keep.add(u)
    return keep


def build_subproblem(
    g: Graph, order: list[int], rank: list[int], i: int, params: QcParams,
    max_round: int = 2, two_hop: bool = True,
) -> Subproblem:
    anchor = order[i]
    prefix = OrderPrefix(rank, i)
    sub = Subproblem(anchor, two_hop_set(g, anchor, prefix), prefix)
    for _ in range(max_round):
        before = len(sub.vertices)
        sub.vertices = one_hop_prune(g, sub, params)
        if two_hop:
            sub.vertices = two_hop_prune(g, sub, params)
        if len(sub.vertices) == before:
            break
    return sub


def reduce_and_order(g: Graph, params: QcParams) -> tuple[Graph, list[int], list[int]]:
    """Core graph, its new->old id map, and its degeneracy ordering."""
    core = k_core(g, params.min_degree(params.theta))
    gc, back = g.induced(core)
    order, _ = degeneracy_ordering(gc)
    return gc, back, order


def ranks(order: list[int]) -> list[int]:
    rank = [0] * len(order)
    for r, v in enumerate(order):
        rank[v] = r
    return rank


def subproblems(g: Graph, params: QcParams, max_round: int = 2, two_hop: bool = True):
    """Yield the pruned subproblems of ``g`` (ids of ``g`` itself, which
    should already be reduced) in ordering sequence."""
    order, _ = degeneracy_ordering(g)
    rank = ranks(order)
    for i in range(len(order)):
        yield build_subproblem(g, order, rank, i, params, max_round, two_hop)


def _solve_range(
    g: Graph, params: QcParams, order: list[int], indices: range | list[int],
    max_round: int, strategy: Strategy, two_hop: bool,
) -> tuple[list[tuple[int, tuple[int, ...]]], RunStats]:
    rank = ranks(order)
    sink = QcSink()
    stats = RunStats()
    for i in indices:
        sub = build_subproblem(g, order, rank, i, params, max_round, two_hop)
        sink.tag = i
        root = Branch(g, (sub.anchor,), sub.vertices - {sub.anchor}, sub.prefix)
        fastqc(g, params, root, strategy, sink, stats)
    return list(zip(sink.tags, sink.sets)), stats  # type: ignore[arg-type]


_WORKER_STATE: dict = {}


def _worker_init(g, params, order, max_round, strategy, two_hop) -> None:
    _WORKER_STATE.update(g=g, params=params, order=order, max_round=max_round,
                         strategy=strategy, two_hop=two_hop)


def _worker_run(indices: list[int]):
    s = _WORKER_STATE
    return _solve_range(s["g"], s["params"], s["order"], indices,
                        s["max_round"], s["strategy"], s["two_hop"])


def dc_fastqc(
    g: Graph,
    params: QcParams,
    max_round: int = 2,
    strategy: Strategy = "hybrid",
    sink: QcSink | None = None,
    stats: RunStats | None = None,
    two_hop: bool = True,
    jobs: int = 1,
) -> QcSink:
    """Run FastQC on every degeneracy-ordered 2-hop subproblem.

    Emitted sets use the ids of ``g``; each emission is tagged with the
    position of its anchor in the ordering.
    """
    if max_round < 1:
        raise ValueError("max_round must be >= 1")
    sink = sink if sink is not None else QcSink()
    stats = stats if stats is not None else RunStats()
    t0 = time.perf_counter()
    gc, back, order = reduce_and_order(g, params)
    n = len(order)
    if n == 0:
        stats.wall_time_ms += (time.perf_counter() - t0) * 1000.0
        return sink
    if jobs is None or jobs <= 0:
        jobs = os.cpu_count() or 1
    if jobs == 1 or n < 2:
        results = [_solve_range(gc, params, order, range(n), max_round, strategy, two_hop)]
    else:
        # interleave anchors so late (cheap) and early (costly) ones mix
        chunks = [list(range(k, n, jobs * 4)) for k in range(jobs * 4)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_worker_init,
            initargs=(gc, params, order, max_round, strategy, two_hop),
        ) as pool:
            results = list(pool.map(_worker_run, chunks))
    emitted: list[tuple[int, tuple[int, ...]]] = []
    wall = stats.wall_time_ms
    for part, st in results:
        emitted.extend(part)
        stats.merge(st)
    stats.wall_time_ms = wall
    emitted.sort(key=lambda e: e[0])  # stable: per-anchor emission order kept
    for i, H in emitted:
        sink.tag = i
        sink.emit(back[v] for v in H)
    stats.wall_time_ms += (time.perf_counter() - t0) * 1000.0
    return sink
