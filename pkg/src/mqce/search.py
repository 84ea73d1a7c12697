"""Branch-and-bound drivers: FastQC (Sym-SE / Hybrid-SE branching) and the
SE-branching baseline.

Both share one depth-first engine over a single :class:`Branch` with an undo
log.  A node first runs the refine-and-recheck loop, then the two termination
tests, then branches.  A node reports ``True`` when a QC was found in its
subtree; when none of its children found one, ``G[S]`` itself is tested.

Emissions form a superset of the maximal QCs of size >= theta, possibly with
duplicates and non-maximal sets; :func:`mqce.settrie.filter_maximal` removes
those.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Literal

from .branch import Branch
from .branching import BranchingPlan, hybrid_se_children, se_children, select_pivot, sym_se_children
from .graph import Graph
from .predicates import QcParams, passes_maximality_necessary
from .pruning import Verdict, progressive_refine, terminate_t2

Strategy = Literal["hybrid", "sym"]
Observer = Callable[[str, Branch, object], None]


@dataclass
class RunStats:
    branches_created: int = 0
    pruned_by_condition: int = 0
    pruned_by_t2: int = 0
    terminal_t1: int = 0
    refinement_passes: int = 0
    qcs_emitted: int = 0
    wall_time_ms: float = 0.0

    def merge(self, other: RunStats) -> None:
        for k, v in asdict(other).items():
            setattr(self, k, getattr(self, k) + v)

    def as_dict(self) -> dict:
        return asdict(self)

    def counters(self) -> dict:
        d = asdict(self)
        del d["wall_time_ms"]
        return d


@dataclass
class QcSink:
    """Collects emitted vertex sets (each sorted ascending).

    ``tag`` is recorded alongside every emission; the DC driver sets it to the
    current subproblem anchor.
    """

    sets: list[tuple[int, ...]] = field(default_factory=list)
    tags: list[object] = field(default_factory=list)
    tag: object = None

    def emit(self, vertices) -> None:
        self.sets.append(tuple(sorted(vertices)))
        self.tags.append(self.tag)

    def __len__(self) -> int:
        return len(self.sets)


class _Frame:
    __slots__ = ("runs", "r", "j", "started", "run_tok", "node_tok", "found")

    def __init__(self, plan: BranchingPlan, node_tok: int) -> None:
        self.runs = plan.runs
        self.r = 0
        self.j = 0
        self.started = False
        self.run_tok = 0
        self.node_tok = node_tok
        self.found = False

    def next_child(self, b: Branch) -> int | None:
        """Advance ``b`` to the next child state; return its undo token."""
        while self.r < len(self.runs):
            run = self.runs[self.r]
            order = run.order
            se = run.mode == "se"
            if not self.started:
                self.started = True
                self.run_tok = b.snapshot()
                for v in order[: run.first]:
                    if se:
                        b.move_c_to_d(v)
                    else:
                        b.move_c_to_s(v)
                self.j = run.first
            else:
                # previous child rolled back; fold its vertex into the prefix
                v = order[self.j]
                if se:
                    b.move_c_to_d(v)
                else:
                    b.move_c_to_s(v)
                self.j += 1
            if self.j >= run.stop:
                b.rollback(self.run_tok)
                self.r += 1
                self.started = False
                continue
            tok = b.snapshot()
            v = order[self.j]
            if se:
                b.move_c_to_s(v)
            else:
                b.move_c_to_d(v)
            if self.j == run.stop - 1:
                for u in run.drop_last:
                    b.move_c_to_d(u)
            return tok
        return None


class _Engine:
    def __init__(
        self,
        g: Graph,
        params: QcParams,
        planner: Callable[[Branch, int], BranchingPlan],
        sink: QcSink,
        stats: RunStats,
        strict_fallback: bool,
        observer: Observer | None,
    ) -> None:
        self.g = g
        self.params = params
        self.planner = planner
        self.sink = sink
        self.stats = stats
        self.strict_fallback = strict_fallback
        self.observer = observer

    def _emit(self, H) -> None:
        self.sink.emit(H)
        self.stats.qcs_emitted += 1
        if self.observer:
            self.observer("emit", None, tuple(sorted(H)))

    def enter(self, b: Branch):
        """Pre-branch steps. Returns (True/False) for a finished node or a plan."""
        stats, params, obs = self.stats, self.params, self.observer
        stats.branches_created += 1
        if obs:
            obs("enter", b, None)
        verdict = progressive_refine(b, params)
        stats.refinement_passes += verdict.passes
        if verdict.kind is Verdict.PRUNED:
            stats.pruned_by_condition += 1
            if obs:
                obs("pruned", b, None)
            return False
        bound = verdict.bound
        if verdict.kind is Verdict.TERMINAL_QC:
            stats.terminal_t1 += 1
            H = b.S | b.C
            if len(H) >= params.theta and passes_maximality_necessary(self.g, H, params):
                self._emit(H)
            if obs:
                obs("t1", b, None)
            return True
        if terminate_t2(b, bound, params):
            stats.pruned_by_t2 += 1
            if obs:
                obs("t2", b, None)
            return False
        return self.planner(b, bound)

    def fallback(self, b: Branch) -> bool:
        """No child found a QC: test G[S] itself."""
        S = b.S
        if not S or b.delta_s() > self.params.tau_int(len(S)):
            return False
        passes = passes_maximality_necessary(self.g, S, self.params)
        if len(S) >= self.params.theta and passes:
            self._emit(S)
        return passes or not self.strict_fallback

    def run(self, b: Branch) -> bool:
        obs = self.observer
        root_tok = b.snapshot()
        res = self.enter(b)
        if not isinstance(res, BranchingPlan):
            b.rollback(root_tok)
            if obs:
                obs("exit", b, res)
            return res
        stack = [_Frame(res, root_tok)]
        result = False
        while stack:
            f = stack[-1]
            tok = f.next_child(b)
            if tok is not None:
                res = self.enter(b)
                if isinstance(res, BranchingPlan):
                    stack.append(_Frame(res, tok))
                else:
                    b.rollback(tok)
                    if obs:
                        obs("exit", b, res)
                    f.found = f.found or res
                continue
            found = f.found or self.fallback(b)
            b.rollback(f.node_tok)
            if obs:
                obs("exit", b, found)
            stack.pop()
            if stack:
                stack[-1].found = stack[-1].found or found
            else:
                result = found
        return result


def _fastqc_planner(strategy: Strategy):
    if strategy not in ("hybrid", "sym"):
        raise ValueError(f"unknown branching strategy {strategy!r}")

    def plan(b: Branch, bound: int) -> BranchingPlan:
        p = select_pivot(b, bound)
        if strategy == "hybrid" and p.hybrid_eligible:
            return hybrid_se_children(b, p)
        return sym_se_children(b, p)

    return plan


def fastqc(
    g: Graph,
    params: QcParams,
    root: Branch,
    strategy: Strategy = "hybrid",
    sink: QcSink | None = None,
    stats: RunStats | None = None,
    observer: Observer | None = None,
) -> bool:
    """FastQC from ``root``.  Returns whether a QC was found under it."""
    sink = sink if sink is not None else QcSink()
    stats = stats if stats is not None else RunStats()
    engine = _Engine(g, params, _fastqc_planner(strategy), sink, stats, True, observer)
    t0 = time.perf_counter()
    try:
        return engine.run(root)
    finally:
        stats.wall_time_ms += (time.perf_counter() - t0) * 1000.0


def se_baseline(
    g: Graph,
    params: QcParams,
    root: Branch,
    sink: QcSink | None = None,
    stats: RunStats | None = None,
    observer: Observer | None = None,
) -> bool:
    """SE branching over ascending candidate ids with the same pruning surface."""
    sink = sink if sink is not None else QcSink()
    stats = stats if stats is not None else RunStats()
    engine = _Engine(g, params, lambda b, bound: se_children(b), sink, stats, False, observer)
    t0 = time.perf_counter()
    try:
        return engine.run(root)
    finally:
        stats.wall_time_ms += (time.perf_counter() - t0) * 1000.0


def root_branch(g: Graph) -> Branch:
    return Branch(g, (), range(g.n))
