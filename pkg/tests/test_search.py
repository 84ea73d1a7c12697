from __future__ import annotations

from hypothesis import given, settings

from conftest import complete, graph_of, graphs, params_st, small_corpus
from mqce import Graph, QcParams, all_mqcs, fastqc, filter_maximal, root_branch, se_baseline
from mqce.branch import Branch
from mqce.branching import hybrid_se_children, select_pivot, sym_se_children
from mqce.predicates import is_quasi_clique, passes_maximality_necessary
from mqce.pruning import Verdict, progressive_refine
from mqce.search import QcSink, RunStats, _Frame

ENGINES = {
    "hybrid": lambda g, p, **kw: fastqc(g, p, root_branch(g), "hybrid", **kw),
    "sym": lambda g, p, **kw: fastqc(g, p, root_branch(g), "sym", **kw),
    "se": lambda g, p, **kw: se_baseline(g, p, root_branch(g), **kw),
}


def _run(name, g, params):
    sink = QcSink()
    stats = RunStats()
    found = ENGINES[name](g, params, sink=sink, stats=stats)
    return found, sink, stats


def test_k5_single_answer():
    g = complete(5)
    for name in ENGINES:
        found, sink, _ = _run(name, g, QcParams.parse("1", 3))
        assert found
        assert set(sink.sets) == {(0, 1, 2, 3, 4)}


def test_two_triangles():
    g = graph_of(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    for name in ENGINES:
        _, sink, _ = _run(name, g, QcParams.parse("1", 3))
        assert filter_maximal(sink.sets) == [(0, 1, 2), (3, 4, 5)]


def test_er_reference(er_reference):
    for case in er_reference:
        g = Graph(case["n"], case["edges"])
        params = QcParams.parse(case["gamma"], case["theta"])
        expect = [tuple(s) for s in case["mqcs"]]
        for name in ENGINES:
            _, sink, _ = _run(name, g, params)
            assert filter_maximal(sink.sets) == expect, name


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10), params_st)
def test_emissions_sound_and_complete(g, params):
    oracle = set(all_mqcs(g, params))
    for name in ENGINES:
        _, sink, stats = _run(name, g, params)
        assert stats.qcs_emitted == len(sink.sets)
        for H in sink.sets:
            assert len(H) >= params.theta
            assert is_quasi_clique(g, H, params)
            assert passes_maximality_necessary(g, H, params)
        assert oracle <= set(sink.sets)
        assert filter_maximal(sink.sets) == sorted(oracle)


def _check_return_law(g, params, name):
    """Each call returns true iff T1 fired, a child returned true, or G[S]
    is a QC passing the extension check (the SE baseline skips the check)."""
    frames = []
    violations = []

    def observer(event, b, payload):
        if event == "enter":
            frames.append({"S": frozenset(b.S), "kids": [], "end": None})
        elif event in ("pruned", "t1", "t2"):
            frames[-1]["end"] = event
        elif event == "exit":
            f = frames.pop()
            if f["end"] == "t1":
                expect = True
            elif f["end"] in ("pruned", "t2"):
                expect = False
            else:
                S = f["S"]
                qc = bool(S) and is_quasi_clique(g, S, params)
                if name != "se":
                    qc = qc and passes_maximality_necessary(g, S, params)
                expect = any(f["kids"]) or qc
            if payload != expect:
                violations.append((sorted(f["S"]), payload, expect))
            if frames:
                frames[-1]["kids"].append(payload)

    ENGINES[name](g, params, observer=observer)
    assert not frames
    return violations


def test_return_value_law():
    for g in small_corpus((8, 10), (1.5, 2.5, 3.5), range(3)):
        for gamma in ("0.5", "0.7", "1"):
            params = QcParams.parse(gamma, 3)
            for name in ENGINES:
                assert _check_return_law(g, params, name) == []


def test_pruned_branches_hold_no_qc():
    """Every subtree cut by the condition or T2 contains no MQC of size >= theta."""
    for g in small_corpus((8, 10), (2.5, 3.5), range(3)):
        for gamma in ("0.5", "0.6", "0.9"):
            params = QcParams.parse(gamma, 3)
            mqcs = [frozenset(m) for m in all_mqcs(g, params)]
            entered = []

            def observer(event, b, payload):
                if event == "enter":
                    entered.append((frozenset(b.S), frozenset(b.S | b.C)))
                elif event in ("pruned", "t2"):
                    S, SC = entered[-1]
                    assert not any(S <= m <= SC for m in mqcs)
                elif event == "exit":
                    entered.pop()

            for name in ENGINES:
                ENGINES[name](g, params, observer=observer)


def test_deterministic_output_and_counters():
    for g in small_corpus((12,), (3.5,), range(2)):
        params = QcParams.parse("0.6", 3)
        for name in ENGINES:
            a = _run(name, g, params)
            b = _run(name, g, params)
            assert a[1].sets == b[1].sets
            assert a[2].counters() == b[2].counters()


def test_incremental_child_walk_matches_plan():
    """The undo-log walk over a plan visits exactly the planned child states."""
    checked = 0
    for g in small_corpus((9, 10), (2.5, 3.5), range(3)):
        params = QcParams.parse("0.6", 3)
        b = root_branch(g)
        verdict = progressive_refine(b, params)
        if verdict.kind is not Verdict.CONTINUE:
            continue
        p = select_pivot(b, verdict.bound)
        plans = [sym_se_children(b, p)]
        if p.hybrid_eligible:
            plans.append(hybrid_se_children(b, p))
        for plan in plans:
            S0, C0 = set(b.S), set(b.C)
            frame = _Frame(plan, b.snapshot())
            for child in plan.children():
                tok = frame.next_child(b)
                assert tok is not None
                inc, exc = set(child.include), set(child.exclude)
                assert b.S == S0 | inc
                # excluded vertices left C; vertices folded into S left C too
                assert b.C == C0 - inc - exc
                assert (b.deg_s, b.deg_sc) == b.recount()
                b.rollback(tok)
            assert frame.next_child(b) is None
            assert (b.S, b.C) == (S0, C0)
            checked += 1
    assert checked > 0


def test_runstats_merge():
    a = RunStats(branches_created=2, wall_time_ms=1.5)
    a.merge(RunStats(branches_created=3, qcs_emitted=1, wall_time_ms=0.5))
    assert a.branches_created == 5 and a.qcs_emitted == 1 and a.wall_time_ms == 2.0
    assert "wall_time_ms" not in a.counters()
