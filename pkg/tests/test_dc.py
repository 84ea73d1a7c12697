from __future__ import annotations

import random

import pytest

from conftest import graph_of, small_corpus
from mqce import QcParams, all_mqcs, dc_fastqc, fastqc, filter_maximal, root_branch
from mqce.dc import (
    OrderPrefix,
    Subproblem,
    build_subproblem,
    one_hop_prune,
    ranks,
    reduce_and_order,
    two_hop_prune,
    two_hop_threshold,
)
from mqce.graph import degeneracy_ordering, two_hop_set
from mqce.search import QcSink

TRIANGLES = graph_of(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def test_thresholds():
    assert QcParams.parse("0.9", 10).min_degree(10) == 9
    assert two_hop_threshold(QcParams.parse("0.9", 10)) == 7
    assert two_hop_threshold(QcParams.parse("0.51", 3)) == 0


def test_one_hop_theta_one_keeps_all():
    g = graph_of(4, [(0, 1)])
    sub = Subproblem(0, {0, 1, 2, 3})
    assert one_hop_prune(g, sub, QcParams.parse("0.9", 1)) == {0, 1, 2, 3}


def test_two_hop_low_threshold_keeps_neighbours():
    g = graph_of(4, [(0, 1), (0, 2), (2, 3)])
    sub = Subproblem(0, {0, 1, 2, 3})
    kept = two_hop_prune(g, sub, QcParams.parse("0.51", 3))
    assert {0, 1, 2} <= kept  # adjacent: threshold 0
    assert 3 not in kept  # non-adjacent: needs 2 common neighbours, has 1


def _random_subproblems(count=120):
    rnd = random.Random(17)
    out = []
    for g in small_corpus((10, 14, 18), (2.5, 3.5), range(4)):
        for gamma in ("0.5", "0.6", "0.7", "0.9"):
            for theta in (3, 4, 5):
                v = rnd.randrange(g.n)
                forbidden = set(rnd.sample([u for u in range(g.n) if u != v], rnd.randint(0, 3)))
                out.append((g, QcParams.parse(gamma, theta), Subproblem(v, two_hop_set(g, v, forbidden))))
                if len(out) >= count:
                    return out
    return out


@pytest.mark.parametrize("case", _random_subproblems())
def test_prune_rules_match_direct_filters(case):
    g, params, sub = case
    V = sub.vertices
    need = params.min_degree(params.theta)
    expect1 = {u for u in V if u == sub.anchor or len(g.nbr_sets[u] & V) >= need}
    assert one_hop_prune(g, sub, params) == expect1
    f = two_hop_threshold(params)
    a_nb = g.nbr_sets[sub.anchor] & V
    expect2 = {sub.anchor} | {
        u for u in V - {sub.anchor}
        if len(a_nb & g.nbr_sets[u]) >= (f if u in a_nb else f + 2)
    }
    assert two_hop_prune(g, sub, params) == expect2


def test_order_prefix():
    order = [3, 1, 0, 2]
    p = OrderPrefix(ranks(order), 2)
    assert 3 in p and 1 in p and 0 not in p and 2 not in p
    assert sorted(p) == [1, 3] and len(p) == 2


def test_two_triangles_one_subproblem_each():
    sink = QcSink()
    dc_fastqc(TRIANGLES, QcParams.parse("1", 3), sink=sink)
    assert filter_maximal(sink.sets) == [(0, 1, 2), (3, 4, 5)]
    by_set = {}
    for tag, s in zip(sink.tags, sink.sets):
        by_set.setdefault(s, set()).add(tag)
    assert all(len(tags) == 1 for tags in by_set.values())


def test_empty_core_emits_nothing():
    g = graph_of(5, [(0, 1), (1, 2), (2, 3)])
    assert len(dc_fastqc(g, QcParams.parse("0.9", 4))) == 0


def test_max_round_validated():
    with pytest.raises(ValueError):
        dc_fastqc(TRIANGLES, QcParams.parse("1", 3), max_round=0)


def _corpus_cases():
    for g in small_corpus((8, 11, 14), (1.5, 2.5, 3.5), range(3)):
        for gamma in ("0.5", "0.7", "0.9"):
            for theta in (3, 4):
                yield g, QcParams.parse(gamma, theta)


def test_pruning_keeps_anchor_mqcs_and_shrinks():
    for g, params in _corpus_cases():
        gc, back, order = reduce_and_order(g, params)
        rank = ranks(order)
        _, omega = degeneracy_ordering(gc)
        d = gc.max_degree
        mqcs = [frozenset(m) for m in all_mqcs(gc, params)]
        for i, anchor in enumerate(order):
            full = two_hop_set(gc, anchor, OrderPrefix(rank, i))
            assert len(full) <= 1 + omega * d
            prev = full
            for rounds in (1, 2, 3):
                sub = build_subproblem(gc, order, rank, i, params, max_round=rounds)
                assert anchor in sub.vertices and sub.vertices <= prev
                assert not any(rank[v] < i for v in sub.vertices)
                for m in mqcs:
                    if anchor in m and min(rank[v] for v in m) == i:
                        assert m <= sub.vertices
                prev = sub.vertices


def test_rounds_reach_fixpoint():
    g = small_corpus((14,), (3.5,), (1,)).__next__()
    params = QcParams.parse("0.7", 4)
    gc, _, order = reduce_and_order(g, params)
    rank = ranks(order)
    for i in range(len(order)):
        a = build_subproblem(gc, order, rank, i, params, max_round=20)
        b = build_subproblem(gc, order, rank, i, params, max_round=21)
        again = two_hop_prune(gc, Subproblem(a.anchor, one_hop_prune(gc, a, params)), params)
        assert a.vertices == b.vertices == again


def test_equivalent_to_monolithic_and_oracle():
    for g, params in _corpus_cases():
        expect = all_mqcs(g, params)
        mono = QcSink()
        fastqc(g, params, root_branch(g), "hybrid", mono)
        assert filter_maximal(mono.sets) == expect
        for strategy in ("hybrid", "sym"):
            for two_hop in (True, False):
                sink = dc_fastqc(g, params, strategy=strategy, two_hop=two_hop)
                assert filter_maximal(sink.sets) == expect


def test_parallel_matches_serial():
    g = small_corpus((16,), (3.5,), (5,)).__next__()
    params = QcParams.parse("0.6", 3)
    a = dc_fastqc(g, params, jobs=1)
    b = dc_fastqc(g, params, jobs=2)
    assert a.sets == b.sets and a.tags == b.tags
