"""Maximal gamma-quasi-clique enumeration."""

from __future__ import annotations

from .branch import Branch
from .dc import dc_fastqc
from .generator import GenSpec, gen_er
from .graph import EdgeListError, Graph, load_edge_list
from .oracle import OracleLimitError, all_mqcs, all_qcs
from .predicates import QcParams, is_quasi_clique
from .search import QcSink, RunStats, fastqc, root_branch, se_baseline
from .settrie import SetTrie, filter_maximal

ALGORITHMS = ("dc-fastqc", "fastqc", "se-baseline")


def emit_qcs(g: Graph, params: QcParams, algo: str = "dc-fastqc", branching: str = "hybrid",
             max_round: int = 2, two_hop: bool = True, jobs: int = 1,
             stats: RunStats | None = None) -> QcSink:
    """Raw (unfiltered) emissions of one enumerator, in ids of ``g``."""
    sink = QcSink()
    if algo == "dc-fastqc":
        dc_fastqc(g, params, max_round, branching, sink, stats, two_hop, jobs)
    elif algo == "fastqc":
        fastqc(g, params, root_branch(g), branching, sink, stats)
    elif algo == "se-baseline":
        se_baseline(g, params, root_branch(g), sink, stats)
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    return sink


def find_mqcs(g: Graph, params: QcParams, **kw) -> list[tuple[int, ...]]:
    """Maximal QCs with at least theta vertices, sorted."""
    return filter_maximal(emit_qcs(g, params, **kw).sets)


__all__ = [
    "ALGORITHMS", "Branch", "EdgeListError", "GenSpec", "Graph", "OracleLimitError", "QcParams",
    "QcSink", "RunStats", "SetTrie", "all_mqcs", "all_qcs", "dc_fastqc", "emit_qcs", "fastqc",
    "filter_maximal", "find_mqcs", "gen_er", "is_quasi_clique", "load_edge_list", "root_branch",
    "se_baseline",
]
