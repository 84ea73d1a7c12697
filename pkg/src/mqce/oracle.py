"""Exhaustive ground truth for small graphs.

Every vertex subset is encoded as a bitmask and tested with numpy in bulk.
The QC test is done twice, once by the definition (degree bound plus
connectivity) and once by the disconnection bound; the two must agree.
Maximality is decided exactly: a QC is maximal when no strict superset is a
QC, computed with a superset-OR transform over all masks.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph
from .predicates import QcParams

DEFAULT_MAX_N = 18


class OracleLimitError(ValueError):
    pass


class OracleDisagreement(AssertionError):
    pass


def _check_size(g: Graph, max_n: int) -> None:
    if g.n > max_n:
        raise OracleLimitError(f"oracle refuses n={g.n} (limit {max_n})")


def _adjacency_masks(g: Graph) -> list[int]:
    return [sum(1 << u for u in g.nbrs[v]) for v in range(g.n)]


def _degrees(masks: np.ndarray, adj: list[int]) -> list[np.ndarray]:
    return [np.bitwise_count(masks & np.int64(a)).astype(np.int64) for a in adj]


def _connected(masks: np.ndarray, adj: list[int]) -> np.ndarray:
    n = len(adj)
    reach = masks & -masks  # lowest set bit
    while True:
        grown = reach.copy()
        for v in range(n):
            inside = ((reach >> v) & 1).astype(bool)
            grown[inside] |= np.int64(adj[v])
        grown &= masks
        if np.array_equal(grown, reach):
            break
        reach = grown
    return (reach == masks) & (masks != 0)


def qc_table(g: Graph, params: QcParams, max_n: int = DEFAULT_MAX_N) -> np.ndarray:
    """Boolean array over all 2^n masks: is the subset a QC (any size)."""
    _check_size(g, max_n)
    n = g.n
    masks = np.arange(1 << n, dtype=np.int64)
    size = np.bitwise_count(masks).astype(np.int64)
    adj = _adjacency_masks(g)
    degs = _degrees(masks, adj)
    p, q = params.p, params.q
    need = -((-p * (size - 1)) // q)
    tau = ((q - p) * size + p) // q

    degree_ok = masks != 0
    worst = np.zeros_like(size)
    for v in range(n):
        member = ((masks >> v) & 1).astype(bool)
        degree_ok &= ~member | (degs[v] >= need)
        worst = np.where(member, np.maximum(worst, size - degs[v]), worst)
    by_definition = degree_ok & _connected(masks, adj)
    by_delta = (masks != 0) & (worst <= tau)
    if not np.array_equal(by_definition, by_delta):
        bad = int(np.flatnonzero(by_definition != by_delta)[0])
        raise OracleDisagreement(f"QC checks disagree on mask {bad:#x}")
    return by_definition


def _has_strict_qc_superset(table: np.ndarray, n: int) -> np.ndarray:
    up = table.copy()
    for i in range(n):
        view = up.reshape(-1, 2, 1 << i)
        view[:, 0, :] |= view[:, 1, :]
    masks = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=bool)
    for v in range(n):
        outside = ((masks >> v) & 1) == 0
        out[outside] |= up[masks[outside] | (1 << v)]
    return out


def _decode(masks: np.ndarray, n: int) -> list[tuple[int, ...]]:
    return sorted(tuple(v for v in range(n) if (int(m) >> v) & 1) for m in masks)


def all_qcs(g: Graph, params: QcParams, max_n: int = DEFAULT_MAX_N) -> list[tuple[int, ...]]:
    """Every QC with at least theta vertices, sorted lexicographically."""
    table = qc_table(g, params, max_n)
    masks = np.arange(1 << g.n, dtype=np.int64)
    keep = table & (np.bitwise_count(masks) >= params.theta)
    return _decode(np.flatnonzero(keep), g.n)


def all_mqcs(g: Graph, params: QcParams, max_n: int = DEFAULT_MAX_N) -> list[tuple[int, ...]]:
    """Maximal QCs with at least theta vertices, sorted lexicographically."""
    table = qc_table(g, params, max_n)
    masks = np.arange(1 << g.n, dtype=np.int64)
    keep = table & (np.bitwise_count(masks) >= params.theta)
    keep &= ~_has_strict_qc_superset(table, g.n)
    return _decode(np.flatnonzero(keep), g.n)
