"""Branch-level pruning: the size/disconnection condition, the two candidate
refinement rules, the refine-and-recheck loop and the size-based cut."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .branch import Branch
from .predicates import QcParams


class Verdict(enum.Enum):
    PRUNED = "pruned"
    TERMINAL_QC = "terminal_qc"
    CONTINUE = "continue"


@dataclass(frozen=True)
class PruneVerdict:
    kind: Verdict
    bound: int | None = None
    passes: int = 0


def check_condition(b: Branch, params: QcParams, bound: int | None = None) -> bool:
    """Delta(S) <= tau(sigma(B)), and the size window [|S|, sigma] is non-empty."""
    if bound is None:
        bound = b.bound(params)
    S = b.S
    # sigma < |S|  <=>  d_min*q + p < |S|*p
    if S and b.d_min() * params.q + params.p < len(S) * params.p:
        return False
    return b.delta_s() <= bound


def rule1_victims(b: Branch, bound: int) -> list[int]:
    """Candidates ``v`` with Delta(S + v) > bound.

    Adding ``v`` raises the count of every S-member it is not adjacent to, so
    the result is ``max(Delta(S) + [v misses a member attaining Delta(S)],
    |S| + 1 - deg_s[v])``.
    """
    S, C = b.S, b.C
    deg_s = b.deg_s
    size = len(S)
    if not S:
        # Delta({v}) = 1
        return sorted(C) if bound < 1 else []
    top = size - min(deg_s[u] for u in S)
    critical = [u for u in S if size - deg_s[u] == top]
    hits = dict.fromkeys(C, 0)
    nbrs = b.g.nbrs
    for u in critical:
        for w in nbrs[u]:
            if w in hits:
                hits[w] += 1
    k = len(critical)
    out = []
    for v in C:
        d = top + (hits[v] < k)
        own = size + 1 - deg_s[v]
        if own > d:
            d = own
        if d > bound:
            out.append(v)
    out.sort()
    return out


def refine_rule1(b: Branch, bound: int) -> list[int]:
    victims = rule1_victims(b, bound)
    for v in victims:
        b.move_c_to_d(v)
    return victims


def refine_rule2(b: Branch, bound: int, params: QcParams) -> list[int]:
    """Drop candidates whose degree in S | C is below theta - bound."""
    need = params.theta - bound
    if need <= 0:
        return []
    deg_sc = b.deg_sc
    victims = sorted(v for v in b.C if deg_sc[v] < need)
    for v in victims:
        b.move_c_to_d(v)
    return victims


def progressive_refine(b: Branch, params: QcParams) -> PruneVerdict:
    """Check, refine with both rules, and re-check until nothing changes."""
    passes = 0
    while True:
        passes += 1
        bound = b.bound(params)
        if not check_condition(b, params, bound):
            return PruneVerdict(Verdict.PRUNED, None, passes)
        removed = refine_rule1(b, bound)
        removed += refine_rule2(b, bound, params)
        if not removed:
            break
    if b.delta_sc() <= bound:
        return PruneVerdict(Verdict.TERMINAL_QC, bound, passes)
    return PruneVerdict(Verdict.CONTINUE, bound, passes)


def terminate_t2(b: Branch, bound: int, params: QcParams) -> bool:
    """True when no QC of size >= theta can lie under the branch."""
    theta = params.theta
    if len(b.S) + len(b.C) < theta:
        return True
    need = theta - bound
    deg_sc = b.deg_sc
    return any(deg_sc[v] < need for v in b.S)
