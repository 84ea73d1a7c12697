"""Pivot selection and branching plans.

A plan is a list of :class:`Run` objects.  Each run describes a consecutive
family of children over one vertex ordering ``v_1..v_k`` of the candidates:

* ``"se"``: child ``j`` includes ``v_j`` and excludes ``v_1..v_{j-1}``;
* ``"sym"``: child ``j`` includes ``v_1..v_{j-1}`` and excludes ``v_j``.

Consecutive children of a run differ by one move, which lets the driver walk
them incrementally instead of rebuilding each child from its parent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .branch import Branch

Location = Literal["S", "C"]


@dataclass(frozen=True)
class Pivot:
    vertex: int
    location: Location
    a: int
    b: int
    nonnbrs_in_C: tuple[int, ...]
    nonnbrs_in_S: int

    @property
    def hybrid_eligible(self) -> bool:
        return self.location == "C" and self.nonnbrs_in_S == 0


@dataclass(frozen=True)
class Child:
    include: tuple[int, ...]
    exclude: tuple[int, ...]


@dataclass(frozen=True)
class Run:
    """Children ``first..stop-1`` (0-based) of an SE or Sym-SE family over ``order``.

    ``drop_last`` lists extra candidates excluded in the final child only.
    """

    mode: Literal["se", "sym"]
    order: tuple[int, ...]
    first: int
    stop: int
    drop_last: tuple[int, ...] = ()

    def children(self) -> list[Child]:
        out = []
        order = self.order
        for j in range(self.first, self.stop):
            extra = self.drop_last if j == self.stop - 1 else ()
            if self.mode == "se":
                out.append(Child((order[j],), order[:j] + extra))
            else:
                out.append(Child(order[:j], (order[j],) + extra))
        return out

    def __len__(self) -> int:
        return max(0, self.stop - self.first)


@dataclass(frozen=True)
class BranchingPlan:
    kind: str
    runs: tuple[Run, ...] = field(default_factory=tuple)
    pivot: Pivot | None = None

    def children(self) -> list[Child]:
        return [c for r in self.runs for c in r.children()]

    def __len__(self) -> int:
        return sum(len(r) for r in self.runs)


def select_pivot(b: Branch, bound: int) -> Pivot:
    """Vertex of S | C with the most disconnections inside S | C.

    Ties prefer candidates adjacent to all of S (these admit the hybrid
    plan), then other candidates, then members of S, then the lowest id.
    """
    S, C = b.S, b.C
    ns, nc = len(S), len(C)
    size = ns + nc
    deg_s, deg_sc = b.deg_s, b.deg_sc
    best_key = None
    best = -1
    for v in C:
        key = (-(size - deg_sc[v]), 0 if deg_s[v] == ns else 1, v)
        if best_key is None or key < best_key:
            best_key, best = key, v
    for v in S:
        key = (-(size - deg_sc[v]), 2, v)
        if best_key is None or key < best_key:
            best_key, best = key, v
    if best_key is None or -best_key[0] <= bound:
        raise ValueError("no vertex exceeds the disconnection bound; branch is terminal")
    return pivot_at(b, best, bound)


def pivot_at(b: Branch, v: int, bound: int) -> Pivot:
    """Pivot data for a given vertex ``v`` of S | C."""
    S, C = b.S, b.C
    if v not in S and v not in C:
        raise ValueError(f"vertex {v} is not in S | C")
    in_s = len(S) - b.deg_s[v]
    nb = b.g.nbr_sets[v]
    others = sorted(u for u in C if u not in nb and u != v)
    if v in C:
        location: Location = "C"
        nonnbrs = (v, *others)
    else:
        location = "S"
        nonnbrs = tuple(others)
    return Pivot(v, location, bound - in_s, len(nonnbrs), nonnbrs, in_s)


def _order(b: Branch, p: Pivot) -> tuple[int, ...]:
    lead = set(p.nonnbrs_in_C)
    return p.nonnbrs_in_C + tuple(sorted(u for u in b.C if u not in lead))


def se_children(b: Branch) -> BranchingPlan:
    order = tuple(sorted(b.C))
    return BranchingPlan("se", (Run("se", order, 0, len(order)),))


def sym_se_children(b: Branch, p: Pivot) -> BranchingPlan:
    """Keep the first a+1 Sym-SE children; later ones violate the condition.

    The last kept child also drops ``v_{a+2}..v_b``: including any of them
    would push the pivot past the bound.
    """
    order = _order(b, p)
    a = p.a
    run = Run("sym", order, 0, a + 1, order[a + 1 : p.b])
    kind = "sym-case1" if p.location == "S" else "sym-case2"
    return BranchingPlan(kind, (run,), p)


def hybrid_se_children(b: Branch, p: Pivot) -> BranchingPlan:
    """Sym-SE children 2..a+1 (include the pivot) plus SE children 2..b
    (exclude it).  SE children past b exclude every non-neighbour of the pivot
    and hold only non-maximal QCs."""
    if not p.hybrid_eligible:
        raise ValueError("hybrid branching needs a candidate pivot adjacent to all of S")
    order = _order(b, p)
    a = p.a
    return BranchingPlan(
        "hybrid",
        (
            Run("sym", order, 1, a + 1, order[a + 1 : p.b]),
            Run("se", order, 1, p.b),
        ),
        p,
    )
