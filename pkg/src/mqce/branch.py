"""Search-tree branch ``(S, C, D)`` with incrementally maintained degrees.

For every vertex ``u`` of the branch universe (``S0 | C0``) the branch keeps
``deg_s[u] = |N(u) & S|`` and ``deg_sc[u] = |N(u) & (S | C)|``.  Each move
costs ``O(deg(v))`` and is recorded in an undo log so depth-first search can
roll back instead of copying state.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Collection, Iterable

from .graph import Graph
from .predicates import QcParams


class Branch:
    __slots__ = ("g", "S", "C", "D0", "D_moved", "deg_s", "deg_sc", "_log")

    def __init__(
        self,
        g: Graph,
        S0: Iterable[int],
        C0: Iterable[int],
        D0: Collection[int] = frozenset(),
    ) -> None:
        S = set(S0)
        C = set(C0)
        if S & C:
            raise ValueError(f"S and C overlap: {sorted(S & C)}")
        for v in S | C:
            if v in D0:
                raise ValueError(f"vertex {v} is in D and in S | C")
            if not 0 <= v < g.n:
                raise IndexError(f"vertex {v} out of range")
        self.g = g
        self.S = S
        self.C = C
        # D0 may be large and lazily represented; only vertices excluded during
        # the search are materialised.
        self.D0 = D0
        self.D_moved: set[int] = set()
        deg_s = {v: 0 for v in S}
        deg_s.update((v, 0) for v in C)
        deg_sc = dict(deg_s)
        nbrs = g.nbrs
        for v in S:
            for u in nbrs[v]:
                if u in deg_s:
                    deg_s[u] += 1
                    deg_sc[u] += 1
        for v in C:
            for u in nbrs[v]:
                if u in deg_sc:
                    deg_sc[u] += 1
        self.deg_s = deg_s
        self.deg_sc = deg_sc
        self._log: list[int] = []

    def __repr__(self) -> str:
        return f"Branch(S={sorted(self.S)}, C={sorted(self.C)}, D+={sorted(self.D_moved)})"

    @property
    def D(self) -> set[int]:
        return set(self.D0) | self.D_moved

    # moves ---------------------------------------------------------------

    def move_c_to_s(self, v: int) -> None:
        self.C.remove(v)
        self.S.add(v)
        deg_s = self.deg_s
        for u in self.g.nbrs[v]:
            if u in deg_s:
                deg_s[u] += 1
        self._log.append(v)

    def move_c_to_d(self, v: int) -> None:
        self.C.remove(v)
        self.D_moved.add(v)
        deg_sc = self.deg_sc
        for u in self.g.nbrs[v]:
            if u in deg_sc:
                deg_sc[u] -= 1
        self._log.append(~v)

    def snapshot(self) -> int:
        return len(self._log)

    def rollback(self, token: int) -> None:
        log = self._log
        nbrs = self.g.nbrs
        deg_s, deg_sc = self.deg_s, self.deg_sc
        while len(log) > token:
            e = log.pop()
            if e >= 0:
                self.S.remove(e)
                self.C.add(e)
                for u in nbrs[e]:
                    if u in deg_s:
                        deg_s[u] -= 1
            else:
                v = ~e
                self.D_moved.remove(v)
                self.C.add(v)
                for u in nbrs[v]:
                    if u in deg_sc:
                        deg_sc[u] += 1

    # derived quantities -----------------------------------------------------

    def delta_s(self) -> int:
        """Max disconnections inside S (self included); 0 for empty S."""
        S = self.S
        if not S:
            return 0
        deg_s = self.deg_s
        return len(S) - min(deg_s[u] for u in S)

    def delta_sc(self) -> int:
        size = len(self.S) + len(self.C)
        if not size:
            return 0
        deg_sc = self.deg_sc
        return size - min(min((deg_sc[u] for u in self.S), default=size),
                          min((deg_sc[u] for u in self.C), default=size))

    def d_min(self) -> int:
        if not self.S:
            raise ValueError("d_min is undefined for an empty partial set")
        deg_sc = self.deg_sc
        return min(deg_sc[u] for u in self.S)

    def sigma(self, params: QcParams) -> Fraction:
        """Upper bound on the size of any QC under this branch."""
        size = len(self.S) + len(self.C)
        if not self.S:
            return Fraction(size)
        return min(Fraction(size), Fraction(self.d_min()) / params.gamma + 1)

    def bound(self, params: QcParams) -> int:
        """tau(sigma(B)) in integer arithmetic."""
        size = len(self.S) + len(self.C)
        p, q = params.p, params.q
        if self.S:
            dmin = self.d_min()
            if size * p > dmin * q + p:
                # sigma = (dmin*q + p) / p
                return ((q - p) * (dmin * q + p) + p * p) // (p * q)
        return ((q - p) * size + p) // q

    def recount(self) -> tuple[dict[int, int], dict[int, int]]:
        """From-scratch counters, for verification."""
        sc = self.S | self.C
        nb = self.g.nbr_sets
        deg_s = {u: len(nb[u] & self.S) for u in self.deg_s}
        deg_sc = {u: len(nb[u] & sc) for u in self.deg_sc}
        return deg_s, deg_sc

    def state(self) -> tuple:
        return (
            frozenset(self.S),
            frozenset(self.C),
            frozenset(self.D_moved),
            tuple(sorted(self.deg_s.items())),
            tuple(sorted(self.deg_sc.items())),
        )
