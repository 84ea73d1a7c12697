"""Quasi-clique predicates over vertex sets.

All thresholds are computed in exact integer/rational arithmetic: gamma is a
:class:`fractions.Fraction`, never a float.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Iterable

from .graph import Graph


@dataclass(frozen=True)
class QcParams:
    """Fraction threshold ``gamma`` in [1/2, 1] and size threshold ``theta``."""

    gamma: Fraction
    theta: int

    def __post_init__(self) -> None:
        g = self.gamma
        if isinstance(g, float):
            g = Fraction(repr(g))
        elif not isinstance(g, Fraction):
            g = Fraction(str(g)) if isinstance(g, str) else Fraction(g)
        object.__setattr__(self, "gamma", g)
        if not (Fraction(1, 2) <= g <= 1):
            raise ValueError(f"gamma must lie in [0.5, 1], got {g}")
        if isinstance(self.theta, bool) or int(self.theta) != self.theta or self.theta < 1:
            raise ValueError(f"theta must be a positive integer, got {self.theta!r}")
        object.__setattr__(self, "theta", int(self.theta))

    @classmethod
    def parse(cls, gamma: str, theta: int | str) -> QcParams:
        try:
            g = Fraction(gamma.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse gamma {gamma!r}") from None
        return cls(g, int(theta))

    @property
    def p(self) -> int:
        return self.gamma.numerator

    @property
    def q(self) -> int:
        return self.gamma.denominator

    def tau(self, x: int | Fraction) -> int:
        """Largest disconnection count a QC of size ``x`` may have."""
        return tau(x, self)

    def tau_int(self, x: int) -> int:
        # floor((1 - p/q) * x + p/q) for integer x
        p, q = self.p, self.q
        return ((q - p) * x + p) // q

    def min_degree(self, size: int) -> int:
        """ceil(gamma * (size - 1)): required in-set degree for a QC of ``size``."""
        p, q = self.p, self.q
        return -((-p * (size - 1)) // q)


def tau(x: int | Fraction, params: QcParams) -> int:
    if x < 0:
        raise ValueError("tau is defined for x >= 0")
    x = Fraction(x)
    val = (1 - params.gamma) * x + params.gamma
    return val.numerator // val.denominator


def nbr_count(g: Graph, v: int, H: Collection[int]) -> int:
    nb = g.nbr_sets[v]
    if len(H) < len(nb):
        return sum(1 for u in H if u in nb)
    return sum(1 for u in nb if u in H)


def non_nbr_count(g: Graph, v: int, H: Collection[int]) -> int:
    """Members of ``H`` not adjacent to ``v``; ``v`` counts itself if in ``H``."""
    return len(H) - nbr_count(g, v, H)


def max_disconnections(g: Graph, H: Iterable[int]) -> int:
    H = set(H)
    return max((non_nbr_count(g, v, H) for v in H), default=0)


def is_connected(g: Graph, H: Collection[int]) -> bool:
    if not H:
        return False
    H = set(H)
    start = next(iter(H))
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in g.nbrs[v]:
            if u in H and u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(H)


def is_quasi_clique(g: Graph, H: Iterable[int], params: QcParams) -> bool:
    """Definitional check: connected and every vertex meets the degree bound."""
    H = set(H)
    if not H:
        return False
    need = params.min_degree(len(H))
    if any(nbr_count(g, v, H) < need for v in H):
        return False
    return is_connected(g, H)


def is_qc_by_delta(g: Graph, H: Iterable[int], params: QcParams) -> bool:
    """QC test via the disconnection bound; valid only for gamma >= 1/2."""
    H = set(H)
    if not H:
        return False
    return max_disconnections(g, H) <= params.tau_int(len(H))


def extending_vertices(
    g: Graph, H: Iterable[int], params: QcParams, universe: Collection[int] | None = None
) -> list[int]:
    """Vertices ``v`` outside ``H`` for which ``H + {v}`` is a QC (``H`` assumed a QC)."""
    H = set(H)
    if not H:
        return sorted(universe if universe is not None else range(g.n))
    need = params.min_degree(len(H) + 1)
    deg_in_h = {u: nbr_count(g, u, H) for u in H}
    # members already at the bound must be adjacent to the newcomer
    tight = [u for u, d in deg_in_h.items() if d < need]
    if any(d + 1 < need for d in deg_in_h.values()):
        return []
    hits: dict[int, int] = {}
    for u in H:
        for w in g.nbrs[u]:
            if w not in H:
                hits[w] = hits.get(w, 0) + 1
    out = []
    for w, k in hits.items():
        if k < need or (universe is not None and w not in universe):
            continue
        nb = g.nbr_sets[w]
        if all(u in nb for u in tight):
            out.append(w)
    return sorted(out)


def passes_maximality_necessary(
    g: Graph, H: Iterable[int], params: QcParams, universe: Collection[int] | None = None
) -> bool:
    """True iff no single outside vertex extends the QC ``H`` to a larger QC.

    Necessary, not sufficient, for maximality.
    """
    return not extending_vertices(g, H, params, universe)
