"""(p,q)-property decisions and pairwise-disjoint extraction.

The q = 2 case is decided through the packing number: a family fails the
(p,2)-property exactly when it contains p pairwise-disjoint sets, so
``has_pq`` calls the exact maximum-independent-set solver on the
intersection graph (capped at p). General q is an explicit exhaustive check
behind a node budget.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import BudgetExceededError
from .family import SetFamily, mask_from_points

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class PropertyReport:
    """Verdict for one (p,q) query, with re-checkable witnesses.

    When ``holds`` is false and q = 2, ``violation`` lists p pairwise-disjoint
    sets; for q > 2 it lists a p-subset of which no q share a point.
    ``disjoint_witness`` carries the packing witness found on the q = 2 path.
    """

    p: int
    q: int
    holds: bool
    violation: tuple[int, ...] | None = None
    disjoint_witness: tuple[int, ...] | None = None


class _CapHit(Exception):
    pass


def _conflicts(family: SetFamily) -> list[int]:
    members = family.members
    m = len(members)
    conf = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if members[i] & members[j]:
                conf[i] |= 1 << j
                conf[j] |= 1 << i
    return conf


def _clique_cover_bound(cand: int, conf: list[int]) -> int:
    # Greedy clique cover of the candidate vertices; every clique contributes
    # at most one vertex to an independent set, so the count is admissible.
    bound = 0
    rest = cand
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= ~(1 << v)
        common = conf[v] & rest
        while common:
            u = (common & -common).bit_length() - 1
            rest &= ~(1 << u)
            common &= conf[u] & rest
        bound += 1
    return bound


def max_disjoint(family: SetFamily, cap: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Exact maximum pairwise-disjoint subfamily (packing number and witness).

    Branch and bound on the intersection graph, include-branch first in index
    order, so the witness is the lexicographically first optimum. With
    ``cap`` set the search stops as soon as ``cap`` disjoint sets are found
    and returns ``min(packing number, cap)`` with a witness of that size.
    """
    m = family.num_sets
    if m == 0 or (cap is not None and cap <= 0):
        return 0, ()
    conf = _conflicts(family)
    best_size = 0
    best: tuple[int, ...] = ()
    chosen: list[int] = []

    def dfs(cand: int) -> None:
        nonlocal best_size, best
        if not cand:
            if len(chosen) > best_size:
                best_size, best = len(chosen), tuple(chosen)
            return
        room = min(cand.bit_count(), _clique_cover_bound(cand, conf))
        if len(chosen) + room <= best_size:
            return
        v = (cand & -cand).bit_length() - 1
        bit = 1 << v
        chosen.append(v)
        if cap is not None and len(chosen) >= cap:
            best_size, best = len(chosen), tuple(chosen)
            raise _CapHit
        dfs(cand & ~bit & ~conf[v])
        chosen.pop()
        dfs(cand & ~bit)

    try:
        dfs((1 << m) - 1)
    except _CapHit:
        pass
    return best_size, best


def has_pq(family: SetFamily, p: int, q: int, budget: int = DEFAULT_BUDGET) -> PropertyReport:
    """Decide whether among any p sets of the family some q share a point."""
    if q < 2 or p < q:
        raise ValueError(f"need p >= q >= 2, got p={p}, q={q}")
    m = family.num_sets
    if q == 2:
        size, witness = max_disjoint(family, cap=p)
        holds = size < p
        return PropertyReport(p, q, holds, None if holds else witness, witness)
    if math.comb(m, p) * math.comb(p, q) > budget:
        raise BudgetExceededError(
            f"(p,q) check over C({m},{p})*C({p},{q}) intersections exceeds the budget of {budget}"
        )
    members = family.members
    for combo in itertools.combinations(range(m), p):
        found = False
        for sub in itertools.combinations(combo, q):
            inter = family.universe_mask
            for i in sub:
                inter &= members[i]
                if not inter:
                    break
            if inter:
                found = True
                break
        if not found:
            return PropertyReport(p, q, False, combo, None)
    return PropertyReport(p, q, True, None, None)


def disjoint_sequence_greedy(family: SetFamily, avoid: Iterable[int] = ()) -> tuple[int, ...]:
    """Greedy maximal list of sets disjoint from ``avoid`` and from each other.

    Scans sets in declaration order, keeping each set that avoids the blocked
    points accumulated so far; every set left out meets ``avoid`` or a chosen
    set, so the result cannot be extended.
    """
    blocked = mask_from_points(avoid, family.universe_size)
    out: list[int] = []
    for t in range(family.num_sets):
        if family.members[t] & blocked == 0:
            out.append(t)
            blocked |= family.members[t]
    return tuple(out)
