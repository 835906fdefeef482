"""Dual shatter function: exact maximization, greedy lower bounds, growth fit.

``dual_shatter(family, n)`` maximizes the boolean-atom count over all
subfamilies of ``n`` sets. Exact mode enumerates n-subsets depth-first in
lexicographic order with the admissible prune ``atoms(S + t) <= 2*atoms(S)``,
so the reported witness is always the lexicographically first maximizer.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from .errors import BudgetExceededError
from .family import SetFamily

DEFAULT_BUDGET = 10**7

MODE_EXACT = "exact"
MODE_GREEDY = "greedy-lower-bound"


@dataclass(frozen=True)
class ShatterResult:
    n: int
    value: int
    witness: tuple[int, ...]
    mode: str


@dataclass(frozen=True)
class GrowthProfile:
    """Shatter values for n = 1..n_max plus a diagnostic log-log slope.

    The exponent is a least-squares fit over the top half of the range and is
    advisory only; no other operation consumes it.
    """

    results: tuple[ShatterResult, ...]
    exponent: float


def _split(cells: list[int], mem: int) -> list[int]:
    out = []
    for c in cells:
        hi = c & mem
        if hi:
            out.append(hi)
            lo = c ^ hi
            if lo:
                out.append(lo)
        else:
            out.append(c)
    return out


def _exact(family: SetFamily, n: int, budget: int) -> ShatterResult:
    m = family.num_sets
    if math.comb(m, n) > budget:
        raise BudgetExceededError(
            f"exact shatter search over C({m},{n}) subfamilies exceeds the budget of {budget}"
        )
    members = family.members
    cap = family.universe_size
    best_value = -1
    best_witness: tuple[int, ...] = ()

    def dfs(start: int, chosen: list[int], cells: list[int]) -> None:
        nonlocal best_value, best_witness
        remaining = n - len(chosen)
        if remaining == 0:
            if len(cells) > best_value:
                best_value = len(cells)
                best_witness = tuple(chosen)
            return
        if min(len(cells) << remaining, cap) <= best_value:
            return
        for t in range(start, m - remaining + 1):
            chosen.append(t)
            dfs(t + 1, chosen, _split(cells, members[t]))
            chosen.pop()

    start_cells = [family.universe_mask] if family.universe_mask else []
    dfs(0, [], start_cells)
    return ShatterResult(n, max(best_value, 0), best_witness, MODE_EXACT)


def _greedy(family: SetFamily, n: int) -> ShatterResult:
    members = family.members
    chosen: list[int] = []
    used: set[int] = set()
    cells = [family.universe_mask] if family.universe_mask else []
    for _ in range(n):
        best_t = -1
        best_splits = -1
        for t in range(family.num_sets):
            if t in used:
                continue
            mem = members[t]
            splits = sum(1 for c in cells if c & mem and c & ~mem)
            if splits > best_splits:
                best_t, best_splits = t, splits
        used.add(best_t)
        chosen.append(best_t)
        cells = _split(cells, members[best_t])
    return ShatterResult(n, len(cells), tuple(chosen), MODE_GREEDY)


def dual_shatter(
    family: SetFamily, n: int, mode: str = MODE_EXACT, budget: int = DEFAULT_BUDGET
) -> ShatterResult:
    """Maximum number of boolean atoms over subfamilies of size ``n``.

    ``mode="exact"`` returns the true maximum (refusing upfront when the
    subset count exceeds ``budget``); ``mode="greedy-lower-bound"`` grows one
    subfamily by repeatedly adding the set that splits the most current
    atoms, ties to the lowest index, and returns a valid lower bound.
    """
    if not 1 <= n <= family.num_sets:
        raise ValueError(f"n must be between 1 and {family.num_sets}, got {n}")
    if mode == MODE_EXACT:
        return _exact(family, n, budget)
    if mode in (MODE_GREEDY, "greedy"):
        return _greedy(family, n)
    raise ValueError(f"unknown mode {mode!r}")


def growth_profile(
    family: SetFamily, n_max: int, mode: str = MODE_EXACT, budget: int = DEFAULT_BUDGET
) -> GrowthProfile:
    """Shatter values for n = 1..min(n_max, #sets) with a fitted exponent."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    top = min(n_max, family.num_sets)
    results = tuple(dual_shatter(family, k, mode, budget) for k in range(1, top + 1))
    tail = results[len(results) // 2 :]
    if len(tail) < 2:
        tail = results
    if len(tail) < 2 or any(r.value < 1 for r in tail):
        exponent = 0.0
    else:
        xs = [math.log(r.n) for r in tail]
        ys = [math.log(r.value) for r in tail]
        exponent = statistics.linear_regression(xs, ys).slope
    return GrowthProfile(results, exponent)
