"""Exact and greedy piercing (transversal) of a finite set family.

For finite families, partitioning into consistent subfamilies (each with a
common point) is the same problem as covering the family by point-stars, so
the minimum partition size equals the piercing number. The exact solver is a
set-cover branch and bound over candidate points deduplicated by their
set-membership column; the raw-partition brute force lives in the test suite
as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import BudgetExceededError, EmptySetError
from .family import SetFamily
from .pq import max_disjoint

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class PiercingSolution:
    """A partition of the family into consistent classes, one point each.

    Every set in class ``i`` contains ``piercing_points[i]``, so each class
    has a nonempty total intersection. ``optimal`` records whether the class
    count was proved minimum; when it was not (budget exhausted, or a greedy
    run), ``lower_bound`` carries the best proven lower bound, if any.
    """

    tau: int
    piercing_points: tuple[int, ...]
    assignment: tuple[int, ...]
    optimal: bool
    lower_bound: int | None = None


class _BudgetHit(Exception):
    pass


def _require_pierceable(family: SetFamily) -> None:
    for name, mem in zip(family.names, family.members):
        if mem == 0:
            raise EmptySetError(f"set {name!r} is empty and cannot be pierced")


def _candidate_points(family: SetFamily) -> list[tuple[int, int]]:
    # Points with identical set-membership columns are interchangeable; keep
    # the lowest index of each distinct nonzero column.
    columns: dict[int, int] = {}
    for pt in range(family.universe_size):
        col = 0
        for i, mem in enumerate(family.members):
            if mem >> pt & 1:
                col |= 1 << i
        if col and col not in columns:
            columns[col] = pt
    return sorted(((pt, col) for col, pt in columns.items()))


def _canonical(
    family: SetFamily, points: Sequence[int], optimal: bool, lower_bound: int | None
) -> PiercingSolution:
    pts = sorted(set(points))
    assignment = []
    for mem in family.members:
        for k, pt in enumerate(pts):
            if mem >> pt & 1:
                assignment.append(k)
                break
    used = sorted(set(assignment))
    if len(used) < len(pts):
        # A redundant point can appear in interrupted searches; dropping it
        # only improves the cover.
        remap = {old: new for new, old in enumerate(used)}
        pts = [pts[old] for old in used]
        assignment = [remap[a] for a in assignment]
    return PiercingSolution(len(pts), tuple(pts), tuple(assignment), optimal, lower_bound)


def transversal_greedy(family: SetFamily) -> PiercingSolution:
    """Greedy upper bound: repeatedly take the point covering the most
    unassigned sets (ties to the lowest point index)."""
    _require_pierceable(family)
    m = family.num_sets
    if m == 0:
        return PiercingSolution(0, (), (), True, 0)
    candidates = _candidate_points(family)
    unassigned = (1 << m) - 1
    assignment = [-1] * m
    points: list[int] = []
    while unassigned:
        best_pt = -1
        best_col = 0
        best_cover = 0
        for pt, col in candidates:
            cover = (col & unassigned).bit_count()
            if cover > best_cover:
                best_pt, best_col, best_cover = pt, col, cover
        k = len(points)
        points.append(best_pt)
        newly = best_col & unassigned
        while newly:
            i = (newly & -newly).bit_length() - 1
            newly &= newly - 1
            assignment[i] = k
        unassigned &= ~best_col
    return PiercingSolution(len(points), tuple(points), tuple(assignment), False, None)


def transversal_exact(family: SetFamily, budget: int = DEFAULT_BUDGET) -> PiercingSolution:
    """Minimum piercing, proved optimal unless the node budget runs out.

    The packing number supplies the initial lower bound; when the greedy
    upper bound already matches it the search is skipped. Otherwise a branch
    and bound over candidate points runs to completion (optimal) or to the
    budget (best cover found so far, flagged non-optimal).
    """
    _require_pierceable(family)
    m = family.num_sets
    if m == 0:
        return PiercingSolution(0, (), (), True, 0)
    nu, _ = max_disjoint(family)
    greedy = transversal_greedy(family)
    if greedy.tau == nu:
        return _canonical(family, greedy.piercing_points, True, nu)

    candidates = _candidate_points(family)
    members = family.members
    all_mask = (1 << m) - 1
    best_points = list(greedy.piercing_points)
    best_size = greedy.tau
    nodes = 0

    def remaining_lb(uncovered: int) -> int:
        # Greedily collected pairwise-disjoint uncovered sets each need their
        # own piercing point.
        count = 0
        acc = 0
        r = uncovered
        while r:
            i = (r & -r).bit_length() - 1
            r &= r - 1
            if members[i] & acc == 0:
                count += 1
                acc |= members[i]
        return count

    def dfs(chosen: list[int], covered: int) -> None:
        nonlocal best_points, best_size, nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetHit
        if covered == all_mask:
            if len(chosen) < best_size:
                best_size, best_points = len(chosen), list(chosen)
            return
        uncovered = all_mask & ~covered
        if len(chosen) + remaining_lb(uncovered) >= best_size:
            return
        # Branch on the uncovered set with the fewest covering points.
        pick = -1
        pick_options: list[tuple[int, int]] | None = None
        r = uncovered
        while r:
            i = (r & -r).bit_length() - 1
            r &= r - 1
            options = [(pt, col) for pt, col in candidates if col >> i & 1]
            if pick_options is None or len(options) < len(pick_options):
                pick, pick_options = i, options
        assert pick_options
        for pt, col in pick_options:
            chosen.append(pt)
            dfs(chosen, covered | col)
            chosen.pop()

    try:
        dfs([], 0)
        return _canonical(family, best_points, True, best_size)
    except _BudgetHit:
        return _canonical(family, best_points, False, nu)


def verify_partition(
    family: SetFamily, assignment: Sequence[int] | Mapping[int, int]
) -> tuple[bool, int | None]:
    """Check that every class of the assignment has a nonempty intersection.

    Returns ``(True, None)`` or ``(False, first_failing_class)`` with classes
    visited in sorted label order. A partial assignment is an error.
    """
    m = family.num_sets
    if isinstance(assignment, Mapping):
        missing = [i for i in range(m) if i not in assignment]
        if missing:
            raise ValueError(f"partial assignment: set {missing[0]} has no class")
        labels = [assignment[i] for i in range(m)]
    else:
        labels = list(assignment)
        if len(labels) != m:
            raise ValueError(f"partial assignment: {len(labels)} labels for {m} sets")
    intersections: dict[int, int] = {}
    for i, label in enumerate(labels):
        current = intersections.get(label, family.universe_mask)
        intersections[label] = current & family.members[i]
    for label in sorted(intersections):
        if intersections[label] == 0:
            return False, label
    return True, None
