import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import (
    brute_max_disjoint,
    brute_min_consistent_partition,
    brute_min_piercing,
    families,
)
from setfam import (
    EmptySetError,
    SetFamily,
    max_disjoint,
    transversal_exact,
    transversal_greedy,
    verify_partition,
)


def star():
    return SetFamily.from_points(4, [("A", [0, 1]), ("B", [0, 2]), ("C", [0, 3])])


def singletons():
    return SetFamily.from_points(3, [("A", [0]), ("B", [1]), ("C", [2])])


def intervals():
    return SetFamily.from_points(
        10,
        [("a", range(0, 4)), ("b", range(2, 6)), ("c", range(4, 8)), ("d", range(6, 10))],
    )


def assert_solution_valid(fam, solution):
    assert len(solution.piercing_points) == solution.tau
    assert len(solution.assignment) == fam.num_sets
    for i, cls in enumerate(solution.assignment):
        assert 0 <= cls < solution.tau
        assert fam.members[i] >> solution.piercing_points[cls] & 1
    ok, failing = verify_partition(fam, solution.assignment)
    assert ok and failing is None


class TestExact:
    def test_star(self):
        solution = transversal_exact(star())
        assert solution.tau == 1
        assert solution.piercing_points == (0,)
        assert solution.optimal
        assert_solution_valid(star(), solution)

    def test_singletons(self):
        solution = transversal_exact(singletons())
        assert solution.tau == 3
        assert_solution_valid(singletons(), solution)

    def test_intervals(self):
        # Oracle: exhaustive point-subset search says two points suffice.
        assert brute_min_piercing(intervals()) == 2
        solution = transversal_exact(intervals())
        assert solution.tau == 2
        assert solution.optimal
        assert_solution_valid(intervals(), solution)

    def test_empty_set_rejected(self):
        fam = SetFamily.from_points(3, [("A", [0]), ("VOID", [])])
        with pytest.raises(EmptySetError, match="VOID"):
            transversal_exact(fam)

    def test_empty_family(self):
        solution = transversal_exact(SetFamily(3, (), ()))
        assert solution.tau == 0
        assert solution.optimal

    def test_budget_exhaustion_returns_bounds(self):
        # Pairwise intersecting without a common point: packing 1, piercing 2,
        # so the greedy/packing shortcut cannot fire and the search must run.
        fam = SetFamily.from_points(3, [("A", [0, 1]), ("B", [1, 2]), ("C", [0, 2])])
        full = transversal_exact(fam)
        assert full.tau == 2 and full.optimal
        capped = transversal_exact(fam, budget=1)
        assert not capped.optimal
        assert capped.lower_bound == max_disjoint(fam)[0] == 1
        assert capped.lower_bound <= full.tau <= capped.tau
        assert_solution_valid(fam, capped)

    @given(families(nonempty=True))
    def test_matches_partition_oracle(self, fam):
        solution = transversal_exact(fam)
        assert solution.optimal
        assert solution.tau == brute_min_consistent_partition(fam)
        assert_solution_valid(fam, solution)

    @given(families(nonempty=True))
    def test_packing_bounds_piercing(self, fam):
        assert brute_max_disjoint(fam) <= transversal_exact(fam).tau

    @given(families(max_sets=5, max_points=8, nonempty=True), st.integers(0, 255))
    def test_monotone_under_new_sets(self, fam, extra_mask):
        extra = (extra_mask % fam.universe_mask) + 1  # nonempty, inside the universe
        bigger = SetFamily(fam.universe_size, fam.names + ("EXTRA",), fam.members + (extra,))
        assert transversal_exact(bigger).tau >= transversal_exact(fam).tau
        assert max_disjoint(bigger)[0] >= max_disjoint(fam)[0]


class TestGreedy:
    def test_star(self):
        solution = transversal_greedy(star())
        assert solution.tau == 1
        assert solution.piercing_points == (0,)

    def test_singletons(self):
        assert transversal_greedy(singletons()).tau == 3

    def test_intervals_between_bounds(self):
        solution = transversal_greedy(intervals())
        assert solution.tau in (2, 3)
        assert solution.tau >= transversal_exact(intervals()).tau
        assert_solution_valid(intervals(), solution)

    def test_empty_set_rejected(self):
        with pytest.raises(EmptySetError):
            transversal_greedy(SetFamily.from_points(2, [("E", [])]))

    @given(families(nonempty=True))
    def test_upper_bounds_exact(self, fam):
        greedy = transversal_greedy(fam)
        assert greedy.tau >= transversal_exact(fam).tau
        assert_solution_valid(fam, greedy)


class TestVerifyPartition:
    def test_exact_output_verifies(self):
        solution = transversal_exact(intervals())
        assert verify_partition(intervals(), solution.assignment) == (True, None)

    def test_disjoint_class_fails(self):
        fam = SetFamily.from_points(2, [("A", [0]), ("B", [1])])
        assert verify_partition(fam, [0, 0]) == (False, 0)

    def test_interval_split_succeeds(self):
        # {a,b} meet in {2,3}; {c,d} meet in {6,7}.
        assert verify_partition(intervals(), [0, 0, 1, 1]) == (True, None)

    def test_partial_assignment_rejected(self):
        with pytest.raises(ValueError, match="partial"):
            verify_partition(intervals(), [0, 0, 1])
        with pytest.raises(ValueError, match="partial"):
            verify_partition(intervals(), {0: 0, 1: 0, 2: 1})

    def test_mapping_assignment_accepted(self):
        assert verify_partition(intervals(), {0: 0, 1: 0, 2: 1, 3: 1}) == (True, None)

    def test_first_failing_class_in_label_order(self):
        fam = SetFamily.from_points(4, [("A", [0]), ("B", [1]), ("C", [2]), ("D", [3])])
        ok, failing = verify_partition(fam, [5, 5, 3, 3])
        assert not ok
        assert failing == 3
