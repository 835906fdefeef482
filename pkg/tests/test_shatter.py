import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import brute_pi_star, families
from setfam import (
    BudgetExceededError,
    SetFamily,
    boolean_atoms,
    dual_shatter,
    gen_halfplane_grid,
    gen_intervals,
    growth_profile,
)


def singletons():
    return SetFamily.from_points(3, [("A", [0]), ("B", [1]), ("C", [2])])


class TestDualShatterExact:
    def test_disjoint_singletons(self):
        result = dual_shatter(singletons(), 2)
        assert result.value == 3  # two sets plus the zero cell
        assert result.witness == (0, 1)

    def test_two_overlapping_sets(self):
        fam = SetFamily.from_points(4, [("A0", [0, 1]), ("A1", [1, 2])])
        assert dual_shatter(fam, 2).value == 4

    def test_halfplane_grid_formula(self):
        fam = gen_halfplane_grid(4, 32, seed=0)
        result = dual_shatter(fam, 4)
        assert result.value == 11 == 1 + 4 + math.comb(4, 2)
        assert result.value == brute_pi_star(fam, 4)

    def test_n_out_of_range(self):
        with pytest.raises(ValueError):
            dual_shatter(singletons(), 4)
        with pytest.raises(ValueError):
            dual_shatter(singletons(), 0)

    def test_budget_refusal(self):
        fam = SetFamily(20, tuple(f"S{i}" for i in range(20)), tuple([1] * 20))
        with pytest.raises(BudgetExceededError):
            dual_shatter(fam, 10, budget=1000)

    @given(families())
    def test_matches_brute_force(self, fam):
        n = min(3, fam.num_sets)
        assert dual_shatter(fam, n).value == brute_pi_star(fam, n)

    @given(families())
    def test_witness_reproduces_value(self, fam):
        n = min(3, fam.num_sets)
        result = dual_shatter(fam, n)
        assert len(result.witness) == n
        assert len(boolean_atoms(fam, result.witness)) == result.value

    @given(families(max_sets=5, max_points=8))
    def test_nondecreasing_and_bounded(self, fam):
        values = [dual_shatter(fam, n).value for n in range(1, fam.num_sets + 1)]
        assert values == sorted(values)
        full_sigs = brute_pi_star(fam, fam.num_sets)
        for n, v in enumerate(values, start=1):
            assert v <= min(2**n, full_sigs)


class TestDualShatterGreedy:
    @given(families())
    def test_greedy_below_exact(self, fam):
        for n in range(1, min(4, fam.num_sets) + 1):
            greedy = dual_shatter(fam, n, mode="greedy")
            exact = dual_shatter(fam, n)
            assert greedy.value <= exact.value
            assert greedy.mode == "greedy-lower-bound"
            assert len(boolean_atoms(fam, greedy.witness)) == greedy.value

    def test_greedy_tie_breaks_lowest_index(self):
        fam = SetFamily.from_points(4, [("A", [0, 1]), ("B", [0, 1]), ("C", [2])])
        assert dual_shatter(fam, 2, mode="greedy").witness == (0, 2)


class TestGrowthProfile:
    def test_interval_family_near_linear(self):
        fam = gen_intervals(10, 30, seed=0)
        profile = growth_profile(fam, 8)
        # Oracle: exact values recomputed by exhaustive enumeration.
        for r in profile.results:
            assert r.value == brute_pi_star(fam, r.n)
        assert 0.7 <= profile.exponent <= 1.3

    def test_halfplane_family_near_quadratic(self):
        fam = gen_halfplane_grid(8, 96, seed=0)
        profile = growth_profile(fam, 8)
        expected = [1 + n + math.comb(n, 2) for n in range(1, 9)]
        assert [r.value for r in profile.results] == expected
        assert 1.7 <= profile.exponent <= 2.1

    def test_single_set_family_flat(self):
        fam = SetFamily.from_points(4, [("A", [0, 1])])
        profile = growth_profile(fam, 4)
        assert all(r.value <= 2 for r in profile.results)
        assert profile.exponent == 0.0

    def test_n_max_validation(self):
        with pytest.raises(ValueError):
            growth_profile(singletons(), 1)
