"""Tests for stampkit.lpsp: N_h via the weight table, bisection and enumeration."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stampkit.errors import ArithmeticOverflowError, RequiresUnitDenominationError, ResourceLimitError
from stampkit.lpsp import (
    NhRow,
    bisect_last_true,
    build_weight_table,
    compute_n_h,
    covered,
    greedy_representation,
    n_h_brute_force,
    n_h_by_binary_search,
    n_h_table,
)
from stampkit.models import Basis, rep_value

from .conftest import lpsp_bases, oracle_min_weight, oracle_n_h, random_lpsp_basis


class TestComputeNh:
    def test_worked_example(self):
        result = compute_n_h(Basis((1, 4, 7, 8)), 3)
        assert result.n_h == 25
        assert result.witness_below.coeffs == (0, 0, 0, 3)
        assert result.witness_below.weight == 3
        assert result.min_weight_at_n_h == 4

    @pytest.mark.parametrize("h,expected", [(1, 2), (2, 3), (3, 25)])
    def test_small_h(self, h, expected):
        assert compute_n_h(Basis((1, 4, 7, 8)), h).n_h == expected

    @pytest.mark.parametrize("h", [1, 2, 5, 17])
    def test_unit_basis(self, h):
        assert compute_n_h(Basis((1,)), h).n_h == h + 1

    @pytest.mark.parametrize("h", [1, 2, 5, 17])
    def test_one_two(self, h):
        assert compute_n_h(Basis((1, 2)), h).n_h == 2 * h + 1

    def test_requires_unit(self):
        with pytest.raises(RequiresUnitDenominationError):
            compute_n_h(Basis((2, 3)), 3)

    def test_h_must_be_positive(self):
        with pytest.raises(ValueError):
            compute_n_h(Basis((1, 2)), 0)

    def test_overflowing_table_index(self):
        with pytest.raises(ArithmeticOverflowError):
            compute_n_h(Basis((1, 2**70)), 1)

    def test_explicit_table_cap(self):
        with pytest.raises(ResourceLimitError) as info:
            compute_n_h(Basis((1, 4, 7, 8)), 3, max_table=10)
        assert info.value.requested == 26

    def test_table_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("STAMPKIT_MAX_TABLE", "10")
        with pytest.raises(ResourceLimitError):
            compute_n_h(Basis((1, 4, 7, 8)), 3)

    def test_to_dict(self):
        data = compute_n_h(Basis((1, 4, 7, 8)), 3).to_dict()
        assert data["n_h"] == 25
        assert data["witness_below"] == {"coeffs": [0, 0, 0, 3], "weight": 3, "value": 24}
        assert data["min_weight_at_n_h"] == 4

    @settings(max_examples=60, deadline=None)
    @given(lpsp_bases, st.integers(min_value=1, max_value=4))
    def test_matches_enumeration_oracle(self, basis, h):
        assert compute_n_h(basis, h).n_h == oracle_n_h(basis.denoms, h)

    @settings(max_examples=60, deadline=None)
    @given(lpsp_bases, st.integers(min_value=1, max_value=6))
    def test_witnesses(self, basis, h):
        result = compute_n_h(basis, h)
        assert rep_value(result.witness_below, basis) == result.n_h - 1
        assert result.witness_below.weight <= h
        assert result.min_weight_at_n_h > h
        assert h + 1 <= result.n_h <= h * basis.largest + 1

    @settings(max_examples=40, deadline=None)
    @given(lpsp_bases, st.integers(min_value=1, max_value=8))
    def test_strictly_increasing_in_h(self, basis, h):
        assert compute_n_h(basis, h + 1).n_h > compute_n_h(basis, h).n_h

    def test_min_weight_matches_oracle(self):
        basis = Basis((1, 5, 6, 9))
        table = build_weight_table(basis, 30)
        for n in range(31):
            assert table.weight(n) == oracle_min_weight(basis.denoms, n)


class TestCovered:
    def test_worked_example(self):
        basis = Basis((1, 4, 7, 8))
        assert covered(basis, 3, 25) is True
        assert covered(basis, 3, 26) is False

    def test_empty_range(self):
        assert covered(Basis((1, 4)), 1, 0) is True
        assert covered(Basis((1, 4)), 1, -5) is True

    def test_beyond_reach(self):
        # never builds a table for m past h*a_k + 2
        assert covered(Basis((1, 4)), 2, 10**12, max_table=100) is False

    def test_requires_unit(self):
        with pytest.raises(RequiresUnitDenominationError):
            covered(Basis((3, 4)), 2, 5)

    @settings(deadline=None)
    @given(lpsp_bases, st.integers(min_value=1, max_value=4))
    def test_true_exactly_up_to_n_h(self, basis, h):
        n_h = compute_n_h(basis, h).n_h
        ms = range(3 * basis.largest + 4)
        flags = [covered(basis, h, m) for m in ms]
        assert flags == [m <= n_h for m in ms]
        assert flags == sorted(flags, reverse=True)

    @settings(deadline=None)
    @given(lpsp_bases, st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=60))
    def test_more_stamps_never_cover_less(self, basis, h, m):
        if covered(basis, h, m):
            assert covered(basis, h + 1, m)


class TestBisection:
    def test_bisect_last_true(self):
        assert bisect_last_true(lambda m: m <= 37, 0, 100) == 37
        assert bisect_last_true(lambda m: m <= 0, 0, 1) == 0

    def test_bisect_needs_bracket(self):
        with pytest.raises(ValueError):
            bisect_last_true(lambda m: False, 0, 10)
        with pytest.raises(ValueError):
            bisect_last_true(lambda m: True, 0, 10)

    def test_one_two(self):
        assert n_h_by_binary_search(Basis((1, 2)), 4) == 9

    def test_worked_example(self):
        assert n_h_by_binary_search(Basis((1, 4, 7, 8)), 3) == 25

    def test_agrees_with_table_on_seeded_sweep(self):
        rng = random.Random(11)
        for _ in range(40):
            basis = random_lpsp_basis(rng)
            h = rng.randint(1, 6)
            assert n_h_by_binary_search(basis, h) == compute_n_h(basis, h).n_h


class TestGreedy:
    def test_worked_example(self):
        basis = Basis((1, 4, 7, 8))
        assert greedy_representation(basis, 25).coeffs == (1, 0, 0, 3)
        assert greedy_representation(basis, 6).coeffs == (2, 1, 0, 0)
        assert greedy_representation(basis, 0).coeffs == (0, 0, 0, 0)

    def test_not_always_minimal(self):
        basis = Basis((1, 5, 6))
        greedy = greedy_representation(basis, 10)
        assert rep_value(greedy, basis) == 10
        assert greedy.weight == 5
        assert oracle_min_weight(basis.denoms, 10) == 2

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            greedy_representation(Basis((1, 2)), -1)

    @settings(deadline=None)
    @given(lpsp_bases)
    def test_table_never_worse_than_greedy(self, basis):
        table = build_weight_table(basis, 200)
        for n in range(201):
            assert table.weight(n) <= greedy_representation(basis, n).weight

    @settings(deadline=None)
    @given(lpsp_bases, st.integers(min_value=0, max_value=500))
    def test_always_represents(self, basis, n):
        assert rep_value(greedy_representation(basis, n), basis) == n


class TestNhTable:
    def test_one_two(self):
        assert n_h_table(Basis((1, 2)), 2) == [NhRow(1, 3, 2), NhRow(2, 5, None)]

    def test_worked_example(self):
        rows = n_h_table(Basis((1, 4, 7, 8)), 3)
        assert [row.n_h for row in rows] == [2, 3, 25]
        assert [row.delta for row in rows] == [1, 22, None]

    def test_step_can_exceed_largest_before_stabilization(self):
        # N_3 - N_2 = 22 while a_k = 8
        rows = n_h_table(Basis((1, 4, 7, 8)), 3)
        assert rows[1].delta > 8

    def test_matches_single_computations(self):
        basis = Basis((1, 3, 7))
        rows = n_h_table(basis, 10)
        assert [row.n_h for row in rows] == [compute_n_h(basis, h).n_h for h in range(1, 11)]


class TestBruteForce:
    def test_worked_example(self):
        assert n_h_brute_force(Basis((1, 4, 7, 8)), 3) == 25

    @settings(max_examples=40, deadline=None)
    @given(lpsp_bases, st.integers(min_value=1, max_value=5))
    def test_agrees_with_table(self, basis, h):
        assert n_h_brute_force(basis, h) == compute_n_h(basis, h).n_h


@pytest.mark.slow
class TestSeededAcceptance:
    def test_table_and_bisection_match_enumeration(self):
        rng = random.Random(20240)
        for _ in range(200):
            basis = random_lpsp_basis(rng, max_k=4, max_top=12)
            h = rng.randint(1, 6)
            expected = oracle_n_h(basis.denoms, h)
            assert compute_n_h(basis, h).n_h == expected, (basis, h)
            assert n_h_by_binary_search(basis, h) == expected, (basis, h)
