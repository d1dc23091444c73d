import math

import pytest

from zetaverify.special import EvalAccuracy
from zetaverify.zeros import (
    CapTooSmall,
    decide_interval,
    enumerate_zeros,
    refine_zero,
    scan_brackets,
)


class TestScanBrackets:
    def test_none_below_first_zero(self, oracle_zeros_30):
        assert all(z > 10.0 for z in oracle_zeros_30)
        assert scan_brackets(2.0, 10.0, 8) == []

    def test_exactly_one_in_14_15(self, oracle_zeros_30):
        assert sum(1 for z in oracle_zeros_30 if 14.0 <= z <= 15.0) == 1
        assert len(scan_brackets(14.0, 15.0, 8)) == 1

    def test_oversample_stability(self):
        counts = {k: len(scan_brackets(2.0, 100.0, k)) for k in (8, 16, 32)}
        assert counts[8] == counts[16] == counts[32]

    def test_ordering(self):
        bs = scan_brackets(2.0, 60.0, 8)
        assert all(a.hi <= b.lo for a, b in zip(bs, bs[1:]))
        assert all(b.sign_lo != b.sign_hi for b in bs)


class TestRefineZero:
    def test_first_zero_stable_under_tightening(self, oracle_zeros_30):
        b = scan_brackets(14.0, 15.0, 8)[0]
        z = refine_zero(b, tol=1e-9)
        z_tight = refine_zero(b, tol=1e-9, acc=EvalAccuracy(em_terms=100, em_order=10))
        assert abs(z.ordinate - z_tight.ordinate) < 1e-8
        assert abs(z.ordinate - oracle_zeros_30[0]) < 1e-8

    def test_iteration_arithmetic(self):
        b = scan_brackets(14.0, 15.0, 8)[0]
        tol = 1e-6
        z = refine_zero(b, tol=tol)
        assert z.width <= tol
        # bisection halves the bracket each step
        assert z.width > tol / 2 * (1 - 1e-12)

    def test_inside_input_bracket(self):
        b = scan_brackets(20.5, 21.5, 8)[0]
        z = refine_zero(b, tol=1e-9)
        assert b.lo < z.ordinate < b.hi


class TestEnumerateZeros:
    def test_one_below_20(self, oracle_zeros_30):
        zs = enumerate_zeros(20.0, 1e-9)
        assert len(zs) == sum(1 for z in oracle_zeros_30 if z <= 20.0) == 1

    def test_count_matches_grid_oracle_to_100(self, oracle_zeros_100):
        zs = enumerate_zeros(100.0, 1e-9)
        assert len(zs) == len(oracle_zeros_100)
        for z, ref in zip(zs, oracle_zeros_100):
            assert abs(z.ordinate - ref) < 1e-7

    def test_prefix_property(self):
        short = enumerate_zeros(50.0, 1e-9)
        full = enumerate_zeros(100.0, 1e-9)
        assert len(full) > len(short)
        for a, b in zip(short, full):
            assert a.index == b.index
            assert abs(a.ordinate - b.ordinate) <= 1e-9

    def test_strict_monotonicity(self, zeros_150):
        tol = 1e-9
        for a, b in zip(zeros_150, zeros_150[1:]):
            assert b.ordinate - a.ordinate > 10 * tol
        assert [z.index for z in zeros_150] == list(range(1, len(zeros_150) + 1))


class TestDecideInterval:
    def test_first_zero_interval(self):
        assert decide_interval(14.0, 15.0, 20.0) is True

    def test_empty_low_interval(self):
        assert decide_interval(2.0, 10.0, 20.0) is False

    def test_degenerate_interval_on_a_zero(self, zeros_150):
        a = round(zeros_150[0].ordinate, 9)
        assert decide_interval(a, a, 20.0) is True

    def test_cap_too_small(self):
        with pytest.raises(CapTooSmall):
            decide_interval(14.0, 30.0, 20.0)
