import math

import numpy as np
import pytest

from zetaverify.contours import (
    CircleContour,
    RectangleContour,
    _circle_edges,
    _quadrature_edge,
    _rect_edges,
    build_rectangle,
    count_strip,
    integrate_logderiv,
    multiplicity,
    rectangle_count,
    shrinking_circle_counts,
)
from zetaverify.special import XiEvaluator


class TestIntegrateLogderiv:
    def test_zero_free_rectangle_below_first_zero(self, evaluator):
        res = integrate_logderiv(RectangleContour(bottom=2.0, top=10.0), evaluator)
        assert res.count == 0
        assert res.distance < 1e-6

    def test_circle_around_first_zero(self, zeros_150, evaluator):
        g1 = zeros_150[0].ordinate
        res = integrate_logderiv(
            CircleContour(center=complex(0.5, g1), radius=0.5, j=2), evaluator
        )
        assert res.count == 1
        assert res.phase_count == 1

    def test_orientation_reversal_negates(self, zeros_150, evaluator):
        c = CircleContour(center=complex(0.5, zeros_150[0].ordinate), radius=0.5, j=2)
        fwd = integrate_logderiv(c, evaluator)
        rev = integrate_logderiv(c, evaluator, orientation=-1)
        assert rev.count == -fwd.count == -1
        assert abs(rev.raw + fwd.raw) < 1e-12

    def test_acceptance_bounds(self, zeros_150, evaluator):
        res = integrate_logderiv(RectangleContour(bottom=12.0, top=22.0), evaluator)
        assert res.distance < 0.25
        assert abs(res.raw.imag) < 0.25
        assert res.phase_count == res.count == 2

    def test_quadrature_refinement_non_increasing_distance(self, zeros_150, evaluator):
        c = CircleContour(center=complex(0.5, zeros_150[1].ordinate), radius=0.25, j=4)
        edges = _circle_edges(c)
        dists = []
        for scale in (1, 2, 4):
            raw = sum(
                _quadrature_edge(e, evaluator, 12, max(2, math.ceil(e.length / 0.25)) * scale)
                for e in edges
            ) / (2j * math.pi)
            dists.append(abs(raw - round(raw.real)))
        assert dists[1] <= dists[0] + 1e-12
        assert dists[2] <= dists[1] + 1e-12

    def test_edge_reflection_symmetry(self, zeros_150, evaluator):
        # xi(s) = xi(1-s) forces the left-edge integral to mirror the right
        # edge traversed in the reflected direction
        rect = RectangleContour(bottom=12.0, top=18.0)
        left, right = _rect_edges(rect)[3], _rect_edges(rect)[1]
        il = _quadrature_edge(left, evaluator, 12, 24)
        ir = _quadrature_edge(right, evaluator, 12, 24)
        # s -> 1-s plus Schwarz reflection send the upward right edge to the
        # downward left edge with (xi'/xi)(iy) = -conj((xi'/xi)(1+iy)),
        # which makes the two edge integrals conjugate-negatives
        assert abs(il + ir.conjugate()) < 1e-6


class TestMultiplicity:
    def test_first_zero_is_simple(self, zeros_150, evaluator):
        assert multiplicity(1, zeros_150, evaluator) == 1

    def test_counts_non_increasing_and_stabilize(self, zeros_150, evaluator):
        for n in (1, 2, 7, 15):
            value, counts, j0 = shrinking_circle_counts(n, zeros_150, evaluator)
            assert value == 1
            assert all(a >= b for a, b in zip(counts, counts[1:]))
            assert len(counts) <= 6
            assert 1.0 / j0 <= 0.2 + 1e-12

    def test_all_simple_up_to_50(self, zeros_150, evaluator):
        # stabilized counts at desk scale; asserts stabilization, not
        # external truth
        for n in range(1, 51):
            assert multiplicity(n, zeros_150, evaluator) == 1


class TestRectangles:
    def test_midpoint_levels(self, zeros_150, evaluator):
        g1, g2, g3 = (z.ordinate for z in zeros_150[:3])
        rect = build_rectangle(2, zeros_150, evaluator)
        assert rect.bottom == pytest.approx(0.5 * (g1 + g2), abs=1e-9)
        assert rect.top == pytest.approx(0.5 * (g2 + g3), abs=1e-9)
        assert rect.perturbations == []

    def test_synthetic_origin_for_first_rectangle(self, zeros_150, evaluator):
        rect = build_rectangle(1, zeros_150, evaluator)
        assert rect.bottom == pytest.approx(0.5 * (1.0 + zeros_150[0].ordinate), abs=1e-9)

    def test_interior_contains_exactly_one_ordinate(self, zeros_150, evaluator):
        for n in (1, 5, 12):
            rect = build_rectangle(n, zeros_150, evaluator)
            inside = [z for z in zeros_150 if rect.bottom < z.ordinate < rect.top]
            assert [z.index for z in inside] == [n]

    def test_counts_match_multiplicity(self, zeros_150, evaluator):
        for n in (1, 2, 3, 10):
            assert rectangle_count(n, zeros_150, evaluator) == 1

    def test_zero_free_sub_rectangle(self, zeros_150, evaluator):
        # fixture strictly inside the gap between the 4th and 5th zeros
        g4, g5 = zeros_150[3].ordinate, zeros_150[4].ordinate
        rect = RectangleContour(bottom=g4 + 0.3 * (g5 - g4), top=g4 + 0.7 * (g5 - g4))
        assert integrate_logderiv(rect, evaluator).count == 0


class TestCountStrip:
    def test_empty_below_ten(self, oracle_zeros_30, evaluator):
        assert all(z > 10.0 for z in oracle_zeros_30)
        assert count_strip(10.0, evaluator) == 0

    def test_one_below_twenty(self, oracle_zeros_30, evaluator):
        assert count_strip(20.0, evaluator) == 1

    def test_matches_enumeration_at_100(self, zeros_150, evaluator):
        below = [z for z in zeros_150 if z.ordinate < 100.0]
        assert count_strip(100.0, evaluator) == len(below)

    def test_conservation_over_stacked_rectangles(self, zeros_150, evaluator):
        for n_top in (10, 30):
            total = sum(rectangle_count(n, zeros_150, evaluator) for n in range(1, n_top + 1))
            bottom = 0.5 * (1.0 + zeros_150[0].ordinate)
            top = 0.5 * (zeros_150[n_top - 1].ordinate + zeros_150[n_top].ordinate)
            assert total == count_strip(top, evaluator) - count_strip(bottom, evaluator)


class TestFaultInjection:
    def test_injected_zero_raises_rectangle_count(self, zeros_150):
        tau = zeros_150[4].ordinate
        ev = XiEvaluator(injected_zeros=[complex(0.75, tau)])
        assert rectangle_count(5, zeros_150, ev) == 2
        assert multiplicity(5, zeros_150, ev) == 1
        assert rectangle_count(4, zeros_150, ev) == 1
