import numpy as np
import pytest

from shepqi.error_analysis import (
    EvaluationGrid,
    bound_terms,
    e_l1,
    e_max,
    gauss_legendre,
    pointwise_bound,
    xi_domain,
)
from shepqi.errors import InvalidInputError
from shepqi.grid import GapSpec, SampledSignal
from shepqi.quasi_interp import build, eval_batch
from shepqi.testfns import TEST_FUNCTIONS, sample_on_grid


class TestGaussLegendre:
    def test_weight_sum(self):
        for order in (1, 2, 5, 20, 40):
            _, w = gauss_legendre(order)
            assert abs(w.sum() - 2.0) <= 1e-14

    def test_degree_38_exactness(self):
        x, w = gauss_legendre(20)
        assert abs(float(w @ x**38) - 2.0 / 39.0) <= 1e-13

    def test_odd_monomials_vanish(self):
        x, w = gauss_legendre(12)
        for p in (1, 3, 7, 11):
            assert abs(float(w @ x**p)) <= 1e-14

    def test_matches_reference_implementation(self):
        for order in (5, 20, 32):
            x, w = gauss_legendre(order)
            xr, wr = np.polynomial.legendre.leggauss(order)
            assert np.abs(x - xr).max() <= 1e-13
            assert np.abs(w - wr).max() <= 1e-13

    def test_rejects_zero_order(self):
        with pytest.raises(InvalidInputError):
            gauss_legendre(0)


class TestEvaluationGrid:
    def test_points_span_inclusive(self):
        g = EvaluationGrid(-1.0, 1.0, 4)
        assert g.points().tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]

    def test_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            EvaluationGrid(0.0, 1.0, 0)


class TestEMax:
    def test_polynomial_reproduction_scale(self):
        coeffs = [0.5, -1.0, 2.0, 1.0]
        nodes = np.linspace(-1, 1, 129)
        values = np.polynomial.polynomial.polyval(nodes, coeffs)
        q = build(SampledSignal(nodes, values), GapSpec((64,)), degree=3)
        fn = lambda x: np.polynomial.polynomial.polyval(x, coeffs)
        assert e_max(q, fn, 1000).value <= 1e-10

    def test_monotone_on_nested_grids(self, q_f1_paper, f1_fn):
        coarse = e_max(q_f1_paper, f1_fn, 500).value
        fine = e_max(q_f1_paper, f1_fn, 1000).value
        finest = e_max(q_f1_paper, f1_fn, 2000).value
        assert coarse <= fine <= finest

    def test_argmax_location_reported(self, q_f1_paper, f1_fn):
        r = e_max(q_f1_paper, f1_fn, 4000)
        assert -1.0 <= r.argmax <= 1.0
        assert r.argmax_in_gap


class TestEL1:
    def test_zero_for_reproduced_polynomial(self):
        coeffs = [1.0, 2.0, -1.0]
        nodes = np.linspace(-1, 1, 65)
        values = np.polynomial.polynomial.polyval(nodes, coeffs)
        q = build(SampledSignal(nodes, values), GapSpec(), degree=2)
        fn = lambda x: np.polynomial.polynomial.polyval(x, coeffs)
        assert e_l1(q, fn) <= 1e-12 * 2.0

    def test_known_integral_with_callable(self):
        # integral of |x| over [-1, 1] with a zero approximant
        q = lambda xs: np.zeros_like(xs)
        f = lambda xs: xs
        panels = np.linspace(-1, 1, 9)
        assert e_l1(q, f, panels=panels) == pytest.approx(1.0, abs=1e-12)

    def test_panel_refinement_stable_for_smooth(self):
        signal, gaps = sample_on_grid("f5", 128)
        q = build(signal, gaps, degree=3)
        fn = TEST_FUNCTIONS["f5"].fn
        base = e_l1(q, fn)
        refined_panels = np.linspace(-1, 1, 2 * 128 + 1)
        refined = e_l1(q, fn, panels=refined_panels)
        assert refined == pytest.approx(base, rel=1e-8)

    def test_requires_panels_for_bare_callable(self):
        with pytest.raises(InvalidInputError):
            e_l1(lambda x: x, lambda x: x)


class TestXiDomain:
    def test_single_interval_span(self):
        nodes = np.linspace(0, 1, 3)
        q = build(SampledSignal(nodes, np.zeros(3)), degree=1, n_blend=10)
        (span,) = xi_domain(q.covering).spans
        assert span == pytest.approx((1 / 11, 10 / 11))

    def test_two_piece_spans(self):
        signal, gaps = sample_on_grid("f1", 16)
        q = build(signal, gaps, degree=6, n_blend=10)
        xi = xi_domain(q.covering)
        assert len(xi.spans) == 2
        pieces = ((-1.0, 0.0), (2 * 9 / 16 - 1, 1.0))
        for (lo, hi), (plo, phi) in zip(xi.spans, pieces):
            assert plo < lo < hi < phi

    def test_large_blend_count_fills_interior(self):
        nodes = np.linspace(0, 1, 3)
        q = build(SampledSignal(nodes, np.zeros(3)), degree=1, n_blend=1000)
        (lo, hi), = xi_domain(q.covering).spans
        assert lo <= 1e-3 and hi >= 1 - 1e-3

    def test_membership(self, q_f1_paper):
        xi = xi_domain(q_f1_paper.covering)
        assert bool(xi.contains(-0.5))
        assert not bool(xi.contains(0.0005))  # inside the jump gap


class TestBoundTerms:
    def test_interp_term_shrinks_with_n(self):
        sup = TEST_FUNCTIONS["f3"].deriv_sup
        terms = []
        for n in (256, 512):
            signal, gaps = sample_on_grid("f3", n)
            q = build(signal, gaps, degree=3, n_blend=10)
            terms.append(bound_terms(q, sup, probe_grid_size=500).interp_term)
        # width halves and enters at power card+1 = 6, so at least 2^(d+2)
        assert terms[1] <= terms[0] / 2 ** (3 + 2)

    def test_leakage_term_shrinks_with_blend_count(self):
        sup = TEST_FUNCTIONS["f3"].deriv_sup
        signal, gaps = sample_on_grid("f3", 256)
        e2 = []
        for K in (6, 12):
            q = build(signal, gaps, degree=3, n_blend=K)
            e2.append(bound_terms(q, sup, probe_grid_size=500).leakage_term)
        assert e2[1] < e2[0]

    def test_overlap_count_capped(self, q_f1_paper):
        b = bound_terms(q_f1_paper, 1.0, probe_grid_size=200)
        assert 1 <= b.max_overlap_count <= 4

    def test_no_gaps_no_leakage(self):
        signal, gaps = sample_on_grid("f5", 128)
        q = build(signal, gaps, degree=3)
        b = bound_terms(q, 1.0, probe_grid_size=200)
        assert b.leakage_term == 0.0
        assert b.min_gap_width == np.inf

    def test_rejects_insufficient_mu(self):
        signal, gaps = sample_on_grid("f3", 256)
        q = build(signal, gaps, degree=3, mu=2, n_blend=1)
        with pytest.raises(InvalidInputError):
            bound_terms(q, 1.0)


class TestPointwiseBound:
    def test_polynomial_only_leakage_term(self):
        coeffs = [1.0, 1.0, 0.5, -0.25]
        nodes = np.linspace(-1, 1, 129)
        values = np.polynomial.polynomial.polyval(nodes, coeffs)
        q = build(SampledSignal(nodes, values), GapSpec((64,)), degree=3)
        x = -0.5
        f_x = float(np.polynomial.polynomial.polyval(x, coeffs))
        # derivative of order card+1 vanishes for polynomial data
        b = pointwise_bound(q, x, f_x, 0.0)
        assert b > 0
        vals, _ = eval_batch(q, np.array([x]))
        assert abs(f_x - vals[0]) <= b

    def test_linear_in_derivative_bound(self, q_f1_paper):
        x, fx = -0.5, 0.0
        b0 = pointwise_bound(q_f1_paper, x, fx, 0.0)
        b1 = pointwise_bound(q_f1_paper, x, fx, 1.0)
        b2 = pointwise_bound(q_f1_paper, x, fx, 2.0)
        assert b2 - b0 == pytest.approx(2 * (b1 - b0), rel=1e-12)

    def test_dominates_observed_error(self):
        signal, gaps = sample_on_grid("f3", 1024)
        q = build(signal, gaps, degree=3, n_blend=10)
        sup = TEST_FUNCTIONS["f3"].deriv_sup
        fn = TEST_FUNCTIONS["f3"].fn
        m_local = max(sup(ci.node_count + 1) for ci in q.covering.intervals)
        x = -0.5
        vals, _ = eval_batch(q, np.array([x]))
        observed = abs(float(fn(np.array([x]))[0]) - vals[0])
        assert observed <= pointwise_bound(q, x, float(fn(np.array([x]))[0]), m_local)

    def test_rejects_point_outside_spans(self, q_f1_paper):
        with pytest.raises(InvalidInputError):
            pointwise_bound(q_f1_paper, 0.0005, 10.0, 1.0)
