import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fanoprobe import probability_expanded, vec
from fanoprobe.approx import (
    angular_distribution,
    approx_phase,
    approx_probability,
    beta_coefficients,
    find_minima,
    infer_trajectory,
    legendre_projection,
    minima_spacing,
    r_n_magnitude,
    r_n_vector,
)

from support import FIG3_PE, FIG3_PN, K, fig3_packet, fig3_pulse


class TestTrajectory:
    def test_launch_point(self):
        r = r_n_vector(0.0, vec(0, 0, 14.8), 12.0, K.mu)
        assert np.linalg.norm(r) == pytest.approx(12.0)

    def test_after_20_fs(self):
        r = r_n_vector(826.8, vec(0, 0, 14.8), 12.0, K.mu)
        assert np.linalg.norm(r) == pytest.approx(12 + 14.8 * 826.8 / 918.075, rel=1e-14)
        assert np.linalg.norm(r) == pytest.approx(25.33, abs=5e-3)

    @given(st.lists(st.floats(-20, 20), min_size=3, max_size=3), st.floats(0, 5000))
    def test_direction_follows_momentum(self, c, t):
        pn = np.array(c)
        if np.linalg.norm(pn) < 1e-3:
            return
        r = r_n_vector(t, pn, 12.0, K.mu)
        assert r / np.linalg.norm(r) == pytest.approx(pn / np.linalg.norm(pn), abs=1e-12)

    def test_zero_momentum_rejected(self):
        with pytest.raises(ValueError):
            r_n_vector(0.0, vec(0, 0, 0), 12.0, K.mu)


class TestApproxPhase:
    def test_close_to_exact_phase(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            d = rng.normal(size=3)
            d /= np.linalg.norm(d)
            pe, pn = FIG3_PE * d, vec(0, 0, FIG3_PN)
            t = rng.uniform(0, 3000)
            exact = probability_expanded(pe, pn, fig3_pulse(t), fig3_packet()).phase
            approx = approx_phase(t, pe, pn, 12.0, K.mu)
            # next order of |p+| - |p-| is p_e^2 sin^2 / (8 p_N)-ish, far below the bound
            assert abs(math.remainder(exact - approx, 2 * np.pi)) <= FIG3_PE**2 * 12 / (4 * FIG3_PN)

    def test_orthogonal_emission(self):
        for t in (0.0, 1000.0):
            assert approx_phase(t, vec(0.72, 0, 0), vec(0, 0, 14.8), 12.0, K.mu) == 0

    def test_delay_slope(self):
        pe, pn = vec(0.3, 0.1, 0.6), vec(1.0, 0.0, 14.0)
        a = approx_phase(100.0, pe, pn, 12.0, K.mu)
        b = approx_phase(600.0, pe, pn, 12.0, K.mu)
        assert (b - a) / 500 == pytest.approx(pe @ pn / K.mu, rel=1e-12)


class TestApproxProbability:
    def test_zero_at_right_angle(self):
        assert approx_probability(np.pi / 2, 0.0, 0.0, 0.72, 30.0) == pytest.approx(0, abs=1e-30)

    def test_minimum(self):
        r = 2 * np.pi / 0.72
        assert approx_probability(0.0, 0.0, 0.0, 0.72, r) == pytest.approx(0, abs=1e-28)

    def test_matches_exact_shape(self):
        t = np.linspace(0, 3300, 801)
        pe, pn = vec(0, 0, FIG3_PE), vec(0, 0, FIG3_PN)
        exact = probability_expanded(pe, pn, fig3_pulse(t), fig3_packet()).total
        approx = approx_probability(0.0, 0.0, 0.0, FIG3_PE, r_n_magnitude(t, FIG3_PN, 12.0, K.mu))
        exact, approx = exact / exact.max(), approx / approx.max()
        assert np.max(np.abs(exact - approx)) <= 0.05

    def test_minima_equally_spaced(self):
        cos_pe = math.cos(0.4)
        t = np.linspace(0, 6000, 60001)
        y = approx_probability(0.0, 0.4, 0.0, FIG3_PE, r_n_magnitude(t, FIG3_PN, 12.0, K.mu))
        mins = np.array([m for m, _ in find_minima(np.column_stack([t, y]))])
        spacing = minima_spacing(FIG3_PE, FIG3_PN, K.mu, cos_pe)
        assert np.diff(mins) == pytest.approx(np.full(len(mins) - 1, spacing), rel=1e-6)


class TestBetas:
    @pytest.mark.parametrize("x", [1.0, 5.0, 20.0, 100.0])
    def test_exact_matches_projection(self, x):
        proj = legendre_projection(lambda u: angular_distribution(u, x), n_nodes=300)
        assert np.array(beta_coefficients(x, 1.0)) == pytest.approx(proj, abs=1e-8)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0.5, 200))
    def test_exact_matches_projection_everywhere(self, x):
        proj = legendre_projection(lambda u: angular_distribution(u, x), n_nodes=300)
        assert np.array(beta_coefficients(x, 1.0)) == pytest.approx(proj, abs=1e-8)

    def test_projection_reconstructs_low_x_distribution(self):
        # the first weight beyond P_4 is the x^4 u^6 / 24 term, ~3e-11 here
        x = 0.01
        u = np.linspace(-1, 1, 9)
        b = beta_coefficients(x, 1.0)
        series = b.beta0 + b.beta2 * (1.5 * u**2 - 0.5) + b.beta4 * (35 * u**4 - 30 * u**2 + 3) / 8
        assert series == pytest.approx(angular_distribution(u, x), abs=1e-10)

    def test_vanish_without_separation(self):
        assert np.array(beta_coefficients(0.72, 0.0)) == pytest.approx([0, 0, 0], abs=1e-16)

    def test_large_x_forms(self):
        x = np.array([50.0, 123.4])
        s = np.sin(x) / x
        asym = beta_coefficients(x, 1.0, "asymptotic")
        printed = beta_coefficients(x, 1.0, "printed")
        assert printed.beta4 == pytest.approx(51 / 7 * s)
        assert printed.beta2 == pytest.approx((2 - 92 / 7 * s) / 3)
        assert asym.beta0 == pytest.approx(printed.beta0)
        assert asym.beta4 == pytest.approx(-9 * s)

    def test_asymptotic_converges(self):
        def err(x):
            e = np.array(beta_coefficients(x, 1.0))
            a = np.array(beta_coefficients(x, 1.0, "asymptotic"))
            return np.abs(a - e)
        e100, e200, e400 = err(100.0), err(200.0), err(400.0)
        assert np.all(e200 < e100)
        assert np.all(e400 < e100)

    def test_bad_form(self):
        with pytest.raises(ValueError):
            beta_coefficients(1.0, 1.0, "fancy")


class TestImaging:
    def test_first_order(self):
        (pt,) = infer_trajectory([(100.0, 1)], 0.72, 0.0)
        assert pt.t_c == 100.0
        assert pt.r_n == pytest.approx(2 * np.pi / 0.72)
        assert pt.r_n == pytest.approx(8.727, abs=5e-4)

    def test_linear_in_order(self):
        a, b = infer_trajectory([(0.0, 3), (1.0, 6)], 0.72, 0.3)
        assert b.r_n == pytest.approx(2 * a.r_n)

    def test_grazing_rejected(self):
        with pytest.raises(ValueError):
            infer_trajectory([(0.0, 1)], 0.72, np.pi / 2)

    def test_orders_must_be_positive(self):
        with pytest.raises(ValueError):
            infer_trajectory([(0.0, 0)], 0.72, 0.0)


class TestFindMinima:
    def test_sin_squared(self):
        omega = 0.7
        t = np.linspace(0.1, 40, 2000)
        mins = find_minima(np.column_stack([t, np.sin(omega * t) ** 2]))
        step = t[1] - t[0]
        expected = np.arange(1, len(mins) + 1) * np.pi / omega
        assert len(mins) == int(40 * omega / np.pi)
        assert np.abs(np.array([m for m, _ in mins]) - expected).max() < step / 2
        assert [n for _, n in mins] == list(range(1, len(mins) + 1))

    def test_first_order_offset(self):
        t = np.linspace(0, 10, 101)
        mins = find_minima(np.column_stack([t, np.cos(t)]), first_order=4)
        assert [n for _, n in mins] == [4, 5]

    def test_monotone_and_flat(self):
        t = np.linspace(0, 1, 50)
        assert find_minima(np.column_stack([t, t**2])) == []
        assert find_minima(np.column_stack([t, np.ones_like(t)])) == []

    def test_too_short(self):
        with pytest.raises(ValueError):
            find_minima([(0, 1), (1, 0)])
