import dataclasses
import math

import numpy as np
import pytest

from fanoprobe import (
    Parity,
    amplitude_fi,
    amplitude_nonbo,
    detuning_f,
    n2_factor,
    probability_expanded,
    probability_nonbo_expanded,
    tilde_detuning_f,
    vec,
)
from fanoprobe.approx import find_minima
from fanoprobe.core import interference_phase_closed_form
from fanoprobe.nonbo import n2_tilde_factor

from support import FIG3_PE, FIG3_PN, K, fig3_packet, fig3_pulse, random_draw

BO_LIMIT = dataclasses.replace(K, alpha=0.0, mu_dprime=K.mu)


class TestTildeDetuning:
    pe, pn = vec(0, 0, 0.72), vec(0, 0, 14.8)

    def test_difference_is_mass_correction(self):
        p = vec(0.5, -2.0, 14.0)
        diff = tilde_detuning_f(p, self.pe, self.pn, fig3_pulse(), K) - detuning_f(
            p, self.pe, self.pn, fig3_pulse(), K)
        assert diff == pytest.approx((p @ p) * (1 / (2 * K.mu) - 1 / (2 * K.mu_dprime)), rel=1e-8)

    def test_fig3_magnitude(self):
        p = vec(0, 0, 14.8)
        diff = tilde_detuning_f(p, self.pe, self.pn, fig3_pulse(), K) - detuning_f(
            p, self.pe, self.pn, fig3_pulse(), K)
        assert diff == pytest.approx(3.2467e-5, rel=1e-3)

    def test_equal_masses_collapse(self):
        p = vec(1.0, 2.0, 13.0)
        assert tilde_detuning_f(p, self.pe, self.pn, fig3_pulse(), BO_LIMIT) == detuning_f(
            p, self.pe, self.pn, fig3_pulse(), K)

    def test_hydrogen_electron_mass_switch(self):
        p = vec(0, 0, 14.8)
        a = tilde_detuning_f(p, self.pe, self.pn, fig3_pulse(), K)
        b = tilde_detuning_f(p, self.pe, self.pn, fig3_pulse(), K, dprime_electron=True)
        assert b - a == pytest.approx(0.72**2 * (1 / (2 * K.m_e_dprime) - 1 / (2 * K.m_e_prime)))


class TestAmplitude:
    def test_bo_limit(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            pe, pn, pulse, wp = random_draw(rng)
            nb = amplitude_nonbo(pe, pn, pulse, wp, BO_LIMIT) / n2_tilde_factor(pulse, BO_LIMIT)
            bo = amplitude_fi(pe, pn, pulse, wp, Parity.UNGERADE, K) / n2_factor(pulse, K)
            assert abs(nb - bo) <= 1e-12 * abs(bo)

    def test_prefactor_ratio_is_kappa_and_masses(self):
        pulse = fig3_pulse()
        ratio = n2_factor(pulse, K) / n2_tilde_factor(pulse, K)
        assert ratio == pytest.approx(K.kappa * K.m_e_dprime / K.m_e_prime, rel=1e-14)

    def test_transversality_broken(self):
        pe, pn = vec(0.72, 0, 0), vec(0, 0, 14.8)
        pulse, wp = fig3_pulse(t_c=300.0), fig3_packet()
        assert amplitude_fi(pe, pn, pulse, wp) == 0
        assert abs(amplitude_nonbo(pe, pn, pulse, wp, K)) > 0

    def test_degenerate_momentum_rejected(self):
        pn = vec(0, 0, 14.8)
        pe = K.alpha * pn / (1 - K.alpha / 2)  # p_e - alpha p+ = 0
        with pytest.raises(ValueError):
            amplitude_nonbo(pe, pn, fig3_pulse(), fig3_packet(), K)


class TestExpanded:
    def test_modulus_square(self):
        rng = np.random.default_rng(22)
        for _ in range(300):
            pe, pn, pulse, wp = random_draw(rng)
            amp = amplitude_nonbo(pe, pn, pulse, wp, K)
            prob = probability_nonbo_expanded(pe, pn, pulse, wp, K)
            assert prob.total * n2_tilde_factor(pulse, K) ** 2 == pytest.approx(abs(amp) ** 2, rel=1e-10)

    def test_zero_alpha_phase_uses_mu_dprime(self):
        k0 = dataclasses.replace(K, alpha=0.0)
        pe, pn = vec(0.1, 0.2, 0.68), vec(0.3, 0.0, 14.7)
        for t in (0.0, 900.0, 2500.0):
            ph = probability_nonbo_expanded(pe, pn, fig3_pulse(t), fig3_packet(), k0).phase
            closed = interference_phase_closed_form(pe, pn, t, 12.0, K.mu_dprime)
            assert ph == pytest.approx(closed, abs=1e-10)

    def test_fringe_frequency_ratio(self):
        t = np.linspace(0, 3300, 11)
        pe, pn = vec(0, 0, FIG3_PE), vec(0, 0, FIG3_PN)
        bo = probability_expanded(pe, pn, fig3_pulse(t), fig3_packet()).phase
        nb = probability_nonbo_expanded(pe, pn, fig3_pulse(t), fig3_packet(), K).phase
        ratio = np.polyfit(t, nb, 1)[0] / np.polyfit(t, bo, 1)[0]
        assert ratio - 1 == pytest.approx(K.mu / K.mu_dprime - 1, rel=1e-8)
        assert ratio - 1 == pytest.approx(-2.7e-4, abs=5e-6)

    def test_minima_spacing_scales_with_mass(self):
        t = np.linspace(0, 60000, 60001)
        pe, pn = vec(0, 0, FIG3_PE), vec(0, 0, FIG3_PN)
        bo = probability_expanded(pe, pn, fig3_pulse(t), fig3_packet()).total
        nb = probability_nonbo_expanded(pe, pn, fig3_pulse(t), fig3_packet(), K).total
        sb = np.diff([m for m, _ in find_minima(np.column_stack([t, bo]))]).mean()
        sn = np.diff([m for m, _ in find_minima(np.column_stack([t, nb]))]).mean()
        assert sn / sb == pytest.approx(K.mu_dprime / K.mu, abs=1e-6)
        assert sn / sb == pytest.approx(1.000273, abs=2e-6)

    def test_continuous_in_alpha(self):
        pe, pn = vec(0.2, 0.0, 0.7), vec(0.0, 0.4, 14.8)
        pulse, wp = fig3_pulse(1500.0), fig3_packet()
        alphas = np.linspace(0, K.alpha, 5)
        totals = np.array([probability_nonbo_expanded(
            pe, pn, pulse, wp, dataclasses.replace(K, alpha=a)).total for a in alphas])
        steps = np.diff(totals)
        # smooth dependence: monotone steps whose changes are small against the steps
        assert np.all(steps > 0) or np.all(steps < 0)
        assert np.abs(np.diff(steps)).max() < 0.1 * np.abs(steps).min()

    def test_fringe_count_similar_to_bo(self):
        t = np.linspace(0, 20000, 20001)
        pe, pn = vec(0, 0, FIG3_PE), vec(0, 0, FIG3_PN)
        bo = probability_expanded(pe, pn, fig3_pulse(t), fig3_packet()).total
        nb = probability_nonbo_expanded(pe, pn, fig3_pulse(t), fig3_packet(), K).total
        nb_count = len(find_minima(np.column_stack([t, nb])))
        bo_count = len(find_minima(np.column_stack([t, bo])))
        assert abs(nb_count - bo_count) <= 1
