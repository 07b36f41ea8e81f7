"""Dissociative ionization from exact large-R asymptotic states.

Beyond Born-Oppenheimer the electron recoils against a moving proton, so
each centre sees a slightly different electron momentum, and the nuclear
energy carries the reduced mass mu'' instead of mu. The mass parameters
(alpha, mu_dprime, m_e_dprime) live on :class:`PhysicalConstants`; pass a
modified copy (``dataclasses.replace``) to explore the limit alpha -> 0.
"""

from __future__ import annotations

import numpy as np

from .core import (
    PulseParams,
    Probability,
    WavePacketParams,
    _check_regime,
    _time_factor,
    _two_path_phase,
    atomic_amplitude,
    dot,
    shifted_momenta,
)
from .units import PhysicalConstants, make_constants

_DEFAULT_K = make_constants()


def tilde_detuning_f(p, p_e, p_N, pulse: PulseParams, k: PhysicalConstants = _DEFAULT_K,
                     dprime_electron: bool = False):
    """Energy mismatch with the nuclear kinetic term over mu''.

    The electron term keeps m'_e unless ``dprime_electron`` selects the
    hydrogen reduced mass m''_e.
    """
    m_el = k.m_e_dprime if dprime_electron else k.m_e_prime
    return (dot(p_e, p_e) / (2 * m_el) + dot(p_N, p_N) / (2 * k.mu)
            + k.I_p - pulse.omega - dot(p, p) / (2 * k.mu_dprime))


def n2_tilde_factor(pulse: PulseParams, k: PhysicalConstants = _DEFAULT_K) -> float:
    """(2 pi)^2 A0 tau / (2^{3/2} m''_e c); unlike the BO prefactor it has no kappa."""
    return (2 * np.pi) ** 2 * pulse.a0 * pulse.tau / (2**1.5 * k.m_e_dprime * k.c)


def _paths(p_e, p_N, pulse, wp, k, dprime_electron):
    _check_regime(pulse, k)
    p_e = np.asarray(p_e, dtype=float)
    p_plus, p_minus = shifted_momenta(p_N, p_e)
    q_minus = p_e + k.alpha * p_minus
    q_plus = p_e - k.alpha * p_plus
    a_h_minus = atomic_amplitude(q_minus, pulse.e_probe)
    a_h_plus = atomic_amplitude(q_plus, pulse.e_probe)
    f_plus = tilde_detuning_f(p_plus, p_e, p_N, pulse, k, dprime_electron)
    f_minus = tilde_detuning_f(p_minus, p_e, p_N, pulse, k, dprime_electron)
    a_plus = _time_factor(f_plus, p_plus, pulse, wp)
    a_minus = _time_factor(f_minus, p_minus, pulse, wp)
    return p_plus, p_minus, f_plus, f_minus, a_plus, a_minus, a_h_plus, a_h_minus


def amplitude_nonbo(p_e, p_N, pulse: PulseParams, wp: WavePacketParams,
                    k: PhysicalConstants = _DEFAULT_K, dprime_electron: bool = False):
    """Ungerade amplitude N2~ [A_H(p_e + a p-) a~(p-) - A_H(p_e - a p+) a~(p+)]."""
    *_, a_plus, a_minus, ah_plus, ah_minus = _paths(p_e, p_N, pulse, wp, k, dprime_electron)
    return n2_tilde_factor(pulse, k) * (ah_minus * a_minus - ah_plus * a_plus)


def probability_nonbo_expanded(p_e, p_N, pulse: PulseParams, wp: WavePacketParams,
                               k: PhysicalConstants = _DEFAULT_K,
                               dprime_electron: bool = False) -> Probability:
    """|amplitude_nonbo|^2 / N2~^2 as direct terms plus the interference term.

    The phase is (|p+| - |p-|) R0 + phi_H(p_e + a p-) - phi_H(p_e - a p+)
    + (p_e . p_N / mu'') t_c. The atomic phase difference is taken as the
    principal angle of A_H(+) A_H(-)^*, which is continuous from zero as
    alpha grows from zero.
    """
    (p_plus, p_minus, f_plus, f_minus, a_plus, a_minus,
     ah_plus, ah_minus) = _paths(p_e, p_N, pulse, wp, k, dprime_electron)
    m_plus, m_minus = np.abs(a_plus), np.abs(a_minus)
    h_plus, h_minus = np.abs(ah_plus), np.abs(ah_minus)
    atomic = np.angle(ah_minus * np.conj(ah_plus))
    phase = _two_path_phase(a_minus, a_plus, p_plus, p_minus, f_minus, f_plus,
                            wp.r0, pulse.t_c) + atomic
    direct = h_minus**2 * m_minus**2 + h_plus**2 * m_plus**2
    cross = -2 * m_plus * m_minus * h_plus * h_minus * np.cos(phase)
    return Probability(direct + cross, direct, cross, phase)
