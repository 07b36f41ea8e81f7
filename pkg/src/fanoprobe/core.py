"""Born-Oppenheimer amplitudes for pump-probe dissociative ionization of H2+.

Momenta are numpy arrays whose last axis holds (x, y, z) in atomic units;
every function broadcasts over the leading axes, so a whole momentum/delay
grid is evaluated in one call.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .special import log_gamma_complex
from .units import (
    PhysicalConstants,
    fwhm_fs_to_tau_au,
    make_constants,
    wavelength_nm_to_omega,
)

_DEFAULT_K = make_constants()


class Parity(enum.Enum):
    GERADE = "gerade"
    UNGERADE = "ungerade"

    @property
    def sign(self) -> int:
        """+1 for gerade, -1 for ungerade (sign of the second emission path)."""
        return 1 if self is Parity.GERADE else -1


def vec(x, y, z) -> np.ndarray:
    return np.array([x, y, z], dtype=float)


def dot(a, b):
    return np.sum(np.asarray(a) * np.asarray(b), axis=-1)


def norm(a):
    return np.sqrt(dot(a, a))


def unit_vector(v, tol=1e-12) -> np.ndarray:
    """Return ``v`` as a float array after checking that it has unit length."""
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > tol:
        raise ValueError(f"polarization vector {v.tolist()} is not a unit vector")
    return v


@dataclass(frozen=True, eq=False)
class PulseParams:
    """Gaussian probe pulse, all in atomic units.

    ``t_c`` may be an array, which is how delay scans are vectorized.
    """

    a0: float
    e_probe: np.ndarray
    omega: float
    tau: float
    t_c: float | np.ndarray = 0.0

    def __post_init__(self):
        object.__setattr__(self, "e_probe", unit_vector(self.e_probe))
        if not self.tau > 0:
            raise ValueError("pulse duration tau must be positive")
        if not self.omega > 0:
            raise ValueError("probe frequency must be positive")

    @classmethod
    def from_lab(cls, lambda_nm, tau_fwhm_fs, t_c=0.0, e_probe=(0, 0, 1), a0=1.0):
        return cls(a0=a0, e_probe=np.asarray(e_probe, float),
                   omega=wavelength_nm_to_omega(lambda_nm),
                   tau=fwhm_fs_to_tau_au(tau_fwhm_fs), t_c=t_c)


def wavepacket_norm_constant(p0: float, delta_r: float) -> float:
    """C_N making the J=1 Gaussian packet integrate to one over d^3p.

    The angular integral of cos^2(theta) is 4 pi / 3 and the 1/p^2 of the
    modulus cancels the radial Jacobian, leaving a 1-D Gaussian integral.
    """
    # the integrand is negligible beyond 40 widths of the Gaussian
    lo, hi = max(0.0, p0 - 40.0 / delta_r), p0 + 40.0 / delta_r
    radial, _ = integrate.quad(lambda p: math.exp(-delta_r**2 * (p - p0) ** 2), lo, hi,
                               points=[p0] if lo < p0 else None, epsabs=0.0, epsrel=1e-13,
                               limit=200)
    return 1.0 / math.sqrt(4 * math.pi / 3 * radial)


@dataclass(frozen=True, eq=False)
class WavePacketParams:
    """Dissociating nuclear packet launched at ``r0`` with radial momentum ``p0``.

    ``c_n`` defaults to the value normalizing the packet to unit probability.
    """

    p0: float
    delta_r: float
    r0: float
    e_pump: np.ndarray = field(default_factory=lambda: vec(0, 0, 1))
    c_n: float | None = None

    def __post_init__(self):
        for name in ("p0", "delta_r", "r0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        object.__setattr__(self, "e_pump", unit_vector(self.e_pump))
        if self.c_n is None:
            object.__setattr__(self, "c_n", wavepacket_norm_constant(self.p0, self.delta_r))


class Probability(NamedTuple):
    total: np.ndarray
    direct: np.ndarray
    cross: np.ndarray
    phase: np.ndarray


def _require_nonzero(mag, what):
    if np.any(mag == 0):
        raise ValueError(f"{what} must be non-zero")


def atomic_amplitude(p_e, e_probe):
    """Hydrogen 1s photoionization amplitude with the exact Coulomb continuum.

    ``e_probe`` is the probe polarization; the amplitude is linear in
    ``e_probe . p_e`` and so vanishes for emission perpendicular to it.
    """
    p_e = np.asarray(p_e, dtype=float)
    p = norm(p_e)
    _require_nonzero(p, "electron momentum")
    nu = 1.0 / p
    # N_nu^* combined with the exp(-2 nu arctan p) factor in one exponent,
    # otherwise exp(pi nu / 2) overflows for slow electrons
    expo = (-2 * nu * np.arctan(p) + 0.5 * np.pi * nu
            + np.conj(log_gamma_complex(1 + 1j * nu)))
    pref = 2**1.5 * dot(e_probe, p_e) * (1 - 1j * nu) / (np.pi * (1 + p * p) ** 2)
    return pref * np.exp(expo)


def atomic_phase(p_e, e_probe):
    """Phase of :func:`atomic_amplitude`, continuous in |p_e|.

    Raises ``ValueError`` where the amplitude vanishes (``e_probe . p_e = 0``).
    """
    p_e = np.asarray(p_e, dtype=float)
    proj = dot(e_probe, p_e)
    if np.any(proj == 0):
        raise ValueError("atomic phase is undefined where e_probe . p_e = 0")
    nu = 1.0 / norm(p_e)
    return np.where(proj < 0, np.pi, 0.0) - np.arctan(nu) - log_gamma_complex(1 + 1j * nu).imag


def wavepacket_amplitude(p, wp: WavePacketParams):
    """Momentum-space amplitude of the dissociating packet at t = 0."""
    p = np.asarray(p, dtype=float)
    pm = norm(p)
    _require_nonzero(pm, "nuclear momentum")
    cos_t = dot(p, wp.e_pump) / pm
    return (wp.c_n * cos_t / pm * np.exp(-0.5 * wp.delta_r**2 * (pm - wp.p0) ** 2)
            * np.exp(1j * (wp.p0 - pm) * wp.r0))


def detuning_f(p, p_e, p_N, pulse: PulseParams, k: PhysicalConstants = _DEFAULT_K):
    """Energy mismatch of the one-photon transition from nuclear momentum p."""
    return (dot(p_e, p_e) / (2 * k.m_e_prime) + dot(p_N, p_N) / (2 * k.mu)
            + k.I_p - pulse.omega - dot(p, p) / (2 * k.mu))


def time_factor_a(p, p_e, p_N, pulse: PulseParams, wp: WavePacketParams,
                  k: PhysicalConstants = _DEFAULT_K):
    """Delay phase times the pulse spectral filter times the packet amplitude.

    The Gaussian filter is exp(-tau^2 f^2 / 2), the Fourier transform of the
    pulse envelope.
    """
    f = detuning_f(p, p_e, p_N, pulse, k)
    return _time_factor(f, p, pulse, wp)


def _time_factor(f, p, pulse, wp):
    return np.exp(1j * f * pulse.t_c - 0.5 * (pulse.tau * f) ** 2) * wavepacket_amplitude(p, wp)


def shifted_momenta(p_N, p_e):
    """Relative nuclear momenta (p_N + p_e/2, p_N - p_e/2) after electron recoil."""
    p_N = np.asarray(p_N, dtype=float)
    half = 0.5 * np.asarray(p_e, dtype=float)
    return p_N + half, p_N - half


def n2_factor(pulse: PulseParams, k: PhysicalConstants = _DEFAULT_K) -> float:
    return k.kappa * pulse.a0 * (2 * np.pi) ** 2 * pulse.tau / (2**1.5 * k.m_e_prime * k.c)


def _check_regime(pulse, k):
    if not pulse.omega > k.I_p:
        raise ValueError(f"probe frequency {pulse.omega} does not exceed I_p = {k.I_p}")


def amplitude_fi(p_e, p_N, pulse: PulseParams, wp: WavePacketParams,
                 parity: Parity = Parity.UNGERADE, k: PhysicalConstants = _DEFAULT_K):
    """Dissociative-ionization amplitude N2 A_H(p_e) [a(p-) -/+ a(p+)]."""
    _check_regime(pulse, k)
    p_plus, p_minus = shifted_momenta(p_N, p_e)
    a_plus = time_factor_a(p_plus, p_e, p_N, pulse, wp, k)
    a_minus = time_factor_a(p_minus, p_e, p_N, pulse, wp, k)
    return n2_factor(pulse, k) * atomic_amplitude(p_e, pulse.e_probe) * (a_minus + parity.sign * a_plus)


def _two_path_phase(a_minus, a_plus, p_plus, p_minus, f_minus, f_plus, r0, t_c):
    # explicit propagation + delay phase, plus the exact remainder of
    # arg a(p-) - arg a(p+) (0 or pi for the Gaussian packet)
    reference = (norm(p_plus) - norm(p_minus)) * r0 + (f_minus - f_plus) * t_c
    rest = np.angle(a_minus * np.conj(a_plus) * np.exp(-1j * reference))
    return reference + rest


def probability_expanded(p_e, p_N, pulse: PulseParams, wp: WavePacketParams,
                         parity: Parity = Parity.UNGERADE,
                         k: PhysicalConstants = _DEFAULT_K) -> Probability:
    """|A_fi|^2 / N2^2 split into direct terms and the two-centre cross term.

    ``phase`` is arg a(p-) - arg a(p+); for the Gaussian packet it reduces to
    (|p+| - |p-|) R0 + (p_e . p_N / mu) t_c.
    """
    _check_regime(pulse, k)
    p_plus, p_minus = shifted_momenta(p_N, p_e)
    f_plus = detuning_f(p_plus, p_e, p_N, pulse, k)
    f_minus = detuning_f(p_minus, p_e, p_N, pulse, k)
    a_plus = _time_factor(f_plus, p_plus, pulse, wp)
    a_minus = _time_factor(f_minus, p_minus, pulse, wp)
    ah2 = np.abs(atomic_amplitude(p_e, pulse.e_probe)) ** 2
    mod_plus, mod_minus = np.abs(a_plus), np.abs(a_minus)
    phase = _two_path_phase(a_minus, a_plus, p_plus, p_minus, f_minus, f_plus, wp.r0, pulse.t_c)
    direct = ah2 * (mod_plus**2 + mod_minus**2)
    cross = parity.sign * 2 * ah2 * mod_plus * mod_minus * np.cos(phase)
    return Probability(direct + cross, direct, cross, phase)


def interference_phase_closed_form(p_e, p_N, t_c, r0, mu):
    """(|p+| - |p-|) R0 + (p_e . p_N / mu) t_c."""
    p_plus, p_minus = shifted_momenta(p_N, p_e)
    return (norm(p_plus) - norm(p_minus)) * r0 + dot(p_e, p_N) / mu * t_c


def fixed_nuclei_probability(p_e, r_vec, e_probe, parity: Parity = Parity.UNGERADE):
    """[1 +/- cos(p_e . R)] |A_H(p_e)|^2 for clamped nuclei at separation R."""
    ah = atomic_amplitude(p_e, e_probe)
    return (1 + parity.sign * np.cos(dot(p_e, r_vec))) * np.abs(ah) ** 2


def chi_factor(p_e_mag, r, parity: Parity = Parity.UNGERADE):
    """Orientation-averaged two-centre factor 1 +/- sin(p_e R) / (p_e R)."""
    x = np.asarray(p_e_mag, dtype=float) * np.asarray(r, dtype=float)
    return 1 + parity.sign * np.sinc(x / np.pi)


def kinematics_from_measured(p_1, p_e):
    """Relative and shifted nuclear momenta from one measured proton (P_CM = 0).

    Returns ``(p_N, p_plus, p_minus)``.
    """
    p_1 = np.asarray(p_1, dtype=float)
    p_e = np.asarray(p_e, dtype=float)
    return p_1 + 0.5 * p_e, p_1 + p_e, p_1.copy()


def electronic_wavefunction(r_e, r: float, parity: Parity = Parity.UNGERADE,
                            axis=(0.0, 0.0, 1.0)):
    """Two-centre LCAO state [psi_1s(r_e + R/2) +/- psi_1s(r_e - R/2)] / sqrt 2.

    Overlap is ignored in the normalization, as appropriate at large R.
    """
    half = 0.5 * r * np.asarray(axis, dtype=float)
    r_e = np.asarray(r_e, dtype=float)
    left = np.exp(-norm(r_e + half)) / np.sqrt(np.pi)
    right = np.exp(-norm(r_e - half)) / np.sqrt(np.pi)
    return (left + parity.sign * right) / np.sqrt(2)


def two_centre_potential(r_e, r: float, axis=(0.0, 0.0, 1.0)):
    half = 0.5 * r * np.asarray(axis, dtype=float)
    r_e = np.asarray(r_e, dtype=float)
    d1, d2 = norm(r_e - half), norm(r_e + half)
    if np.any(d1 == 0) or np.any(d2 == 0):
        raise ValueError("Coulomb potential is singular at the nuclei")
    return -1 / d1 - 1 / d2 + 1 / r


def electronic_density_profile(z_grid, r: float, parity: Parity = Parity.UNGERADE):
    """Electron density and two-centre potential along the internuclear axis."""
    if not r > 0:
        raise ValueError("internuclear distance must be positive")
    z = np.asarray(z_grid, dtype=float)
    if not np.all(np.isfinite(z)):
        raise ValueError("grid must be finite")
    pts = np.stack([np.zeros_like(z), np.zeros_like(z), z], axis=-1)
    density = electronic_wavefunction(pts, r, parity) ** 2
    return density, two_centre_potential(pts, r)


def plane_wave_validity(wp: WavePacketParams, t_c, k: PhysicalConstants = _DEFAULT_K):
    """Kinetic energy of the packet over the Coulomb repulsion at the probe time.

    Plane-wave nuclear final states are reasonable when this is >> 1.
    """
    if np.any(np.asarray(t_c) < 0):
        raise ValueError("t_c must be non-negative")
    return wp.p0**2 / (2 * k.mu) * (wp.r0 + wp.p0 * t_c / k.mu)
