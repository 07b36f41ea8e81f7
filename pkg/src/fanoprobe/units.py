"""Physical constants, reduced masses and lab-unit conversions.

Everything downstream works in atomic units (hbar = m_e = e = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

PROTON_MASS = 1836.15
SPEED_OF_LIGHT = 137.036
BOHR_NM = 0.0529177
FS_AU = 41.3414
HYDROGEN_IP = 0.5


@dataclass(frozen=True)
class PhysicalConstants:
    """Masses and constants for the p-p-e system.

    The derived masses are filled in from ``m_e`` and ``m_p`` unless given
    explicitly. Overriding them (e.g. ``alpha=0``) is how the non-BO
    code is collapsed onto its Born-Oppenheimer limit.
    """

    m_e: float = 1.0
    m_p: float = PROTON_MASS
    c: float = SPEED_OF_LIGHT
    I_p: float = HYDROGEN_IP
    m_e_prime: float = field(default=None)  # type: ignore[assignment]
    mu: float = field(default=None)  # type: ignore[assignment]
    kappa: float = field(default=None)  # type: ignore[assignment]
    m_e_dprime: float = field(default=None)  # type: ignore[assignment]
    mu_dprime: float = field(default=None)  # type: ignore[assignment]
    alpha: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        me, mp = self.m_e, self.m_p
        if me <= 0 or mp <= 0:
            raise ValueError("masses must be positive")
        derived = {
            "m_e_prime": 2 * mp * me / (2 * mp + me),
            "mu": mp / 2,
            "kappa": 1 + me / (2 * mp + me),
            "m_e_dprime": mp * me / (mp + me),
            "mu_dprime": mp * (mp + me) / (2 * mp + me),
            "alpha": me / (me + mp),
        }
        for name, value in derived.items():
            if getattr(self, name) is None:
                object.__setattr__(self, name, value)

    def as_dict(self) -> dict:
        return {
            name: getattr(self, name)
            for name in ("m_e", "m_p", "c", "I_p", "m_e_prime", "mu", "kappa",
                         "m_e_dprime", "mu_dprime", "alpha")
        }


def make_constants(**overrides) -> PhysicalConstants:
    """Default constants: m_p = 1836.15, c = 137.036, I_p = 0.5 hartree."""
    return PhysicalConstants(**overrides)


def wavelength_nm_to_omega(lambda_nm):
    """Photon angular frequency (a.u.) for a vacuum wavelength in nm."""
    if not lambda_nm > 0:
        raise ValueError(f"wavelength must be positive, got {lambda_nm!r}")
    if math.isinf(lambda_nm):
        return 0.0
    return 2 * math.pi * SPEED_OF_LIGHT / (lambda_nm / BOHR_NM)


def omega_to_wavelength_nm(omega):
    if not omega > 0:
        raise ValueError(f"frequency must be positive, got {omega!r}")
    return 2 * math.pi * SPEED_OF_LIGHT / omega * BOHR_NM


def fwhm_fs_to_tau_au(tau_fwhm_fs):
    """Convert an intensity FWHM in fs to the Gaussian envelope width tau (a.u.).

    The vector potential envelope is exp(-(t - t_c)^2 / (2 tau^2)), so the
    intensity FWHM is 2 sqrt(ln 2) tau.
    """
    if not tau_fwhm_fs > 0:
        raise ValueError(f"pulse duration must be positive, got {tau_fwhm_fs!r}")
    return tau_fwhm_fs / (2 * math.sqrt(math.log(2))) * FS_AU


def fs_to_au(t_fs):
    return t_fs * FS_AU


def au_to_fs(t_au):
    return t_au / FS_AU
