"""Complex gamma function, spherical Bessel functions j_0..j_6 and the
low-order Legendre polynomials.

Only what the photoionization amplitude and the anisotropy parameters need;
all functions broadcast over numpy arrays.
"""

from __future__ import annotations

import numpy as np

# Lanczos approximation, g = 7, n = 9 (relative error ~1e-15 for Re z >= 0.5)
_LANCZOS_G = 7.0
_LANCZOS_COEF = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_HALF_LOG_2PI = 0.5 * np.log(2 * np.pi)

MAX_BESSEL_ORDER = 6


def _check_poles(z):
    re, im = z.real, z.imag
    pole = (im == 0) & (re <= 0) & (re == np.round(re))
    if np.any(pole):
        raise ValueError("gamma function has poles at non-positive integers")


def _lanczos_log(z):
    # log Gamma(z) for Re z >= 0.5, principal (continuous) branch
    zm1 = z - 1.0
    series = np.full_like(zm1, _LANCZOS_COEF[0])
    for k in range(1, len(_LANCZOS_COEF)):
        series = series + _LANCZOS_COEF[k] / (zm1 + k)
    t = zm1 + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (zm1 + 0.5) * np.log(t) - t + np.log(series)


def log_gamma_complex(z):
    """Principal branch of log Gamma(z) on the half plane Re z >= 0.5.

    The imaginary part is continuous in z (not reduced modulo 2 pi), which is
    what the Coulomb phase needs.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.real < 0.5):
        raise ValueError("log_gamma_complex is restricted to Re z >= 0.5")
    out = _lanczos_log(z)
    return out[()] if out.ndim == 0 else out


def gamma_complex(z):
    """Gamma(z) for complex z, using reflection for Re z < 0.5.

    Raises
    ------
    ValueError
        If any ``z`` is a non-positive integer.
    """
    z = np.asarray(z, dtype=complex)
    _check_poles(z)
    left = z.real < 0.5
    w = np.where(left, 1.0 - z, z)
    g = np.exp(_lanczos_log(w))
    with np.errstate(all="ignore"):
        refl = np.pi / (np.sin(np.pi * z) * g)
    out = np.where(left, refl, g)
    return out[()] if out.ndim == 0 else out


def _bessel_series(l, x, terms=40):
    t = x**l / np.prod(np.arange(1.0, 2 * l + 2, 2))
    total = t
    for k in range(1, terms):
        t = t * (-0.5 * x * x) / (k * (2 * l + 2 * k + 1))
        total = total + t
    return total


def _bessel_trig(l, x):
    s, c = np.sin(x), np.cos(x)
    j_prev = s / x
    if l == 0:
        return j_prev
    j = s / x**2 - c / x
    # upward recurrence is stable for x above the switch point
    for n in range(1, l):
        j_prev, j = j, (2 * n + 1) / x * j - j_prev
    return j


def bessel_switch_point(l: int) -> float:
    """Argument below which j_l is summed from its power series."""
    return 0.5 + 0.6 * l


def spherical_bessel(l: int, x):
    """Spherical Bessel function j_l(x) for 0 <= l <= 6 and x >= 0."""
    if not (isinstance(l, (int, np.integer)) and 0 <= l <= MAX_BESSEL_ORDER):
        raise ValueError(f"order must be an integer in 0..{MAX_BESSEL_ORDER}, got {l!r}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("spherical_bessel requires x >= 0")
    small = x < bessel_switch_point(l)
    out = np.empty_like(x)
    out[small] = _bessel_series(l, x[small])
    big = ~small
    out[big] = _bessel_trig(l, x[big])
    return out[()] if out.ndim == 0 else out


def legendre_p(l: int, u):
    """Legendre polynomial P_l(u) for l = 0..4 from its explicit form."""
    u = np.asarray(u, dtype=float)
    if np.any(np.abs(u) > 1 + 1e-12):
        raise ValueError("legendre_p requires |u| <= 1")
    u2 = u * u
    if l == 0:
        out = np.ones_like(u)
    elif l == 1:
        out = u.copy()
    elif l == 2:
        out = 0.5 * (3 * u2 - 1)
    elif l == 3:
        out = 0.5 * u * (5 * u2 - 3)
    elif l == 4:
        out = (35 * u2 * u2 - 30 * u2 + 3) / 8
    else:
        raise ValueError(f"legendre_p supports l = 0..4, got {l!r}")
    return out[()] if out.ndim == 0 else out
