"""Large-p_N approximations, Legendre anisotropy parameters and trajectory
imaging from interference minima."""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .core import dot, norm
from .special import legendre_p, spherical_bessel


class TrajectoryPoint(NamedTuple):
    t_c: float
    r_n: float


class Betas(NamedTuple):
    beta0: np.ndarray
    beta2: np.ndarray
    beta4: np.ndarray


def r_n_vector(t_c, p_N, r0: float, mu: float):
    """Effective internuclear vector R0 p_N/|p_N| + p_N t_c / mu."""
    p_N = np.asarray(p_N, dtype=float)
    pm = norm(p_N)
    if np.any(pm == 0):
        raise ValueError("nuclear momentum must be non-zero")
    t_c = np.asarray(t_c, dtype=float)[..., None]
    return r0 * p_N / pm[..., None] + p_N * t_c / mu


def r_n_magnitude(t_c, p_n_mag, r0: float, mu: float):
    return r0 + np.asarray(p_n_mag) * np.asarray(t_c) / mu


def approx_phase(t_c, p_e, p_N, r0: float, mu: float):
    """Interference phase p_e . R_N(t_c), valid for |p_e| << |p_N|."""
    return dot(p_e, r_n_vector(t_c, p_N, r0, mu))


def approx_probability(theta_e, theta_pe, theta_p, p_e_mag, r_n_mag):
    """cos^2(theta_e) sin^2(p_e cos(theta_pe) R_N / 2) cos^2(theta_p), arbitrary units.

    theta_e is measured from the probe polarization, theta_pe between p_e and
    p_N, theta_p between p_N and the pump polarization.
    """
    return (np.cos(theta_e) ** 2
            * np.sin(0.5 * p_e_mag * np.cos(theta_pe) * r_n_mag) ** 2
            * np.cos(theta_p) ** 2)


def minima_spacing(p_e_mag, p_n_mag, mu, cos_pe=1.0):
    """Delay between adjacent interference minima, 2 pi mu / (p_e p_N cos theta_pe)."""
    return 2 * np.pi * mu / (p_e_mag * p_n_mag * cos_pe)


def beta_coefficients(p_e_mag, r_n_mag, form: str = "exact") -> Betas:
    """Legendre coefficients of cos^2(t) [1 - cos(x cos t)] up to P_4, x = p_e R_N.

    ``form``:

    - ``"exact"``: projection onto P_0, P_2, P_4 in terms of j_0..j_6
    - ``"asymptotic"``: the leading sin(x)/x behaviour of the exact form
    - ``"printed"``: the published large-x expressions, kept for comparison
      (their j_0 and j_2 bookkeeping does not match the projection)
    """
    x = np.asarray(p_e_mag, dtype=float) * np.asarray(r_n_mag, dtype=float)
    if np.any(x < 0):
        raise ValueError("p_e * R_N must be non-negative")
    if form == "exact":
        j0, j2, j4, j6 = (spherical_bessel(l, x) for l in (0, 2, 4, 6))
        return Betas((1 - j0 + 2 * j2) / 3,
                     (2 - 2 * j0 + 55 / 7 * j2 - 36 / 7 * j4) / 3,
                     30 / 11 * j6 - 351 / 77 * j4 + 12 / 7 * j2)
    if form in ("asymptotic", "printed"):
        if np.any(x == 0):
            raise ValueError("large-x forms need p_e * R_N > 0")
        s = np.sin(x) / x
        if form == "asymptotic":
            return Betas((1 - 3 * s) / 3, (2 - 15 * s) / 3, -9 * s)
        return Betas((1 - 3 * s) / 3, (2 - 92 / 7 * s) / 3, 51 / 7 * s)
    raise ValueError(f"unknown form {form!r}; use 'exact', 'asymptotic' or 'printed'")


def angular_distribution(u, x):
    """cos^2(t) [1 - cos(x cos t)] as a function of u = cos t."""
    u = np.asarray(u, dtype=float)
    return u**2 * (1 - np.cos(x * u))


def legendre_projection(func, degrees=(0, 2, 4), n_nodes: int = 200):
    """Coefficients c_l of func(u) = sum c_l P_l(u) by Gauss-Legendre quadrature."""
    u, w = np.polynomial.legendre.leggauss(n_nodes)
    fu = func(u)
    return np.array([(2 * l + 1) / 2 * np.sum(w * fu * legendre_p(l, u)) for l in degrees])


def infer_trajectory(minima: Sequence[tuple[float, int]], p_e_mag: float,
                     theta_pe: float) -> list[TrajectoryPoint]:
    """Map interference minima (t_c, order n) to separations 2 n pi / (p_e cos theta_pe)."""
    c = np.cos(theta_pe)
    if abs(c) < 1e-12:
        raise ValueError("grazing emission (cos theta_pe = 0) carries no delay information")
    out = []
    for t_c, n in minima:
        if int(n) != n or n < 1:
            raise ValueError(f"fringe order must be a positive integer, got {n!r}")
        out.append(TrajectoryPoint(float(t_c), 2 * n * np.pi / (p_e_mag * c)))
    return out


def _vertex(t0, t1, t2, y0, y1, y2):
    h0, h2 = t0 - t1, t2 - t1
    d0, d2 = y0 - y1, y2 - y1
    a = (d0 * h2 - d2 * h0) / (h0 * h2 * (h0 - h2))
    if a <= 0:
        return t1
    b = (d0 - a * h0 * h0) / h0
    return t1 + min(max(-b / (2 * a), h0), h2)


def find_minima(trace, first_order: int = 1) -> list[tuple[float, int]]:
    """Local minima of a sampled (t, y) trace, refined by a three-point parabola.

    Orders are assigned consecutively starting at ``first_order``; the phase
    grows monotonically with delay, so each further minimum is one fringe on.
    """
    arr = np.asarray(trace, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("trace must be a sequence of (t, value) pairs")
    if len(arr) < 3:
        raise ValueError("trace needs at least three points")
    t, y = arr[:, 0], arr[:, 1]
    if np.any(np.diff(t) <= 0):
        raise ValueError("trace must be strictly increasing in t")
    found = []
    for i in range(1, len(t) - 1):
        if y[i] < y[i - 1] and y[i] <= y[i + 1]:
            found.append(_vertex(t[i - 1], t[i], t[i + 1], y[i - 1], y[i], y[i + 1]))
    return [(float(tm), first_order + n) for n, tm in enumerate(found)]
