"""Shared parameter sets and random draws for the test suite."""

import numpy as np

from fanoprobe import PulseParams, WavePacketParams, make_constants, vec

K = make_constants()
FIG3_PE = 0.72
FIG3_PN = 14.8


def fig3_pulse(t_c=0.0, e_probe=(0, 0, 1)):
    return PulseParams.from_lab(60.0, 2.4, t_c=t_c, e_probe=e_probe)


def fig3_packet(e_pump=(0, 0, 1)):
    return WavePacketParams(p0=14.8, delta_r=3.0, r0=12.0, e_pump=np.asarray(e_pump, float))


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_draw(rng):
    """One parameter set spanning the figure regimes (60/15 nm, 2.4/0.24 fs)."""
    lam, fwhm, dr = [(60.0, 2.4, 3.0), (15.0, 0.24, 1.0), (60.0, 2.4, 1.0)][rng.integers(3)]
    geom = rng.integers(3)
    z = vec(0, 0, 1)
    if geom == 0:
        e_pump = e_probe = z
    elif geom == 1:
        e_pump, e_probe = z, vec(1, 0, 0)
    else:
        e_pump, e_probe = random_unit(rng), random_unit(rng)
    pe_center = 0.72 if lam == 60.0 else 2.25
    p_e = rng.uniform(0.5, 1.5) * pe_center * random_unit(rng)
    n_dir = e_pump if rng.random() < 0.5 else random_unit(rng)
    p_N = rng.uniform(13.0, 16.5) * n_dir
    t_c = rng.uniform(0.0, 3400.0)
    pulse = PulseParams.from_lab(lam, fwhm, t_c=t_c, e_probe=e_probe)
    wp = WavePacketParams(p0=14.8, delta_r=dr, r0=12.0, e_pump=e_pump)
    return p_e, p_N, pulse, wp
