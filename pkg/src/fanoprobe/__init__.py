"""Two-centre interference in pump-probe dissociative ionization of H2+.

Closed-form amplitudes and probabilities for photoionizing a dissociating
H2+ wave packet with a delayed Gaussian probe pulse, in atomic units.
"""

__version__ = "0.1.0"

from .units import (
    PhysicalConstants,
    fwhm_fs_to_tau_au,
    make_constants,
    omega_to_wavelength_nm,
    wavelength_nm_to_omega,
)
from .special import gamma_complex, legendre_p, log_gamma_complex, spherical_bessel
from .core import (
    Parity,
    Probability,
    PulseParams,
    WavePacketParams,
    amplitude_fi,
    atomic_amplitude,
    atomic_phase,
    chi_factor,
    detuning_f,
    electronic_density_profile,
    fixed_nuclei_probability,
    interference_phase_closed_form,
    kinematics_from_measured,
    n2_factor,
    plane_wave_validity,
    probability_expanded,
    shifted_momenta,
    time_factor_a,
    vec,
    wavepacket_amplitude,
)
from .approx import (
    Betas,
    TrajectoryPoint,
    approx_phase,
    approx_probability,
    beta_coefficients,
    find_minima,
    infer_trajectory,
    r_n_vector,
)
from .nonbo import amplitude_nonbo, probability_nonbo_expanded, tilde_detuning_f
