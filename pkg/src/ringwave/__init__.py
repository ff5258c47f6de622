"""Wavepacket transport on a tight-binding ring with a tunable hopping phase.

Exact spectral dynamics, transfer fidelity and occupancy observables,
closed-form reference curves (Bessel limit and Gaussian transport
envelopes), a Fourier-free dense RK4 cross-check, and phase/width sweeps.
"""

from .analytic import (
    GaussianApprox,
    atomic_fidelity_limit,
    bessel_j,
    bessel_j_sequence,
    fidelity_envelope,
    gaussian_fidelity,
    gaussian_probability,
    group_velocity,
    peak_time_linear,
    peak_time_theta0,
    probability_envelope,
)
from .observables import (
    FidelitySeries,
    HorizonError,
    PeakResult,
    center_of_mass,
    fidelity,
    fidelity_series,
    first_peak,
    max_fidelity_vs_distance,
    no_wrap_horizon,
    probability_distribution,
    time_grid,
    transfer_amplitude,
)
from .realspace import DenseHamiltonian, build_hamiltonian, evolve_stepper
from .ring import (
    Atomic,
    Gaussian,
    MomentumAmplitudes,
    Preparation,
    RingConfig,
    Square,
    WavePacket,
    dispersion,
    evolve,
    from_momentum,
    half_extent,
    prepare,
    signed_offsets,
    square_form_factor,
    to_momentum,
    translate,
)
from .sweep import SweepResult, SweepRow, SweepSpec, sweep_theta, sweep_width
from .validate import run_validation

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "RingConfig",
    "WavePacket",
    "MomentumAmplitudes",
    "Atomic",
    "Square",
    "Gaussian",
    "Preparation",
    "dispersion",
    "prepare",
    "translate",
    "to_momentum",
    "from_momentum",
    "square_form_factor",
    "evolve",
    "signed_offsets",
    "half_extent",
    "HorizonError",
    "FidelitySeries",
    "PeakResult",
    "probability_distribution",
    "transfer_amplitude",
    "fidelity",
    "no_wrap_horizon",
    "fidelity_series",
    "first_peak",
    "max_fidelity_vs_distance",
    "center_of_mass",
    "time_grid",
    "bessel_j",
    "bessel_j_sequence",
    "atomic_fidelity_limit",
    "GaussianApprox",
    "fidelity_envelope",
    "probability_envelope",
    "gaussian_fidelity",
    "gaussian_probability",
    "peak_time_theta0",
    "peak_time_linear",
    "group_velocity",
    "DenseHamiltonian",
    "build_hamiltonian",
    "evolve_stepper",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "sweep_theta",
    "sweep_width",
    "run_validation",
]
