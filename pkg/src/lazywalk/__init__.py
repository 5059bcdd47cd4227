"""Three-state (lazy) quantum walk on the line: coin reduced state, its long-time
limit, and the entanglement entropy and temperature of that limit."""

__version__ = "0.1.0"

from .asymptotics import (
    AsymptoticResult,
    asymptotic_bloch_norm,
    asymptotic_coin_density,
    asymptotic_result,
    localization_probability,
)
from .observables import (
    GELL_MANN,
    Gcp,
    Interference,
    InvalidDensityError,
    bloch_norm,
    bloch_vector,
    coin_density,
    density_from_bloch,
    gcp,
    gcp_step,
    interference_terms,
    position_distribution,
)
from .thermo import (
    DegenerateSpectrumError,
    Spectrum3,
    ThermoDomainError,
    ThermoReport,
    hermitian3_eigenvalues,
    reconstruct_spectrum,
    temperature_per_energy_gap,
    temperature_per_mean_energy,
    thermo_identity_residual,
    thermo_report,
    von_neumann_entropy,
)
from .walk import GROVER, ChiralityState, WalkState, evolve, grover_coin, make_initial_state, step
