"""Charge qubit in a microwave cavity: dense-matrix dynamics and revival analysis."""

from .analysis import RevivalReport, convergence_study, detect_revivals, envelope
from .dynamics import (
    EvolutionResult,
    TimeGrid,
    evolve_numeric,
    evolve_transformed,
    expectation_sigma_z,
    jcm_evolution_operator,
    make_grid,
    propagator,
    transform_T,
)
from .hamiltonians import (
    CircuitParams,
    ResonanceReport,
    SystemParams,
    build_full_hamiltonian,
    build_jcm_hamiltonian,
    build_two_photon_hamiltonian,
    derive_system_params,
    resonance_check,
)
from .inversion import SeriesConfig, analytic_inversion, effective_mean_photon
from .operators import (
    CutoffError,
    FockCutoff,
    annihilation,
    coherent_state,
    coherent_tail_mass,
    creation,
    displacement,
    excited_coherent,
    fock_state,
    hermitian_function,
    number_op,
    pauli,
    required_n_max,
    tensor,
)

__all__ = [
    "CircuitParams",
    "CutoffError",
    "EvolutionResult",
    "FockCutoff",
    "ResonanceReport",
    "RevivalReport",
    "SeriesConfig",
    "SystemParams",
    "TimeGrid",
    "analytic_inversion",
    "annihilation",
    "build_full_hamiltonian",
    "build_jcm_hamiltonian",
    "build_two_photon_hamiltonian",
    "coherent_state",
    "coherent_tail_mass",
    "convergence_study",
    "creation",
    "derive_system_params",
    "detect_revivals",
    "displacement",
    "effective_mean_photon",
    "envelope",
    "evolve_numeric",
    "evolve_transformed",
    "excited_coherent",
    "expectation_sigma_z",
    "fock_state",
    "hermitian_function",
    "jcm_evolution_operator",
    "make_grid",
    "number_op",
    "pauli",
    "propagator",
    "required_n_max",
    "resonance_check",
    "tensor",
    "transform_T",
]

__version__ = "0.1.0"
