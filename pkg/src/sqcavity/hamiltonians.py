"""Hamiltonian builders for the charge qubit coupled to a single cavity mode.

All energies and angular frequencies share one unit (hbar = 1); the qubit
basis and composite index ordering follow ``operators``.  Builders return
dense Hermitian complex matrices on the composite space.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .operators import (
    FockCutoff,
    _as_cutoff,
    annihilation,
    assert_hermitian,
    field_identity,
    hermitian_function,
    number_op,
    pauli,
    qubit_identity,
    tensor,
)

RESONANCE_RTOL = 1e-9
GAMMA_RESONANT = np.pi / 4


@dataclass(frozen=True)
class CircuitParams:
    """Raw circuit quantities: charging energy, gate charge, Josephson energy,
    classical-flux ratio Phi_c/Phi_0 and the quantized-flux coupling beta."""

    e_ch: float
    n_g: float
    e_j: float
    phi_ratio: float
    beta: complex

    def __post_init__(self):
        if self.e_ch <= 0:
            raise ValueError(f"e_ch must be positive, got {self.e_ch}")
        if self.e_j <= 0:
            raise ValueError(f"e_j must be positive, got {self.e_j}")
        if not 0.0 <= self.n_g <= 1.0:
            raise ValueError(f"n_g must lie in [0, 1], got {self.n_g}")


@dataclass(frozen=True)
class SystemParams:
    """Model parameters of the cavity + qubit Hamiltonian (hbar = 1)."""

    omega: float
    e_z: float
    e_j: float
    gamma: float
    beta: complex

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.e_j <= 0:
            raise ValueError(f"e_j must be positive, got {self.e_j}")

    @property
    def g_magnitude(self) -> float:
        """Effective one-photon coupling |g| = |beta| omega / 2."""
        return abs(self.beta) * self.omega / 2.0

    @property
    def g_coupling(self) -> complex:
        """Complex coupling g = beta omega / 2 (carries the phase of beta)."""
        return self.beta * self.omega / 2.0


def derive_system_params(c: CircuitParams) -> SystemParams:
    """Map circuit quantities to model parameters.

    omega = 4 e_ch, e_z = -2 e_ch (1 - 2 n_g), gamma = pi * phi_ratio;
    e_j and beta carry over unchanged.
    """
    return SystemParams(
        omega=4.0 * c.e_ch,
        e_z=-2.0 * c.e_ch * (1.0 - 2.0 * c.n_g),
        e_j=c.e_j,
        gamma=np.pi * c.phi_ratio,
        beta=c.beta,
    )


@dataclass(frozen=True)
class ResonanceReport:
    satisfied: bool
    detuning: float
    gamma_offset: float


def resonance_check(p: SystemParams, case: str) -> ResonanceReport:
    """Check the resonance conditions for the one- or two-photon regime.

    detuning = omega - e_j (one_photon) or 2 omega - e_j (two_photon);
    gamma_offset = gamma - pi/4 wrapped to (-pi/2, pi/2].  Satisfied iff both
    vanish to 1e-9 relative (detuning against max(omega, e_j), offset
    against pi/4).
    """
    if case == "one_photon":
        detuning = p.omega - p.e_j
    elif case == "two_photon":
        detuning = 2.0 * p.omega - p.e_j
    else:
        raise ValueError(f"unknown resonance case {case!r}")
    offset = p.gamma - GAMMA_RESONANT
    offset = offset - np.pi * np.round(offset / np.pi)  # wrap to (-pi/2, pi/2]
    if offset <= -np.pi / 2:
        offset += np.pi
    ok = abs(detuning) <= RESONANCE_RTOL * max(p.omega, p.e_j) and abs(
        offset
    ) <= RESONANCE_RTOL * GAMMA_RESONANT
    return ResonanceReport(satisfied=bool(ok), detuning=float(detuning), gamma_offset=float(offset))


def build_full_hamiltonian(p: SystemParams, cutoff) -> np.ndarray:
    """Full nonlinear Hamiltonian

        H = omega a^+ a + e_z sigma_z - e_j sigma_x cos(gamma I + beta a + beta* a^+),

    with the cosine evaluated exactly by spectral decomposition (the argument
    is Hermitian for any complex beta).
    """
    c = _as_cutoff(cutoff)
    a = annihilation(c)
    arg = p.gamma * field_identity(c) + p.beta * a + np.conj(p.beta) * a.conj().T
    cos_arg = hermitian_function(arg, np.cos)
    h = (
        p.omega * tensor(qubit_identity(), number_op(c))
        + p.e_z * tensor(pauli("z"), field_identity(c))
        - p.e_j * tensor(pauli("x"), cos_arg)
    )
    assert_hermitian(h, name="full Hamiltonian")
    return h


def build_jcm_hamiltonian(p: SystemParams, cutoff) -> np.ndarray:
    """One-photon exchange Hamiltonian of the resonant transformed picture:

        H = i g (sigma_+ (x) A) - i g* (sigma_- (x) A^+),   g = beta omega / 2.

    Valid as the reduced model at omega = e_j, gamma = pi/4; off resonance a
    warning is emitted but the matrix is still built.
    """
    rep = resonance_check(p, "one_photon")
    if not rep.satisfied:
        warnings.warn(
            f"one-photon resonance not satisfied (detuning {rep.detuning:.3g}, "
            f"gamma offset {rep.gamma_offset:.3g})",
            stacklevel=2,
        )
    c = _as_cutoff(cutoff)
    a = annihilation(c)
    g = p.g_coupling
    h = 1j * g * tensor(pauli("plus"), a) - 1j * np.conj(g) * tensor(pauli("minus"), a.conj().T)
    assert_hermitian(h, name="one-photon Hamiltonian")
    return h


def build_two_photon_hamiltonian(p: SystemParams, cutoff) -> np.ndarray:
    """Two-photon exchange Hamiltonian (resonance 2 omega = e_j):

        H = i (e_j/2) beta*^2 (sigma_- (x) A^+^2) - i (e_j/2) beta^2 (sigma_+ (x) A^2).

    Couples |e, n> <-> |g, n+2> with magnitude (e_j/2)|beta|^2 sqrt((n+1)(n+2))
    and conserves sigma_z + a^+ a.  The source expression carries sigma_+ in
    both terms and is not Hermitian as printed; this is the hermitized,
    excitation-conserving reading.  Warns when |beta|^4 >= 0.1, outside the
    regime where two-photon terms dominate.
    """
    if abs(p.beta) ** 4 >= 0.1:
        warnings.warn(
            f"|beta|^4 = {abs(p.beta) ** 4:.3g} is not small; two-photon reduction dubious",
            stacklevel=2,
        )
    c = _as_cutoff(cutoff)
    a = annihilation(c)
    a2 = a @ a
    coeff = 0.5j * p.e_j
    h = coeff * np.conj(p.beta) ** 2 * tensor(pauli("minus"), a2.conj().T) - coeff * p.beta**2 * tensor(
        pauli("plus"), a2
    )
    assert_hermitian(h, name="two-photon Hamiltonian")
    return h
