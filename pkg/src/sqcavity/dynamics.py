"""Time evolution engines.

Two routes to the qubit inversion W(tau) = <sigma_z> are provided:

- ``evolve_numeric``: diagonalize-once spectral propagation under any
  time-independent Hermitian Hamiltonian.  This is the brute-force oracle
  used to validate everything else.
- ``evolve_transformed``: the transformed-picture composition
  psi(t) = T^+(t) U_0T(t) U_I(t) T(0) psi(0), where U_I is the closed-form
  one-photon evolution operator and T is the displacement-built unitary.

Scaled time tau = |g| t is used on all grids, with |g| = |beta| omega / 2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .hamiltonians import SystemParams, resonance_check
from .operators import (
    FockCutoff,
    _as_cutoff,
    annihilation,
    assert_hermitian,
    displacement,
    field_identity,
    hermitian_function,
    pauli,
    qubit_identity,
    tensor,
)

NORM_ATOL = 1e-9
TRACE_BOUND_ATOL = 1e-9


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing scaled times tau = |g| t, starting at 0."""

    tau: np.ndarray
    g_magnitude: float

    def __post_init__(self):
        tau = np.asarray(self.tau, dtype=float)
        object.__setattr__(self, "tau", tau)
        if tau.ndim != 1 or tau.size < 1:
            raise ValueError("tau grid must be a 1-D sequence")
        if tau[0] != 0.0:
            raise ValueError(f"tau grid must start at 0, got {tau[0]}")
        if not np.all(np.isfinite(tau)):
            raise ValueError("tau grid contains non-finite values")
        if tau.size > 1 and not np.all(np.diff(tau) > 0):
            raise ValueError("tau grid must be strictly increasing")
        if self.g_magnitude <= 0:
            raise ValueError(f"g_magnitude must be positive, got {self.g_magnitude}")

    @property
    def times(self) -> np.ndarray:
        """Physical times t = tau / |g|."""
        return self.tau / self.g_magnitude

    def __len__(self) -> int:
        return self.tau.size


def make_grid(tau_max: float, n_steps: int, g_magnitude: float) -> TimeGrid:
    if n_steps < 2:
        raise ValueError(f"n_steps must be >= 2, got {n_steps}")
    if tau_max <= 0:
        raise ValueError(f"tau_max must be positive, got {tau_max}")
    return TimeGrid(np.linspace(0.0, tau_max, n_steps), g_magnitude)


@dataclass(frozen=True)
class EvolutionResult:
    """W(tau) trace with provenance; states retained only on request."""

    grid: TimeGrid
    sigma_z_trace: np.ndarray
    method: str
    n_max: int
    params: SystemParams | None = None
    alpha: complex | None = None
    states: np.ndarray | None = None

    def __post_init__(self):
        w = np.asarray(self.sigma_z_trace, dtype=float)
        object.__setattr__(self, "sigma_z_trace", w)
        if w.size != len(self.grid):
            raise ValueError("sigma_z_trace length does not match the grid")
        if np.max(np.abs(w)) > 1.0 + TRACE_BOUND_ATOL:
            raise ValueError(f"sigma_z trace leaves [-1, 1]: max |W| = {np.max(np.abs(w))}")
        if self.states is not None:
            norms = np.linalg.norm(self.states, axis=1)
            if np.max(np.abs(norms - 1.0)) > NORM_ATOL:
                raise ValueError("retained states are not unit norm")


def expectation_sigma_z(psi: np.ndarray) -> float:
    """<sigma_z (x) I> for a composite state (lower half g, upper half e)."""
    psi = np.asarray(psi)
    if psi.ndim != 1 or psi.size % 2 != 0 or psi.size < 4:
        raise ValueError(f"not a composite state vector: shape {psi.shape}")
    half = psi.size // 2
    p = np.abs(psi) ** 2
    return float(np.sum(p[half:]) - np.sum(p[:half]))


def propagator(H: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H t) for Hermitian H, via spectral decomposition."""
    assert_hermitian(H, name="propagator input")
    return hermitian_function(H, lambda w: np.exp(-1j * w * t))


def evolve_numeric(
    H: np.ndarray,
    psi0: np.ndarray,
    grid: TimeGrid,
    method: str = "full_numeric",
    params: SystemParams | None = None,
    alpha: complex | None = None,
    keep_states: bool = False,
) -> EvolutionResult:
    """Spectral propagation: diagonalize H once, phase-advance per grid point."""
    psi0 = np.asarray(psi0, dtype=complex)
    if H.shape[0] != psi0.size:
        raise ValueError(f"dimension mismatch: H {H.shape}, psi0 {psi0.shape}")
    if abs(np.linalg.norm(psi0) - 1.0) > NORM_ATOL:
        raise ValueError("psi0 must be unit norm")
    assert_hermitian(H, name="Hamiltonian")
    w, v = scipy.linalg.eigh(H)
    coeffs = v.conj().T @ psi0
    times = grid.times
    # states in the computational basis, one row per grid point
    phases = np.exp(-1j * np.outer(times, w))
    psi_t = (phases * coeffs) @ v.T
    half = psi0.size // 2
    p = np.abs(psi_t) ** 2
    trace = np.sum(p[:, half:], axis=1) - np.sum(p[:, :half], axis=1)
    n_max = half - 1
    return EvolutionResult(
        grid=grid,
        sigma_z_trace=trace,
        method=method,
        n_max=n_max,
        params=params,
        alpha=alpha,
        states=psi_t if keep_states else None,
    )


def jcm_evolution_operator(p: SystemParams, t: float, cutoff) -> np.ndarray:
    """Closed-form one-photon evolution operator at scaled coupling |g|:

        U_I = 1/2 (C' + C) I + 1/2 (C' - C) sigma_z
              + (beta/|beta|) S' A sigma_+ - (beta*/|beta|) A^+ S' sigma_-,

    with C' = cos(|g| t sqrt(A A^+)), C = cos(|g| t sqrt(A^+ A)) and
    S' = sin(|g| t sqrt(A A^+)) / sqrt(A A^+), all evaluated spectrally.
    Equals exp(-i H t) for the one-photon Hamiltonian on the same cutoff.
    """
    if abs(p.beta) == 0:
        raise ValueError("beta = 0: one-photon phase beta/|beta| undefined")
    c = _as_cutoff(cutoff)
    a = annihilation(c)
    aad = a @ a.conj().T  # diag(1..n_max, 0) after truncation
    ada = a.conj().T @ a  # diag(0..n_max)
    g_abs = p.g_magnitude
    gt = g_abs * t

    def cos_sqrt(w):
        return np.cos(gt * np.sqrt(np.clip(w, 0.0, None)))

    def sinc_sqrt(w):
        root = np.sqrt(np.clip(w, 0.0, None))
        return gt * np.sinc(gt * root / np.pi)  # sin(gt sqrt(w))/sqrt(w)

    c_up = hermitian_function(aad, cos_sqrt)
    c_dn = hermitian_function(ada, cos_sqrt)
    s_up = hermitian_function(aad, sinc_sqrt)
    phase = p.beta / abs(p.beta)
    u = (
        tensor(qubit_identity(), 0.5 * (c_up + c_dn))
        + tensor(pauli("z"), 0.5 * (c_up - c_dn))
        + phase * tensor(pauli("plus"), s_up @ a)
        - np.conj(phase) * tensor(pauli("minus"), a.conj().T @ s_up)
    )
    return u


def transform_xi(p: SystemParams, t: float) -> complex:
    """Displacement argument xi(t) = i beta* exp(i omega t)."""
    return 1j * np.conj(p.beta) * np.exp(1j * p.omega * t)


def transform_T(p: SystemParams, t: float, cutoff) -> np.ndarray:
    """Linearizing unitary

        T = 1/sqrt(2) { -1/2 (D^+ - D) I - 1/2 (D^+ + D) sigma_z
                        + D sigma_+ + D^+ sigma_- },

    with D = exp(i e_z t) exp[ (xi A^+ - xi* A) / 2 ] exp(i gamma / 2) and
    xi(t) = i beta* exp(i omega t).  Exactly unitary for any xi because the
    half displacement is built spectrally.
    """
    c = _as_cutoff(cutoff)
    xi = transform_xi(p, t)
    d = np.exp(1j * p.e_z * t) * np.exp(0.5j * p.gamma) * displacement(xi / 2.0, c)
    dd = d.conj().T
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    return inv_sqrt2 * (
        tensor(qubit_identity(), -0.5 * (dd - d))
        + tensor(pauli("z"), -0.5 * (dd + d))
        + tensor(pauli("plus"), d)
        + tensor(pauli("minus"), dd)
    )


def _u0t_phases(p: SystemParams, t: float, dim_field: int) -> np.ndarray:
    """Diagonal of U_0T = exp(-i (e_j/2) sigma_z t) on the composite space."""
    half = np.exp(-0.5j * p.e_j * t)
    return np.concatenate(
        [np.full(dim_field, np.conj(half)), np.full(dim_field, half)]
    )


def evolve_transformed(
    p: SystemParams,
    psi0: np.ndarray,
    grid: TimeGrid,
    cutoff,
    alpha: complex | None = None,
    keep_states: bool = False,
) -> EvolutionResult:
    """Transformed-picture evolution psi(t) = T^+(t) U_0T(t) U_I(t) T(0) psi(0).

    Records <sigma_z> per grid point.  Requires beta != 0; warns when the
    one-photon resonance condition does not hold (the reduction to U_I is
    then uncontrolled).
    """
    if abs(p.beta) == 0:
        raise ValueError("beta = 0: use the plain numeric path instead")
    rep = resonance_check(p, "one_photon")
    if not rep.satisfied:
        warnings.warn(
            f"one-photon resonance not satisfied (detuning {rep.detuning:.3g}); "
            "transformed evolution is outside its validated regime",
            stacklevel=2,
        )
    c = _as_cutoff(cutoff)
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.size != 2 * c.dim:
        raise ValueError(f"psi0 dimension {psi0.size} does not match cutoff {c.n_max}")
    if abs(np.linalg.norm(psi0) - 1.0) > NORM_ATOL:
        raise ValueError("psi0 must be unit norm")

    phi0 = transform_T(p, 0.0, c) @ psi0
    times = grid.times
    trace = np.empty(times.size)
    states = np.empty((times.size, psi0.size), dtype=complex) if keep_states else None
    for k, t in enumerate(times):
        chi = jcm_evolution_operator(p, t, c) @ phi0
        chi *= _u0t_phases(p, t, c.dim)
        psi_t = transform_T(p, t, c).conj().T @ chi
        trace[k] = expectation_sigma_z(psi_t)
        if states is not None:
            states[k] = psi_t
    return EvolutionResult(
        grid=grid,
        sigma_z_trace=trace,
        method="transformed_analytic",
        n_max=c.n_max,
        params=p,
        alpha=alpha,
        states=states,
    )
