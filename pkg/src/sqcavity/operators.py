"""Dense operator algebra on a truncated Fock space.

Conventions used throughout the package:

- The field space keeps Fock states |0> .. |n_max>, dimension n_max + 1.
  The creation operator maps |n_max> to the zero vector (hard cutoff).
- The qubit basis is ordered (|g>, |e>), so sigma_z = diag(-1, +1).
- Composite (qubit (x) field) states are indexed s*(n_max+1) + n with
  s = 0 for |g>, s = 1 for |e>; ``tensor`` realises this as kron(qubit, field).
- All matrices are dense complex numpy arrays; all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.special import gammaln

HERMITICITY_ATOL = 1e-12


class CutoffError(ValueError):
    """Raised when a Fock cutoff is too small for the requested amplitude."""


def required_n_max(amplitude: float) -> int:
    """Smallest cutoff honouring the sizing rule n_max >= r^2 + 10 r."""
    r = abs(amplitude)
    return int(np.ceil(r * r + 10.0 * r))


@dataclass(frozen=True)
class FockCutoff:
    """Highest retained Fock occupation; the field space has n_max + 1 levels."""

    n_max: int

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def dim(self) -> int:
        return self.n_max + 1

    def check_amplitude(self, amplitude: complex, allow_small: bool = False) -> None:
        """Enforce n_max >= r^2 + 10 r for coherent amplitude magnitude r."""
        need = required_n_max(abs(amplitude))
        if self.n_max < need and not allow_small:
            raise CutoffError(
                f"n_max = {self.n_max} too small for |amplitude| = {abs(amplitude):.3g} "
                f"(need >= {need}; pass allow_small to override)"
            )


def _as_cutoff(cutoff) -> FockCutoff:
    return cutoff if isinstance(cutoff, FockCutoff) else FockCutoff(int(cutoff))


def annihilation(cutoff) -> np.ndarray:
    """Field annihilation operator: A[n-1, n] = sqrt(n)."""
    c = _as_cutoff(cutoff)
    return np.diag(np.sqrt(np.arange(1, c.dim)), 1).astype(complex)


def creation(cutoff) -> np.ndarray:
    """Field creation operator, the conjugate transpose of ``annihilation``."""
    return annihilation(cutoff).conj().T


def number_op(cutoff) -> np.ndarray:
    """Photon number operator diag(0, 1, ..., n_max)."""
    c = _as_cutoff(cutoff)
    return np.diag(np.arange(c.dim)).astype(complex)


def pauli(which: str) -> np.ndarray:
    """Qubit operators in the ordered basis (|g>, |e>).

    'z' -> diag(-1, +1); 'plus' -> |e><g|; 'minus' -> |g><e|; 'x' -> plus + minus.
    """
    if which == "z":
        return np.diag([-1.0, 1.0]).astype(complex)
    if which == "plus":
        return np.array([[0, 0], [1, 0]], dtype=complex)
    if which == "minus":
        return np.array([[0, 1], [0, 0]], dtype=complex)
    if which == "x":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    raise ValueError(f"unknown Pauli label {which!r}")


def qubit_identity() -> np.ndarray:
    return np.eye(2, dtype=complex)


def field_identity(cutoff) -> np.ndarray:
    return np.eye(_as_cutoff(cutoff).dim, dtype=complex)


def tensor(qubit_op: np.ndarray, field_op: np.ndarray) -> np.ndarray:
    """Composite operator with index ordering s*(n_max+1) + n (qubit slowest)."""
    if qubit_op.shape != (2, 2):
        raise ValueError(f"qubit operator must be 2x2, got {qubit_op.shape}")
    if field_op.ndim != 2 or field_op.shape[0] != field_op.shape[1]:
        raise ValueError(f"field operator must be square, got {field_op.shape}")
    return np.kron(qubit_op, field_op)


def assert_hermitian(M: np.ndarray, atol: float = HERMITICITY_ATOL, name: str = "matrix") -> None:
    dev = np.max(np.abs(M - M.conj().T))
    if dev > atol:
        raise ValueError(f"{name} is not Hermitian: max|M - M^+| = {dev:.3e} > {atol:.1e}")


def hermitian_function(M: np.ndarray, f) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix via spectral decomposition.

    Returns V f(Lambda) V^+ where M = V Lambda V^+. ``f`` acts elementwise on
    the real eigenvalues and may return complex values (cos, sin, exp(-i x t)).
    """
    assert_hermitian(M)
    w, v = scipy.linalg.eigh(M)
    return (v * f(w)) @ v.conj().T


def displacement(xi: complex, cutoff) -> np.ndarray:
    """Bare displacement exp(xi A^+ - xi* A) on the truncated field space.

    Scalar phase factors and any half-argument conventions are the caller's
    responsibility.  Unitary to machine precision by construction; the
    displacement *identities* (composition, A -> A + xi) hold only on the
    interior Fock block because of the hard cutoff.
    """
    c = _as_cutoff(cutoff)
    a = annihilation(c)
    generator_h = 1j * (xi * a.conj().T - np.conj(xi) * a)  # Hermitian form
    return hermitian_function(generator_h, lambda w: np.exp(-1j * w))


def fock_state(n: int, cutoff) -> np.ndarray:
    c = _as_cutoff(cutoff)
    if not 0 <= n <= c.n_max:
        raise ValueError(f"Fock index {n} outside [0, {c.n_max}]")
    v = np.zeros(c.dim, dtype=complex)
    v[n] = 1.0
    return v


def coherent_state(alpha: complex, cutoff, allow_small: bool = False) -> np.ndarray:
    """Truncated coherent state, renormalized after the cutoff.

    Amplitudes c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), computed in log
    space, then rescaled to unit norm.  Raises ``CutoffError`` when the
    sizing rule n_max >= |alpha|^2 + 10|alpha| is violated (override with
    ``allow_small``).  The discarded tail mass is available separately via
    ``coherent_tail_mass``.
    """
    c = _as_cutoff(cutoff)
    c.check_amplitude(alpha, allow_small=allow_small)
    n = np.arange(c.dim)
    r = abs(alpha)
    if r == 0.0:
        return fock_state(0, c)
    phase = alpha / r
    log_mag = -0.5 * r * r + n * np.log(r) - 0.5 * gammaln(n + 1)
    amps = np.exp(log_mag) * phase**n
    return amps / np.linalg.norm(amps)


def coherent_tail_mass(alpha: complex, cutoff) -> float:
    """Poisson probability mass discarded by the truncation at n_max."""
    c = _as_cutoff(cutoff)
    n = np.arange(c.dim)
    r2 = abs(alpha) ** 2
    if r2 == 0.0:
        return 0.0
    log_p = -r2 + n * np.log(r2) - gammaln(n + 1)
    return float(max(0.0, 1.0 - np.sum(np.exp(log_p))))


def composite_index(s: int, n: int, cutoff) -> int:
    """Linear index of |s, n> with s = 0 (g) or 1 (e)."""
    c = _as_cutoff(cutoff)
    if s not in (0, 1):
        raise ValueError("qubit index must be 0 (g) or 1 (e)")
    if not 0 <= n <= c.n_max:
        raise ValueError(f"Fock index {n} outside [0, {c.n_max}]")
    return s * c.dim + n


def qubit_field_state(qubit: np.ndarray, field: np.ndarray) -> np.ndarray:
    """Product state |qubit> (x) |field> in composite ordering."""
    if qubit.shape != (2,):
        raise ValueError("qubit state must have 2 amplitudes")
    return np.kron(qubit, field)


def excited_coherent(alpha: complex, cutoff, allow_small: bool = False) -> np.ndarray:
    """|e> (x) |alpha>, the standard initial state for inversion runs."""
    c = _as_cutoff(cutoff)
    e = np.array([0.0, 1.0], dtype=complex)
    return qubit_field_state(e, coherent_state(alpha, c, allow_small=allow_small))


def interior_slice(cutoff, n_keep: int) -> np.ndarray:
    """Composite indices of all |s, n> with n <= n_keep.

    Used to restrict truncation-sensitive assertions (displacement identities,
    interior unitarity) to the Fock levels unaffected by the hard cutoff.
    """
    c = _as_cutoff(cutoff)
    if not 0 <= n_keep <= c.n_max:
        raise ValueError(f"n_keep {n_keep} outside [0, {c.n_max}]")
    base = np.arange(n_keep + 1)
    return np.concatenate([base, base + c.dim])
