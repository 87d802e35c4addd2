"""Closed-form qubit inversion for the resonant one-photon regime.

For the qubit initially excited and the field in a coherent state |alpha>,
the inversion is a Poisson-weighted Rabi series in the displaced amplitude
alpha - beta (beta real):

    W(t) = 1/2 exp(-r^2) sum_n r^(2n)/n! {
               2 cos(e_j t) c_{n+1} c_n
             + [z* e^{i e_j t} + z e^{-i e_j t}] (c_{n+2} - c_n) s_{n+1} / sqrt(n+1)
             - [z*^2 e^{i e_j t} + z^2 e^{-i e_j t}] s_{n+2} s_{n+1} / sqrt((n+1)(n+2))
           }

with z = alpha - beta, r = |z|, c_k = cos(g t sqrt(k)), s_k = sin(g t sqrt(k))
and g = beta omega / 2.  The bracketed pairs are conjugate, so W is real.

The factorial ratios printed with the series reduce algebraically:
n!/sqrt(n!(n+1)!) = 1/sqrt(n+1) and n!/sqrt(n!(n+2)!) = 1/sqrt((n+1)(n+2)).
Poisson weights are evaluated in log space so large r cannot overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .dynamics import EvolutionResult, TimeGrid
from .hamiltonians import SystemParams

IMAG_RESIDUE_ATOL = 1e-10


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation control for the Poisson series."""

    tail_epsilon: float = 1e-12
    max_terms: int = 512

    def __post_init__(self):
        if not 0.0 < self.tail_epsilon < 1e-3:
            raise ValueError(f"tail_epsilon must lie in (0, 1e-3), got {self.tail_epsilon}")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")


def effective_mean_photon(alpha: complex, beta: float) -> float:
    """|alpha - beta|^2, the Poisson mean that sets the revival timescale."""
    return float(abs(alpha - beta) ** 2)


def _poisson_weights(r2: float, cfg: SeriesConfig) -> np.ndarray:
    """Log-space Poisson weights w_n = exp(-r2) r2^n / n!, truncated once the
    cumulative mass exceeds 1 - tail_epsilon."""
    if r2 == 0.0:
        return np.ones(1)
    n = np.arange(cfg.max_terms)
    log_w = -r2 + n * np.log(r2) - gammaln(n + 1)
    w = np.exp(log_w)
    mass = np.cumsum(w)
    hits = np.nonzero(mass >= 1.0 - cfg.tail_epsilon)[0]
    if hits.size == 0:
        raise ValueError(
            f"series needs more than max_terms = {cfg.max_terms} terms for "
            f"|alpha - beta|^2 = {r2:.3g} at tail_epsilon = {cfg.tail_epsilon:.1e}"
        )
    return w[: int(hits[0]) + 1]


def analytic_inversion(
    alpha: complex,
    beta: float,
    p: SystemParams,
    grid: TimeGrid,
    cfg: SeriesConfig = SeriesConfig(),
    _displaced_amplitude: complex | None = None,
) -> EvolutionResult:
    """Evaluate the closed-form inversion series on a scaled-time grid.

    ``beta`` must be real and positive (the series is derived under that
    simplification); complex couplings must use the operator paths.
    ``_displaced_amplitude`` overrides z = alpha - beta and exists for
    validation against the operator route, which realises a different
    displacement convention (see README); production callers leave it unset.
    """
    if np.iscomplexobj(beta) and np.imag(beta) != 0.0:
        raise ValueError("analytic inversion requires real beta; use an operator path")
    beta = float(np.real(beta))
    if beta <= 0.0:
        raise ValueError(f"analytic inversion requires beta > 0, got {beta}")
    g = beta * p.omega / 2.0

    z = alpha - beta if _displaced_amplitude is None else _displaced_amplitude
    r2 = abs(z) ** 2
    w = _poisson_weights(r2, cfg)
    n_terms = w.size

    n = np.arange(n_terms)
    inv_sqrt1 = 1.0 / np.sqrt(n + 1.0)
    inv_sqrt2 = 1.0 / np.sqrt((n + 1.0) * (n + 2.0))

    t = grid.times
    # c[k, :] = cos(g t sqrt(k)) for k = 0 .. n_terms + 1, likewise s
    roots = np.sqrt(np.arange(n_terms + 2))
    phase_grid = g * np.outer(roots, t)
    c = np.cos(phase_grid)
    s = np.sin(phase_grid)

    ej_phase = np.exp(1j * p.e_j * t)
    lin = np.conj(z) * ej_phase + z * np.conj(ej_phase)
    quad = np.conj(z) ** 2 * ej_phase + z**2 * np.conj(ej_phase)

    term1 = 2.0 * np.real(ej_phase)[None, :] * c[n + 1, :] * c[n, :]
    term2 = lin[None, :] * (c[n + 2, :] - c[n, :]) * s[n + 1, :] * inv_sqrt1[:, None]
    term3 = -quad[None, :] * s[n + 2, :] * s[n + 1, :] * inv_sqrt2[:, None]
    w_c = 0.5 * (w[:, None] * (term1 + term2 + term3)).sum(axis=0)

    residue = np.max(np.abs(w_c.imag))
    if residue > IMAG_RESIDUE_ATOL:
        raise ValueError(f"inversion series produced imaginary residue {residue:.3e}")
    return EvolutionResult(
        grid=grid,
        sigma_z_trace=w_c.real,
        method="analytic_series",
        n_max=n_terms - 1,
        params=p,
        alpha=alpha,
    )


def standard_jcm_inversion(alpha: complex, grid: TimeGrid) -> np.ndarray:
    """Independent brute-force oracle: textbook resonant one-photon inversion

        W(t) = sum_n p_n cos(2 g t sqrt(n+1)),  p_n Poisson in |alpha|^2,

    for the qubit initially excited.  Used only to cross-check limits of the
    series evaluator.
    """
    r2 = abs(alpha) ** 2
    n = np.arange(int(np.ceil(r2 + 20 * np.sqrt(r2 + 1))) + 20)
    log_w = -r2 + n * np.log(r2) - gammaln(n + 1) if r2 > 0 else None
    w = np.exp(log_w) if log_w is not None else (n == 0).astype(float)
    gt = grid.tau  # tau = g t
    return (w[:, None] * np.cos(2.0 * np.outer(np.sqrt(n + 1.0), gt))).sum(axis=0)
