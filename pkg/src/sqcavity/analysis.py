"""Collapse / revival / super-revival feature extraction from inversion traces.

The carrier oscillations of W(tau) are summarized by a sliding max/min
envelope; revival events are contiguous regions where the envelope width
re-exceeds a threshold after the initial collapse.  A super-revival is
declared when the sequence of revival amplitudes itself dips and recovers:
some later revival stands at least ``SUPER_DEPTH`` above an intermediate
trough that sits that far below an earlier revival.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from .dynamics import EvolutionResult, TimeGrid, evolve_numeric, make_grid
from .hamiltonians import SystemParams, build_full_hamiltonian
from .operators import FockCutoff, _as_cutoff, excited_coherent

DEFAULT_WINDOW_TAU = np.pi / 2
SUPER_DEPTH = 0.1


@dataclass(frozen=True)
class RevivalEvent:
    tau_peak: float
    amplitude: float


@dataclass(frozen=True)
class SuperRevival:
    detected: bool
    envelope_period: float | None = None
    modulation_depth: float = 0.0


@dataclass(frozen=True)
class RevivalReport:
    collapse_tau: float | None
    revival_events: tuple[RevivalEvent, ...]
    super_revival: SuperRevival


def envelope(trace: EvolutionResult, window_tau: float = DEFAULT_WINDOW_TAU):
    """Sliding-window max/min of W over centered windows of width window_tau.

    Returns (tau, upper, lower) arrays of the same length as the grid.
    """
    tau = trace.grid.tau
    if tau.size < 2:
        raise ValueError("trace too short for envelope extraction")
    spacing = float(np.median(np.diff(tau)))
    if window_tau <= spacing:
        raise ValueError(
            f"window_tau = {window_tau:.3g} must exceed the grid spacing {spacing:.3g}"
        )
    w = trace.sigma_z_trace
    half_samples = max(1, int(round(0.5 * window_tau / spacing)))
    size = 2 * half_samples + 1
    upper = maximum_filter1d(w, size=size, mode="nearest")
    lower = minimum_filter1d(w, size=size, mode="nearest")
    return tau, upper, lower


def _quadratic_peak(x: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    """Refine a discrete maximum at index i with a 3-point parabola."""
    if i <= 0 or i >= y.size - 1:
        return float(x[i]), float(y[i])
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom >= 0.0:  # not a proper local maximum, keep the sample
        return float(x[i]), float(y[i])
    shift = float(np.clip(0.5 * (y0 - y2) / denom, -1.0, 1.0))
    h = 0.5 * (x[i + 1] - x[i - 1])
    return float(x[i] + shift * h), float(y1 - 0.25 * (y0 - y2) * shift)


def detect_revivals(
    trace: EvolutionResult,
    collapse_threshold: float = 0.1,
    revival_threshold: float = 0.25,
    window_tau: float = DEFAULT_WINDOW_TAU,
) -> RevivalReport:
    """Locate the first collapse, the revival events and super-revival structure.

    The report is invariant under a global sign flip of W since only the
    envelope width upper - lower enters.
    """
    tau, upper, lower = envelope(trace, window_tau)
    width = upper - lower

    if trace.alpha is not None and trace.params is not None:
        n_eff = abs(trace.alpha - trace.params.beta) ** 2
        expected_revival = 2.0 * np.pi * np.sqrt(n_eff)
        if n_eff > 1.0 and tau[-1] < expected_revival:
            raise ValueError(
                f"trace ends at tau = {tau[-1]:.3g}, before the expected first "
                f"revival near {expected_revival:.3g}"
            )

    below = width < collapse_threshold
    collapse_idx = np.nonzero(below)[0]
    collapse_tau = float(tau[collapse_idx[0]]) if collapse_idx.size else None

    events: list[RevivalEvent] = []
    if collapse_idx.size:
        start = collapse_idx[0]
        above = width[start:] >= revival_threshold
        # contiguous runs of above-threshold envelope width
        edges = np.diff(above.astype(int))
        run_starts = np.nonzero(edges == 1)[0] + 1 + start
        run_ends = np.nonzero(edges == -1)[0] + 1 + start
        if above.size and above[0]:
            run_starts = np.concatenate([[start], run_starts])
        if above.size and above[-1]:
            run_ends = np.concatenate([run_ends, [tau.size]])
        for lo, hi in zip(run_starts, run_ends):
            seg = slice(lo, hi)
            i_max = lo + int(np.argmax(width[seg]))
            t_peak, w_peak = _quadratic_peak(tau, width, i_max)
            events.append(RevivalEvent(tau_peak=t_peak, amplitude=0.5 * w_peak))

    super_rev = _super_revival_from_amplitudes(events)
    return RevivalReport(
        collapse_tau=collapse_tau,
        revival_events=tuple(events),
        super_revival=super_rev,
    )


def _super_revival_from_amplitudes(events: list[RevivalEvent]) -> SuperRevival:
    """Trough-then-recovery search over the revival amplitude sequence."""
    if len(events) < 3:
        return SuperRevival(detected=False)
    amps = np.array([e.amplitude for e in events])
    taus = np.array([e.tau_peak for e in events])
    best_depth = 0.0
    best_pair: tuple[int, int] | None = None
    for j in range(1, len(amps) - 1):
        i = int(np.argmax(amps[:j]))
        k = j + 1 + int(np.argmax(amps[j + 1 :]))
        depth = min(amps[i] - amps[j], amps[k] - amps[j])
        if depth > best_depth:
            best_depth = depth
            best_pair = (i, k)
    detected = best_depth >= SUPER_DEPTH
    if not detected:
        return SuperRevival(detected=False, modulation_depth=float(max(best_depth, 0.0)))
    i, k = best_pair
    return SuperRevival(
        detected=True,
        envelope_period=float(taus[k] - taus[i]),
        modulation_depth=float(np.clip(best_depth, 0.0, 1.0)),
    )


def convergence_study(
    p: SystemParams,
    alpha: complex,
    grid: TimeGrid,
    cutoffs,
) -> list[dict]:
    """Sup-norm W deviation between consecutive Fock cutoffs under the full
    Hamiltonian.  Returns [{'n_max': ..., 'sup_deviation': ...}, ...] with one
    entry per cutoff after the first."""
    cuts = [_as_cutoff(c) for c in cutoffs]
    if len(cuts) < 2:
        raise ValueError("need at least two cutoffs")
    if any(b.n_max < a.n_max for a, b in zip(cuts, cuts[1:])):
        raise ValueError("cutoffs must be non-decreasing")
    prev_w = None
    out = []
    for c in cuts:
        psi0 = excited_coherent(alpha, c, allow_small=True)
        h = build_full_hamiltonian(p, c)
        res = evolve_numeric(h, psi0, grid, method="full_numeric", params=p, alpha=alpha)
        if prev_w is not None:
            out.append(
                {
                    "n_max": c.n_max,
                    "sup_deviation": float(np.max(np.abs(res.sigma_z_trace - prev_w))),
                }
            )
        prev_w = res.sigma_z_trace
    return out
