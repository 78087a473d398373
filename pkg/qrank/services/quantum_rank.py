"""
Quantum Rank Service

Responsibilities:
- Evolve the equal-superposition state for T steps and time-average the
  node probabilities ("quantum rank"), with per-node population variance
- Running-average convergence profile and stabilization step

Records are read off one run after every step; they equal the distributions
of separate runs reset and evolved for each step count.
"""

from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from qrank.config import settings
from qrank.errors import NumericalError, ParameterError
from qrank.schemas.graph import DirectedGraph
from qrank.schemas.results import ConvergenceProfile, QuantumRankResult
from qrank.schemas.walk import WalkOperators
from qrank.services.graph import validate_groups
from qrank.services.walk import build_operators, node_probabilities, step, uniform_initial
from qrank.utils.logging import get_logger

logger = get_logger(__name__)

# An instantaneous distribution further than this from 1 means the evolution broke
NORM_DRIFT_LIMIT = 1e-8
MEAN_CORRECTION_LIMIT = 1e-9


class RunningMoments:
    """
    Welford accumulator for per-node mean and population variance.
    """

    def __init__(self, n: int):
        self.count = 0
        self.mean = np.zeros(n)
        self._m2 = np.zeros(n)

    def push(self, x: np.ndarray):
        self.count += 1
        delta = x - self.mean
        self.mean = self.mean + delta / self.count
        self._m2 = self._m2 + delta * (x - self.mean)

    @property
    def variance(self) -> np.ndarray:
        if self.count == 0:
            return np.zeros_like(self._m2)
        return np.maximum(self._m2 / self.count, 0.0)


def _probability_records(g: DirectedGraph, steps: int, burn_in: int, ops: WalkOperators | None):
    """Yields node probabilities after steps 1..T (after the burn-in)."""
    ops = ops or build_operators(g)
    state = uniform_initial(g.n)

    for _ in range(burn_in):
        state = step(state, ops)

    for t in range(1, steps + 1):
        state = step(state, ops)
        probabilities = node_probabilities(state)

        drift = abs(float(probabilities.sum()) - 1.0)
        if drift > NORM_DRIFT_LIMIT:
            raise NumericalError(
                f"walk norm drifted by {drift:.3e} at step {t}", residual=drift
            )

        yield probabilities


def quantum_rank(
    g: DirectedGraph,
    steps: int | None = None,
    burn_in: int | None = None,
    keep_series: bool = False,
    ops: WalkOperators | None = None,
) -> QuantumRankResult:
    """
    Time-averaged node probabilities over steps 1..T of one deterministic run.
    """
    steps = settings.DEFAULT_STEPS if steps is None else steps
    burn_in = settings.BURN_IN_STEPS if burn_in is None else burn_in

    if steps < 1:
        raise ParameterError(f"steps must be >= 1, got {steps}")
    if burn_in < 0:
        raise ParameterError(f"burn_in must be >= 0, got {burn_in}")

    logger.info(f"[RANK] Quantum walk on {g.n} nodes for {steps} steps (burn-in {burn_in})")

    moments = RunningMoments(g.n)
    series = [] if keep_series else None

    for probabilities in _probability_records(g, steps, burn_in, ops):
        moments.push(probabilities)
        if series is not None:
            series.append(probabilities)

    mean = moments.mean
    total = float(mean.sum())
    correction = abs(total - 1.0)
    if correction > MEAN_CORRECTION_LIMIT:
        raise NumericalError(
            f"time-averaged distribution sums to {total!r}", residual=correction
        )

    return QuantumRankResult(
        steps=steps,
        mean=mean / total,
        variance=moments.variance,
        series=np.array(series) if series is not None else None,
        burn_in=burn_in,
    )


# =========================================================
# CONVERGENCE
# =========================================================

def group_means(values: np.ndarray, groups: Sequence[Sequence[int]]) -> np.ndarray:
    """values[..., N] -> per-group means [..., K]."""
    return np.stack([values[..., list(group)].mean(axis=-1) for group in groups], axis=-1)


def _orderings(running: np.ndarray, tol: float) -> np.ndarray:
    """
    Node order of every row, highest first. Values closer than tol relative
    to the row maximum share a key and keep node-index order.
    """
    keys = running
    if tol > 0:
        scale = np.max(np.abs(running), axis=-1, keepdims=True)
        scale[scale == 0] = 1.0
        keys = np.rint(running / (tol * scale))
    return np.argsort(-keys, axis=-1, kind="stable")


def stabilization_step(running: np.ndarray, window: int, tol: float) -> int | None:
    """
    First step s (1-based) whose ordering is unchanged at every step in [s, s+W].
    """
    steps = running.shape[0]
    if steps - window < 1:
        return None

    orders = _orderings(running, tol)
    unchanged = np.all(orders[1:] == orders[:-1], axis=-1)
    held = sliding_window_view(unchanged, window).all(axis=-1)

    hits = np.flatnonzero(held)
    return int(hits[0]) + 1 if hits.size else None


def convergence_profile(
    g: DirectedGraph,
    steps: int | None = None,
    window: int | None = None,
    groups: Sequence[Sequence[int]] | None = None,
    tie_tolerance: float | None = None,
    burn_in: int | None = None,
    ops: WalkOperators | None = None,
) -> ConvergenceProfile:
    """
    Running mean of the instantaneous probabilities after each step, and the
    stabilization step of its ordering (over group means if groups are given).
    """
    steps = settings.DEFAULT_STEPS if steps is None else steps
    window = settings.DEFAULT_WINDOW if window is None else window
    tie_tolerance = settings.TIE_TOLERANCE if tie_tolerance is None else tie_tolerance
    burn_in = settings.BURN_IN_STEPS if burn_in is None else burn_in

    if window < 1:
        raise ParameterError(f"window must be >= 1, got {window}")
    if steps < window:
        raise ParameterError(f"steps ({steps}) must be >= window ({window})")

    moments = RunningMoments(g.n)
    running = np.empty((steps, g.n))
    for t, probabilities in enumerate(_probability_records(g, steps, burn_in, ops)):
        moments.push(probabilities)
        running[t] = moments.mean

    labels: tuple[str, ...]
    if groups is not None:
        groups = validate_groups(groups, g.n)
        running = group_means(running, groups)
        labels = tuple(f"group_{k}" for k in range(len(groups)))
    else:
        labels = tuple(f"node_{x}" for x in range(g.n))

    stable_at = stabilization_step(running, window, tie_tolerance)
    logger.info(f"[RANK] Convergence over {steps} steps: stabilization step {stable_at}")

    return ConvergenceProfile(
        steps=steps,
        window=window,
        running=running,
        stabilization_step=stable_at,
        labels=labels,
    )
