"""
Directed Quantum Walk Service

Responsibilities:
- Build the node-dependent coin and the scattering shift for a graph
- Evolve a walk state: step = shift ∘ coin
- Measure node probabilities
- Reference 1D walks (two-way and one-way line) used for validation

State layout: for node x, (up[x], down[x]) are the amplitudes on |↑⟩⊗|x⟩
and |↓⟩⊗|x⟩. The coin mixes the pair at each node; the shift leaves the up
sector in place and applies U to the down sector.
"""

from typing import Iterator, Literal

import numpy as np

from qrank.errors import DimensionError, ParameterError
from qrank.schemas.graph import DirectedGraph
from qrank.schemas.walk import PositionDistribution, WalkOperators, WalkState
from qrank.services.graph import degree_arrays
from qrank.services.spectral import scattering_unitary, shift_matrix
from qrank.utils.logging import get_logger

logger = get_logger(__name__)


# =========================================================
# OPERATORS
# =========================================================

def coin_block(alpha: float | np.ndarray) -> np.ndarray:
    """
    [[√(1/(α+1)),  √(α/(α+1))],
     [√(α/(α+1)), −√(1/(α+1))]]

    Vectorized over α; returns shape (..., 2, 2).
    """
    alpha = np.asarray(alpha, dtype=float)
    c = np.sqrt(1.0 / (alpha + 1.0))
    s = np.sqrt(alpha / (alpha + 1.0))
    return np.stack(
        [np.stack([c, s], axis=-1), np.stack([s, -c], axis=-1)],
        axis=-2,
    )


def mixing_weights(g: DirectedGraph) -> tuple[np.ndarray, np.ndarray]:
    """
    α_x = in/(in+out), β_x = out/(in+out) on weighted degrees.
    Isolated nodes get α = β = 1/2.
    """
    in_weight, out_weight = degree_arrays(g)
    total = in_weight + out_weight
    isolated = total == 0

    alpha = np.divide(in_weight, total, out=np.full(g.n, 0.5), where=~isolated)
    beta = np.divide(out_weight, total, out=np.full(g.n, 0.5), where=~isolated)
    return alpha, beta


def build_operators(
    g: DirectedGraph,
    shift_source: Literal["adjacency", "google"] | None = None,
    p: float | None = None,
    convention: Literal["teleport", "damping"] | None = None,
    orientation: Literal["source-rows", "source-columns"] | None = None,
) -> WalkOperators:
    alpha, beta = mixing_weights(g)
    scatter = scattering_unitary(shift_matrix(g, shift_source, p, convention, orientation))

    logger.debug(f"[WALK] Built operators for {g.n} nodes, {g.edge_count} edges")

    return WalkOperators(
        coin_blocks=coin_block(alpha),
        scatter=scatter,
        alpha=alpha,
        beta=beta,
    )


# =========================================================
# STATES
# =========================================================

def uniform_initial(n: int) -> WalkState:
    """Equal superposition (|↑⟩+|↓⟩)/√2 ⊗ Σ_x |x⟩/√N."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")

    amplitude = 1.0 / np.sqrt(2.0 * n)
    return WalkState(
        up=np.full(n, amplitude, dtype=complex),
        down=np.full(n, amplitude, dtype=complex),
    )


def state_norm(s: WalkState) -> float:
    """Squared norm Σ |up|² + |down|²."""
    return float(np.sum(np.abs(s.up) ** 2) + np.sum(np.abs(s.down) ** 2))


def node_probabilities(s: WalkState) -> np.ndarray:
    return np.abs(s.up) ** 2 + np.abs(s.down) ** 2


# =========================================================
# EVOLUTION
# =========================================================

def _check_dims(s: WalkState, ops: WalkOperators):
    if s.n != ops.n:
        raise DimensionError(f"state has {s.n} nodes, operators have {ops.n}")


def apply_coin(s: WalkState, ops: WalkOperators) -> WalkState:
    _check_dims(s, ops)
    c = ops.coin_blocks
    return WalkState(
        up=c[:, 0, 0] * s.up + c[:, 0, 1] * s.down,
        down=c[:, 1, 0] * s.up + c[:, 1, 1] * s.down,
    )


def apply_shift(s: WalkState, ops: WalkOperators) -> WalkState:
    _check_dims(s, ops)
    return WalkState(up=s.up, down=ops.scatter @ s.down)


def step(s: WalkState, ops: WalkOperators) -> WalkState:
    return apply_shift(apply_coin(s, ops), ops)


def evolve(s: WalkState, ops: WalkOperators, steps: int) -> Iterator[WalkState]:
    """Yields the state after each of `steps` steps."""
    if steps < 0:
        raise ParameterError(f"steps must be >= 0, got {steps}")
    for _ in range(steps):
        s = step(s, ops)
        yield s


# =========================================================
# REFERENCE 1D WALKS
# =========================================================

def _check_coin_state(alpha0: complex, beta0: complex):
    norm = abs(alpha0) ** 2 + abs(beta0) ** 2
    if abs(norm - 1.0) > 1e-12:
        raise ParameterError(f"initial coin state has squared norm {norm}, expected 1")


def _rotate(up: np.ndarray, down: np.ndarray, theta: float) -> tuple[np.ndarray, np.ndarray]:
    c, s = np.cos(theta), np.sin(theta)
    return c * up - 1j * s * down, -1j * s * up + c * down


def reference_line_walk(
    steps: int, theta: float, alpha0: complex, beta0: complex
) -> PositionDistribution:
    """
    Two-way walk on Z with coin [[cos θ, −i sin θ], [−i sin θ, cos θ]];
    |↑⟩ moves to x−1 and |↓⟩ to x+1. Starts at x = 0.
    """
    if steps < 0:
        raise ParameterError(f"steps must be >= 0, got {steps}")
    _check_coin_state(alpha0, beta0)

    size = 2 * steps + 1
    up = np.zeros(size, dtype=complex)
    down = np.zeros(size, dtype=complex)
    up[steps], down[steps] = alpha0, beta0

    for _ in range(steps):
        up, down = _rotate(up, down, theta)
        up = np.concatenate([up[1:], [0.0]])
        down = np.concatenate([[0.0], down[:-1]])

    return PositionDistribution(
        positions=np.arange(-steps, steps + 1),
        probabilities=np.abs(up) ** 2 + np.abs(down) ** 2,
    )


def reference_directed_line_walk(
    steps: int,
    theta: float,
    alpha0: complex,
    beta0: complex,
    variant: Literal["up", "down"] = "up",
) -> PositionDistribution:
    """
    One-way walk: the `variant` coin component moves to x+1, the other stays.
    Support after t steps lies in 0..t.
    """
    if variant not in ("up", "down"):
        raise ParameterError(f"variant must be 'up' or 'down', got {variant!r}")
    if steps < 0:
        raise ParameterError(f"steps must be >= 0, got {steps}")
    _check_coin_state(alpha0, beta0)

    size = steps + 1
    up = np.zeros(size, dtype=complex)
    down = np.zeros(size, dtype=complex)
    up[0], down[0] = alpha0, beta0

    for _ in range(steps):
        up, down = _rotate(up, down, theta)
        if variant == "up":
            up = np.concatenate([[0.0], up[:-1]])
        else:
            down = np.concatenate([[0.0], down[:-1]])

    return PositionDistribution(
        positions=np.arange(0, steps + 1),
        probabilities=np.abs(up) ** 2 + np.abs(down) ** 2,
    )
