from typing import List, Literal, Optional, Tuple

import numpy as np

from qrank.schemas.base import ArrayModel, FrozenModel


# =====================================================
# Classical baseline
# =====================================================

class PageRankResult(ArrayModel):
    ranks: np.ndarray
    iterations: int
    residual: float


# =====================================================
# Quantum ranks
# =====================================================

class QuantumRankResult(ArrayModel):
    steps: int
    mean: np.ndarray
    variance: np.ndarray
    series: Optional[np.ndarray] = None  # (steps, N) when retained
    burn_in: int = 0


class ConvergenceProfile(ArrayModel):
    steps: int
    window: int
    running: np.ndarray  # (steps, K) running means, K = nodes or groups
    stabilization_step: Optional[int] = None
    labels: Tuple[str, ...] = ()


# =====================================================
# Classical vs quantum comparison
# =====================================================

class NodeComparison(FrozenModel):
    node: int
    classical: float
    quantum_mean: float
    quantum_variance: float


class GroupSummary(FrozenModel):
    group: int
    size: int
    mean: float
    spread: float  # (max - min) / mean inside the group


class GroupComparison(FrozenModel):
    group: int
    size: int
    classical: float
    quantum_mean: float
    quantum_spread: float


class ComparisonReport(FrozenModel):
    rows: List[NodeComparison]
    top_classical: int
    top_quantum: int
    top_node_match: bool
    kendall_tau: float
    hierarchy_violations: List[Tuple[int, int]]
    level: Literal["node", "group"] = "node"
    groups: Optional[List[GroupComparison]] = None
