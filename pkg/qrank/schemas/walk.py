from typing import Any

import numpy as np
from pydantic import model_validator

from qrank.schemas.base import ArrayModel


# =====================================================
# SVD factors: A = P · diag(singular_values) · Q
# =====================================================

class SvdTriple(ArrayModel):
    p: np.ndarray
    singular_values: np.ndarray
    q: np.ndarray

    @model_validator(mode="after")
    def _check_shapes(self) -> Any:
        n = self.singular_values.shape[0]
        if self.p.shape != (n, n) or self.q.shape != (n, n):
            raise ValueError(
                f"SVD factor shapes {self.p.shape}, {self.q.shape} do not match {n} singular values"
            )
        return self

    @property
    def n(self) -> int:
        return int(self.singular_values.shape[0])


# =====================================================
# Walk state: amplitudes on |up> and |down> per node
# =====================================================

class WalkState(ArrayModel):
    """
    Normalization is not enforced here so that linear combinations of
    states can be formed; uniform_initial and step keep the norm at 1.
    """

    up: np.ndarray
    down: np.ndarray

    @model_validator(mode="after")
    def _check_shapes(self) -> Any:
        if self.up.ndim != 1 or self.up.shape != self.down.shape:
            raise ValueError(
                f"up/down amplitude shapes differ: {self.up.shape} vs {self.down.shape}"
            )
        return self

    @property
    def n(self) -> int:
        return int(self.up.shape[0])

    def to_vector(self) -> np.ndarray:
        """coin ⊗ position ordering: all up amplitudes, then all down."""
        return np.concatenate([self.up, self.down])

    @classmethod
    def from_vector(cls, vector: np.ndarray) -> "WalkState":
        vector = np.asarray(vector, dtype=complex)
        if vector.ndim != 1 or vector.shape[0] % 2:
            raise ValueError(f"expected an even-length vector, got shape {vector.shape}")
        half = vector.shape[0] // 2
        return cls(up=vector[:half].copy(), down=vector[half:].copy())


# =====================================================
# Walk operators built from one graph
# =====================================================

class WalkOperators(ArrayModel):
    coin_blocks: np.ndarray  # (N, 2, 2) real orthogonal
    scatter: np.ndarray  # (N, N) unitary
    alpha: np.ndarray
    beta: np.ndarray

    @model_validator(mode="after")
    def _check_shapes(self) -> Any:
        n = self.alpha.shape[0]
        if self.coin_blocks.shape != (n, 2, 2):
            raise ValueError(f"coin blocks must have shape ({n}, 2, 2)")
        if self.scatter.shape != (n, n):
            raise ValueError(f"scatter must have shape ({n}, {n})")
        if self.beta.shape != (n,):
            raise ValueError(f"beta must have shape ({n},)")
        return self

    @property
    def n(self) -> int:
        return int(self.alpha.shape[0])


# =====================================================
# Reference 1D walks
# =====================================================

class PositionDistribution(ArrayModel):
    positions: np.ndarray
    probabilities: np.ndarray

    def probability_at(self, x: int) -> float:
        hits = np.nonzero(self.positions == x)[0]
        return float(self.probabilities[hits[0]]) if hits.size else 0.0

    @property
    def mean(self) -> float:
        return float(np.dot(self.positions, self.probabilities))

    @property
    def std(self) -> float:
        mu = self.mean
        return float(np.sqrt(np.dot((self.positions - mu) ** 2, self.probabilities)))
