"""
Classical PageRank Service

Responsibilities:
- Google matrix from the column-normalized link matrix
- Power-method PageRank starting from the uniform vector
- Dense eigenvector oracle used to validate the power method

Two conventions for the damping parameter p:
- "teleport": G = (1 - p) · L + (p / N) · B
- "damping":  G = p · L + ((1 - p) / N) · B
L is the adjacency matrix with every nonzero column scaled to sum 1 and
dangling (zero) columns replaced by 1/N; B is the all-ones matrix.
"""

from typing import Literal

import numpy as np
from scipy import linalg

from qrank.config import settings
from qrank.errors import NumericalError, ParameterError
from qrank.schemas.graph import DirectedGraph
from qrank.schemas.results import PageRankResult
from qrank.services.graph import adjacency_matrix
from qrank.utils.logging import get_logger

logger = get_logger(__name__)

Convention = Literal["teleport", "damping"]


def link_matrix(g: DirectedGraph) -> np.ndarray:
    a = adjacency_matrix(g)
    out_weight = a.sum(axis=0)
    dangling = out_weight == 0

    link = np.divide(a, out_weight, out=np.zeros_like(a), where=~dangling)
    link[:, dangling] = 1.0 / g.n
    return link


def google_matrix(g: DirectedGraph, p: float, convention: Convention = "teleport") -> np.ndarray:
    """
    Column-stochastic Google matrix.
    """
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p must lie in [0, 1], got {p}")

    if convention == "teleport":
        link_share, teleport = 1.0 - p, p
    elif convention == "damping":
        link_share, teleport = p, 1.0 - p
    else:
        raise ParameterError(f"unknown PageRank convention {convention!r}")

    return link_share * link_matrix(g) + teleport / g.n


def pagerank(
    g: DirectedGraph,
    p: float | None = None,
    tol: float | None = None,
    max_iter: int | None = None,
    convention: Convention | None = None,
) -> PageRankResult:
    """
    Power method V <- G·V from V = 1/N until ‖V_{k+1} − V_k‖₁ <= tol.

    Raises NumericalError (carrying the last residual) if max_iter is reached.
    """
    p = settings.PAGERANK_P if p is None else p
    tol = settings.PAGERANK_TOL if tol is None else tol
    max_iter = settings.PAGERANK_MAX_ITER if max_iter is None else max_iter
    convention = convention or settings.PAGERANK_CONVENTION

    if max_iter < 1:
        raise ParameterError(f"max_iter must be >= 1, got {max_iter}")

    G = google_matrix(g, p, convention)
    v = np.full(g.n, 1.0 / g.n)
    change = float("inf")

    for k in range(1, max_iter + 1):
        v_next = G @ v
        v_next /= v_next.sum()
        change = float(np.abs(v_next - v).sum())
        v = v_next

        if change <= tol:
            residual = float(np.abs(G @ v - v).sum())
            logger.debug(
                f"[PAGERANK] Converged after {k} iterations (residual {residual:.3e})"
            )
            return PageRankResult(ranks=v, iterations=k, residual=residual)

    raise NumericalError(
        f"PageRank did not converge in {max_iter} iterations "
        f"(last change {change:.3e}, tol {tol:.1e})",
        residual=change,
    )


def dominant_eigenvector(G: np.ndarray) -> np.ndarray:
    """
    Eigenvector of the eigenvalue closest to 1, normalized to sum 1.
    """
    values, vectors = linalg.eig(G)
    k = int(np.argmin(np.abs(values - 1.0)))
    v = np.abs(vectors[:, k].real)
    return v / v.sum()
