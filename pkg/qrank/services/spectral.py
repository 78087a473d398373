"""
Spectral Service

Responsibilities:
- Deterministic SVD of the (weighted) adjacency matrix, A = P · diag(Λ) · Q
- Scattering unitary U = P · e^{iΛ} · Q
- Shift matrix selection: adjacency or Google matrix, laid out with sources
  on the rows (default) or on the columns
- Unitarity checks and debug dumps of the factors

SVD factors are not unique. To make U reproducible:
- singular values are sorted descending (LAPACK order)
- each P column has its largest-magnitude entry (lowest index on ties) made
  real positive; the compensating phase goes into the matching Q row
- zero-singular-value modes also get their Q row's largest entry made
  positive, since their left/right pairing sign is unconstrained
- columns inside a block of equal singular values are sorted by their
  rounded P entries, lexicographically descending
An all-zero matrix short-circuits to P = Q = I.
"""

from pathlib import Path
from typing import Literal, Tuple

import numpy as np
from scipy import linalg

from qrank.config import settings
from qrank.errors import DimensionError, NumericalError
from qrank.schemas.graph import DirectedGraph
from qrank.schemas.walk import SvdTriple
from qrank.services.graph import adjacency_matrix
from qrank.services.pagerank import google_matrix
from qrank.utils.logging import get_logger
from qrank.utils.retry import with_fallbacks

logger = get_logger(__name__)


# ---------------------------------------------------------
# Validation helpers
# ---------------------------------------------------------

def _as_square(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericalError(f"{name} has non-finite entries")
    return m


# ---------------------------------------------------------
# Sign / ordering convention
# ---------------------------------------------------------

def _unit_phase(value: complex) -> complex:
    return value / abs(value)


def _pivot(vector: np.ndarray, decimals: int) -> int:
    # argmax returns the lowest index among equal rounded magnitudes
    return int(np.argmax(np.round(np.abs(vector), decimals)))


def _fix_phases(
    p: np.ndarray, s: np.ndarray, q: np.ndarray, zero_tol: float, decimals: int
):
    for j in range(s.shape[0]):
        k = _pivot(p[:, j], decimals)
        phase = _unit_phase(p[k, j])
        p[:, j] *= np.conj(phase)
        q[j, :] *= phase

        if s[j] <= zero_tol:
            k = _pivot(q[j, :], decimals)
            q[j, :] *= np.conj(_unit_phase(q[j, k]))


def _degenerate_blocks(s: np.ndarray, tol: float) -> list[Tuple[int, int]]:
    blocks = []
    start = 0
    for j in range(1, s.shape[0] + 1):
        if j == s.shape[0] or s[start] - s[j] > tol:
            blocks.append((start, j))
            start = j
    return blocks


def _order_blocks(
    p: np.ndarray, s: np.ndarray, q: np.ndarray, tol: float, decimals: int
) -> Tuple[np.ndarray, np.ndarray]:
    order = np.arange(s.shape[0])

    for start, stop in _degenerate_blocks(s, tol):
        if stop - start < 2:
            continue

        def key(j: int) -> tuple:
            column = np.round(p[:, j], decimals) + 0.0  # drop negative zeros
            return tuple(column.real) + tuple(column.imag)

        members = sorted(range(start, stop), key=key, reverse=True)
        order[start:stop] = members

    return p[:, order], q[order, :]


# ---------------------------------------------------------
# Public API
# ---------------------------------------------------------

def svd(a: np.ndarray, decimals: int | None = None) -> SvdTriple:
    """
    Deterministic SVD, A = P · diag(Λ) · Q (Q is the conjugate transpose of
    the usual right-singular-vector matrix).

    Raises NumericalError if both LAPACK drivers fail to converge.
    """
    decimals = settings.SVD_ROUND_DECIMALS if decimals is None else decimals
    a = _as_square(a, "adjacency matrix").astype(float)
    n = a.shape[0]

    if not a.any():
        eye = np.eye(n, dtype=complex)
        return SvdTriple(p=eye, singular_values=np.zeros(n), q=eye.copy())

    try:
        p, s, q = with_fallbacks(
            [
                ("gesdd", lambda: linalg.svd(a, lapack_driver="gesdd")),
                ("gesvd", lambda: linalg.svd(a, lapack_driver="gesvd")),
            ],
            exceptions=(linalg.LinAlgError,),
        )
    except linalg.LinAlgError as e:
        raise NumericalError(
            f"SVD of {n}x{n} matrix did not converge with gesdd or gesvd: {e}"
        ) from e

    p = p.astype(complex)
    q = q.astype(complex)

    tol = 10.0 ** (-decimals) * max(1.0, float(s[0]))
    _fix_phases(p, s, q, zero_tol=tol, decimals=decimals)
    p, q = _order_blocks(p, s, q, tol=tol, decimals=decimals)

    logger.debug(f"[SVD] {n}x{n}: largest singular value {s[0]:.6g}")

    return SvdTriple(p=p, singular_values=s.astype(float), q=q)


def is_unitary(m: np.ndarray, tol: float | None = None) -> Tuple[bool, float]:
    """
    Returns (‖M·M† − I‖_max <= tol, deviation).
    """
    tol = settings.UNITARY_TOL if tol is None else tol
    m = _as_square(m)
    deviation = float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))
    return deviation <= tol, deviation


def unitary_from_svd(triple: SvdTriple) -> np.ndarray:
    return (triple.p * np.exp(1j * triple.singular_values)) @ triple.q


def scattering_unitary(a: np.ndarray) -> np.ndarray:
    """
    U = P · diag(e^{iλ_k}) · Q, checked unitary within settings.UNITARY_TOL.
    """
    u = unitary_from_svd(svd(a))

    ok, deviation = is_unitary(u)
    if not ok:
        raise NumericalError(
            f"scattering matrix deviates from unitarity by {deviation:.3e}"
        )

    return u


def shift_matrix(
    g: DirectedGraph,
    source: Literal["adjacency", "google"] | None = None,
    p: float | None = None,
    convention: Literal["teleport", "damping"] | None = None,
    orientation: Literal["source-rows", "source-columns"] | None = None,
) -> np.ndarray:
    """
    Matrix whose SVD defines the scattering unitary: the weighted adjacency
    matrix by default, or the Google matrix when source="google".

    Both are built with columns indexing the source node. With
    orientation="source-rows" (the default) the matrix is transposed so
    that row x holds the out-links of x; U then sends the down amplitude
    of a node to its in-neighbours.
    """
    source = source or settings.SHIFT_SOURCE
    orientation = orientation or settings.SHIFT_ORIENTATION

    if source == "adjacency":
        m = adjacency_matrix(g)
    elif source == "google":
        m = google_matrix(
            g,
            settings.PAGERANK_P if p is None else p,
            convention or settings.PAGERANK_CONVENTION,
        )
    else:
        raise ValueError(f"unknown shift source {source!r}")

    if orientation == "source-rows":
        return np.ascontiguousarray(m.T)
    if orientation == "source-columns":
        return m

    raise ValueError(f"unknown shift orientation {orientation!r}")


def dump_factors_csv(triple: SvdTriple, u: np.ndarray, directory: str | Path) -> list[Path]:
    """
    Debug dump: P, Q, U as separate real/imaginary CSVs plus Λ.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    written = []
    np.savetxt(directory / "lambda.csv", triple.singular_values, fmt="%.17g", delimiter=",")
    written.append(directory / "lambda.csv")

    for name, matrix in (("P", triple.p), ("Q", triple.q), ("U", u)):
        for part, values in (("real", matrix.real), ("imag", matrix.imag)):
            path = directory / f"{name}_{part}.csv"
            np.savetxt(path, values, fmt="%.17g", delimiter=",")
            written.append(path)

    logger.info(f"[SVD] Dumped {len(written)} factor files to {directory}")
    return written
