"""
Fallback utility.

Used for:
- Numerical routines with more than one backend (e.g. LAPACK SVD drivers)
- Trying cheap strategies first and reporting every failure at the end
"""

from typing import Callable, Sequence, Tuple, Type, TypeVar

from qrank.utils.logging import get_logger

logger = get_logger(__name__)

T = TypeVar("T")


def with_fallbacks(
    attempts: Sequence[Tuple[str, Callable[[], T]]],
    exceptions: Tuple[Type[Exception], ...] = (Exception,),
) -> T:
    """
    Call each named attempt in order until one succeeds.

    Example:
        u, s, vh = with_fallbacks([
            ("gesdd", lambda: svd(a, lapack_driver="gesdd")),
            ("gesvd", lambda: svd(a, lapack_driver="gesvd")),
        ], exceptions=(LinAlgError,))

    Raises the last exception if every attempt fails.
    """

    last_exception: Exception | None = None

    for attempt, (name, func) in enumerate(attempts, start=1):
        try:
            return func()
        except exceptions as exc:
            last_exception = exc
            logger.warning(
                f"[FALLBACK] Attempt {attempt}/{len(attempts)} ({name}) failed: {exc}"
            )

    if last_exception is None:
        raise ValueError("with_fallbacks needs at least one attempt")

    raise last_exception
