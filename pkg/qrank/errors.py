"""
Exception hierarchy.

Input errors subclass ValueError and NumericalError subclasses RuntimeError.
The CLI maps NumericalError to exit code 1 and everything else to 2.
"""


class QRankError(Exception):
    """Base class for all qrank errors."""


class GraphError(QRankError, ValueError):
    """Invalid graph, generator parameters or node index."""


class EdgeListParseError(GraphError):
    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class DimensionError(QRankError, ValueError):
    """Operands of mismatched size."""


class NumericalError(QRankError, RuntimeError):
    """Decomposition, iteration or normalization failure."""

    def __init__(self, message: str, residual: float | None = None):
        self.residual = residual
        super().__init__(message)


class ParameterError(QRankError, ValueError):
    """Invalid non-graph argument (step counts, windows, coin states, variants)."""
