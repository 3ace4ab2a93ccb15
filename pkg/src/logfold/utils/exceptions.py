"""Custom exceptions for logfold."""

from typing import Optional


class LogFoldError(Exception):
    """Base exception for all logfold errors."""

    pass


class InvalidArgumentError(LogFoldError, ValueError):
    """Raised when an operation receives an argument outside its documented range."""

    pass


class SchemaError(LogFoldError):
    """Raised when a required CSV column is missing."""

    def __init__(self, message: str, column: Optional[str] = None) -> None:
        super().__init__(message)
        self.column = column


class ParseError(LogFoldError):
    """Raised when a single input row cannot be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        super().__init__(message)
        self.line_number = line_number


class EmptyLogError(LogFoldError):
    """Raised when an event log (or its source file) holds no events."""

    pass


class DegenerateNetworkError(LogFoldError):
    """Raised when a social network has fewer than two performers or no weight."""

    pass


class DegenerateNetError(LogFoldError):
    """Raised when process discovery cannot build a net (single activity)."""

    pass


class ModelFormatError(LogFoldError):
    """Raised when a serialized net, edge list or model file is malformed."""

    pass


class ConsistencyError(LogFoldError):
    """Raised when two artifacts disagree (e.g. performer missing from the log)."""

    pass


class SelectionError(LogFoldError):
    """Raised when no prediction point can be selected."""

    pass


class NotApplicableError(LogFoldError):
    """Raised when a fold has no trace to apply to."""

    pass


class ProtectionViolationError(LogFoldError):
    """Raised when a prediction point disappears from a folded log."""

    pass


class PredictorConfigError(LogFoldError):
    """Raised when predictor settings do not fit the training data."""

    pass


class EmptySampleError(LogFoldError):
    """Raised when no trace contains the requested prediction point."""

    pass


class SpecError(LogFoldError):
    """Raised when a synthetic log specification is invalid."""

    pass


class StageError(LogFoldError):
    """Raised by the experiment runner; tags the failing pipeline stage."""

    def __init__(self, stage: str, cause: Exception) -> None:
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause
