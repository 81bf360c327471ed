"""
Error types raised by the ballpoly library.

All errors derive from BallPolyError so callers (the management command in
particular) can catch library failures in one place.
"""
from typing import Any, Optional, Sequence


class BallPolyError(Exception):
    """Base class for library errors."""


class DimensionMismatch(BallPolyError, ValueError):
    pass


class EmptyInput(BallPolyError, ValueError):
    pass


class Unsupported(BallPolyError, NotImplementedError):
    """Requested ambient dimension has no exact machinery."""


class NoHemisphere(BallPolyError):
    pass


class NotInHull(BallPolyError):
    pass


class PreconditionError(BallPolyError):
    def __init__(self, message: str, failed: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.failed = list(failed or [])


class OutOfScope(BallPolyError):
    pass


class SizeCapExceeded(BallPolyError):
    pass


class NotSupporting(BallPolyError):
    pass


class NotSeparable(BallPolyError):
    pass


class TheoremViolation(BallPolyError):
    """A proved statement failed numerically. Always an implementation bug."""


class ImplementationAlarm(BallPolyError):
    pass


class BadParameters(BallPolyError, ValueError):
    pass


class OutOfRange(BallPolyError, ValueError):
    pass


class InvalidPair(BallPolyError, ValueError):
    pass


class EmptyIntersection(BallPolyError):
    pass


class NotCoCircular(BallPolyError):
    def __init__(self, message: str, face: Optional[int] = None):
        super().__init__(message)
        self.face = face


class DegenerateConfiguration(BallPolyError):
    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class HypothesisNotMet(BallPolyError):
    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class ConstructionError(BallPolyError):
    def __init__(self, message: str, residuals: Any = None):
        super().__init__(message)
        self.residuals = residuals


class SceneError(BallPolyError, ValueError):
    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        super().__init__(f"{message} ({', '.join(location)})" if location else message)
        self.field = field
        self.line = line
