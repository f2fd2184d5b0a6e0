from __future__ import annotations

from typing import Optional


class HallBasisError(Exception):
    """Base class for every error raised by hallbasis."""


class InvalidTensorError(HallBasisError, ValueError):
    def __init__(self, message: str, index: Optional[int] = None) -> None:
        super().__init__(message)
        self.index = index


class NotOrthogonalError(HallBasisError, ValueError):
    def __init__(self, message: str, deviation: float) -> None:
        super().__init__(message)
        self.deviation = deviation


class ExactArithmeticError(HallBasisError, ZeroDivisionError):
    pass


class UnsupportedDegreeError(HallBasisError, ValueError):
    pass


class WitnessLookupError(HallBasisError, ValueError):
    pass


class TensorFileError(HallBasisError, ValueError):
    """
    Raised when a tensor file cannot be read or parsed.
    `field` names the offending JSON location, e.g. "k[3]".
    """
    def __init__(self, message: str, path: Optional[str] = None, field: Optional[str] = None) -> None:
        super().__init__(message)
        self.path = path
        self.field = field

    def __str__(self) -> str:
        parts = [super().__str__()]
        if self.field:
            parts.append(f"field={self.field}")
        if self.path:
            parts.append(f"path={self.path}")
        return " | ".join(parts)
