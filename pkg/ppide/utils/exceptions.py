"""All custom exception classes for ppide.

Hierarchy
---------
PpideError (base)
├── ParameterError(name, value, reason)
├── DomainError(quantity, reason)
├── GridError(reason)
├── BandedError(reason)
│   ├── DimensionError(expected, got)
│   └── SingularMatrixError(index)
├── StabilityError(reason)
├── SchemeError(scheme, reason)
├── NumericalError(module, step, reason)
├── AnchorSolveError(alpha, reason)
└── ConfigError(key, reason)
"""

from __future__ import annotations

from typing import Any


class PpideError(Exception):
    """Base exception for all ppide errors."""


class ParameterError(PpideError, ValueError):
    """Raised when a model, market or scheme parameter is out of range.

    Attributes:
        name: Parameter name (e.g. ``"nu_plus"``).
        value: The offending value.
        reason: Human-readable constraint that was violated.
    """

    def __init__(self, name: str, value: Any, reason: str) -> None:
        self.name = name
        self.value = value
        self.reason = reason
        super().__init__(f"Invalid {name}={value!r}: {reason}")


class DomainError(PpideError, ValueError):
    """Raised when a closed-form quantity is evaluated outside its domain.

    Attributes:
        quantity: Name of the function being evaluated.
        reason: Why the arguments are outside the domain.
    """

    def __init__(self, quantity: str, reason: str) -> None:
        self.quantity = quantity
        self.reason = reason
        super().__init__(f"{quantity} undefined: {reason}")


class GridError(PpideError):
    """Raised when a grid cannot be constructed or two grids are incompatible.

    Attributes:
        reason: Human-readable explanation.
    """

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"Grid error: {reason}")


class BandedError(PpideError):
    """Raised on invalid banded-matrix construction or use.

    Attributes:
        reason: Human-readable explanation.
    """

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"Banded matrix error: {reason}")


class DimensionError(BandedError):
    """Raised when operand dimensions do not match.

    Attributes:
        expected: Dimension required by the operation.
        got: Dimension actually supplied.
    """

    def __init__(self, expected: int, got: int) -> None:
        self.expected = expected
        self.got = got
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")


class SingularMatrixError(BandedError):
    """Raised when a banded factorization meets a zero pivot.

    Attributes:
        index: Row of the failing pivot, or ``-1`` when LAPACK does not say.
    """

    def __init__(self, index: int = -1) -> None:
        self.index = index
        where = f" at row {index}" if index >= 0 else ""
        super().__init__(f"singular pivot{where}")


class StabilityError(PpideError):
    """Raised when a scheme is asked to run outside its stability region.

    Attributes:
        reason: The violated stability condition.
    """

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"Stability condition violated: {reason}")


class SchemeError(PpideError):
    """Raised when a scheme configuration is inconsistent.

    Attributes:
        scheme: Scheme identifier (e.g. ``"pade22"``, ``"vg"``).
        reason: Human-readable explanation.
    """

    def __init__(self, scheme: str, reason: str) -> None:
        self.scheme = scheme
        self.reason = reason
        super().__init__(f"Scheme {scheme!r}: {reason}")


class NumericalError(PpideError):
    """Raised when a march produces non-finite values.

    Attributes:
        module: Module that detected the failure (e.g. ``"fft_ref"``).
        step: Zero-based time step index at which it was detected.
        reason: Human-readable explanation.
    """

    def __init__(self, module: str, step: int, reason: str) -> None:
        self.module = module
        self.step = step
        self.reason = reason
        super().__init__(f"{module} failed at step {step}: {reason}")


class AnchorSolveError(PpideError):
    """Raised when the march at one integer anchor α fails.

    Attributes:
        alpha: The anchor exponent whose solve failed.
        reason: Message of the underlying failure.
    """

    def __init__(self, alpha: int, reason: str) -> None:
        self.alpha = alpha
        self.reason = reason
        super().__init__(f"Anchor solve at alpha={alpha} failed: {reason}")


class ConfigError(PpideError):
    """Raised for unknown, missing or malformed experiment configuration.

    Attributes:
        key: Dotted config key (e.g. ``"grid.n_space"``) or file path.
        reason: Human-readable explanation.
    """

    def __init__(self, key: str, reason: str) -> None:
        self.key = key
        self.reason = reason
        super().__init__(f"Config error at {key!r}: {reason}")
