# -*- coding: utf-8 -*-
from typing import Any, Dict, Optional, Type


class KnottedSpheresError(Exception):
    """Base exception for surface construction and curvature analysis errors."""
    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def __str__(self):
        parts = [self.message]
        for key, value in self.context.items():
            if value is None:
                continue
            parts.append(f"{key}: {value}")
        return "\n".join(parts)


class ExpressionSyntaxError(KnottedSpheresError):
    """Raised when an expression cannot be parsed."""
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(message, offset=offset, text=text or None)
        self.offset = offset
        self.text = text


class DomainError(KnottedSpheresError):
    """Raised when an evaluation leaves the domain of a function or of a surface spec."""
    def __init__(self, message: str, node: Any = None, u: Optional[float] = None, **context: Any):
        super().__init__(message, node=node, u=u, **context)
        self.node = node
        self.u = u

    def at(self, node: Any, u: Optional[float] = None) -> "DomainError":
        """Return a copy of this error pinned to the offending expression node."""
        return DomainError(self.message, node=node, u=u if u is not None else self.u)


class DegenerateMetric(KnottedSpheresError):
    """Raised when W^2 = EG - F^2 is too small for the point to be regular."""
    def __init__(self, message: str, W2: float, u: Optional[float] = None, v: Optional[float] = None):
        super().__init__(message, W2=W2, u=u, v=v)
        self.W2 = W2
        self.u = u
        self.v = v


class PreconditionError(KnottedSpheresError):
    """Raised when a formula is applied outside the family it was derived for."""
    pass


class SpeedDeficit(KnottedSpheresError):
    """Raised when unit-speed completion meets a non-positive radicand."""
    def __init__(self, message: str, u: float, radicand: float):
        super().__init__(message, u=u, radicand=radicand)
        self.u = u
        self.radicand = radicand


class UnitSpeedViolation(KnottedSpheresError):
    """Raised when a profile curve is not parametrized by arclength."""
    def __init__(self, message: str, max_residual: float, u: float):
        super().__init__(message, max_residual=max_residual, u=u)
        self.max_residual = max_residual
        self.u = u


class RegularityError(KnottedSpheresError):
    """Raised when a Case I angle function has |phi'| >= 1 somewhere."""
    def __init__(self, message: str, u: Optional[float] = None, phi_prime: Optional[float] = None):
        super().__init__(message, u=u, phi_prime=phi_prime)
        self.u = u
        self.phi_prime = phi_prime


class PositivityError(KnottedSpheresError):
    """Raised when a Case II profile has x3 <= 0 somewhere."""
    def __init__(self, message: str, u: float, value: float):
        super().__init__(message, u=u, value=value)
        self.u = u
        self.value = value


class DegenerateNet(KnottedSpheresError):
    """Raised when a Laplace transform denominator vanishes."""
    def __init__(self, message: str, symbol: str, value: float):
        super().__init__(message, symbol=symbol, value=value)
        self.symbol = symbol
        self.value = value


class CorpusError(KnottedSpheresError):
    """Raised when a claim is run on instances outside its family."""
    pass


class SpecError(KnottedSpheresError):
    """Raised when a surface document or grid description is invalid."""
    pass


# Mapping exception classes to CLI exit codes
EXIT_CODE_MAP: Dict[Type[KnottedSpheresError], int] = {
    ExpressionSyntaxError: 1,
    DomainError: 1,
    DegenerateMetric: 1,
    PreconditionError: 1,
    SpeedDeficit: 1,
    UnitSpeedViolation: 1,
    RegularityError: 1,
    PositivityError: 1,
    DegenerateNet: 1,
    CorpusError: 1,
    SpecError: 1,
}

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_CLAIM_FAILURE = 2


def exit_code_for(exc: BaseException) -> int:
    """
    Return the CLI exit code for an exception.

    Args:
        exc: The exception raised while running a command

    Returns:
        The mapped exit code, 1 for any other library error
    """
    for exc_class in type(exc).__mro__:
        if exc_class in EXIT_CODE_MAP:
            return EXIT_CODE_MAP[exc_class]
    return EXIT_INPUT_ERROR
