"""
Order-3 jets: a value together with its first three derivatives.

Arithmetic follows the Leibniz rule and, for elementary functions, the
order-3 Faa di Bruno formula

    (f o g)'   = f1 g1
    (f o g)''  = f2 g1^2 + f1 g2
    (f o g)''' = f3 g1^3 + 3 f2 g1 g2 + f1 g3

where f1..f3 are the derivatives of f at g(u).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple, Union

from ..exceptions import DomainError

Number = Union[int, float]


@dataclass(frozen=True, slots=True)
class Jet1D:
    """Value ``d0`` and derivatives ``d1, d2, d3`` with respect to u."""
    d0: float
    d1: float = 0.0
    d2: float = 0.0
    d3: float = 0.0

    @classmethod
    def constant(cls, value: Number) -> "Jet1D":
        return cls(float(value))

    @classmethod
    def variable(cls, u: Number) -> "Jet1D":
        return cls(float(u), 1.0)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.d0, self.d1, self.d2, self.d3)

    def is_finite(self) -> bool:
        return (
            math.isfinite(self.d0)
            and math.isfinite(self.d1)
            and math.isfinite(self.d2)
            and math.isfinite(self.d3)
        )

    def derivative(self) -> Tuple[float, float, float]:
        """Value, first and second derivative of d/du of this jet."""
        return (self.d1, self.d2, self.d3)

    def compose(self, f0: float, f1: float, f2: float, f3: float) -> "Jet1D":
        """Jet of f(g(u)) given f and its derivatives evaluated at g = self.d0."""
        g1, g2, g3 = self.d1, self.d2, self.d3
        return Jet1D(
            f0,
            f1 * g1,
            f2 * g1 * g1 + f1 * g2,
            f3 * g1 * g1 * g1 + 3.0 * f2 * g1 * g2 + f1 * g3,
        )

    def __neg__(self) -> "Jet1D":
        return Jet1D(-self.d0, -self.d1, -self.d2, -self.d3)

    def __add__(self, other: Union["Jet1D", Number]) -> "Jet1D":
        if not isinstance(other, Jet1D):
            return Jet1D(self.d0 + other, self.d1, self.d2, self.d3)
        return Jet1D(self.d0 + other.d0, self.d1 + other.d1, self.d2 + other.d2, self.d3 + other.d3)

    __radd__ = __add__

    def __sub__(self, other: Union["Jet1D", Number]) -> "Jet1D":
        if not isinstance(other, Jet1D):
            return Jet1D(self.d0 - other, self.d1, self.d2, self.d3)
        return Jet1D(self.d0 - other.d0, self.d1 - other.d1, self.d2 - other.d2, self.d3 - other.d3)

    def __rsub__(self, other: Number) -> "Jet1D":
        return Jet1D(other - self.d0, -self.d1, -self.d2, -self.d3)

    def __mul__(self, other: Union["Jet1D", Number]) -> "Jet1D":
        if not isinstance(other, Jet1D):
            return Jet1D(self.d0 * other, self.d1 * other, self.d2 * other, self.d3 * other)
        a0, a1, a2, a3 = self.d0, self.d1, self.d2, self.d3
        b0, b1, b2, b3 = other.d0, other.d1, other.d2, other.d3
        return Jet1D(
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + 2.0 * a1 * b1 + a0 * b2,
            a3 * b0 + 3.0 * a2 * b1 + 3.0 * a1 * b2 + a0 * b3,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Jet1D", Number]) -> "Jet1D":
        if not isinstance(other, Jet1D):
            if other == 0:
                raise DomainError("division by zero")
            return self * (1.0 / other)
        return self * reciprocal(other)

    def __rtruediv__(self, other: Number) -> "Jet1D":
        return reciprocal(self) * other

    def __pow__(self, exponent: Number) -> "Jet1D":
        return power(self, exponent)


def reciprocal(g: Jet1D) -> Jet1D:
    x = g.d0
    if x == 0.0:
        raise DomainError("division by zero")
    r = 1.0 / x
    return g.compose(r, -r * r, 2.0 * r ** 3, -6.0 * r ** 4)


def _falling(n: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= n - i
    return out


def power(g: Jet1D, exponent: Number) -> Jet1D:
    """Jet of g(u)**exponent for a real exponent constant in u."""
    n = float(exponent)
    x = g.d0
    if n == 0.0:
        return Jet1D(1.0)
    integral = n.is_integer()
    if not integral and x <= 0.0:
        raise DomainError(f"non-integer power {n!r} of non-positive base {x!r}")
    if integral and n < 0 and x == 0.0:
        raise DomainError("negative power of zero")
    coeffs = []
    try:
        for k in range(4):
            c = _falling(n, k)
            if c == 0.0:
                # integer exponents below the derivative order
                coeffs.append(0.0)
            elif integral:
                coeffs.append(c * x ** int(n - k))
            else:
                coeffs.append(c * x ** (n - k))
    except (OverflowError, ZeroDivisionError) as exc:
        raise DomainError(f"power {n!r} of {x!r} out of range") from exc
    return g.compose(*coeffs)


def sin(g: Jet1D) -> Jet1D:
    s, c = math.sin(g.d0), math.cos(g.d0)
    return g.compose(s, c, -s, -c)


def cos(g: Jet1D) -> Jet1D:
    s, c = math.sin(g.d0), math.cos(g.d0)
    return g.compose(c, -s, -c, s)


def tan(g: Jet1D) -> Jet1D:
    if math.cos(g.d0) == 0.0:
        raise DomainError("tan pole")
    t = math.tan(g.d0)
    sec2 = 1.0 + t * t
    return g.compose(t, sec2, 2.0 * t * sec2, sec2 * (2.0 + 6.0 * t * t))


def exp(g: Jet1D) -> Jet1D:
    try:
        e = math.exp(g.d0)
    except OverflowError as exc:
        raise DomainError(f"exp overflow at {g.d0!r}") from exc
    return g.compose(e, e, e, e)


def log(g: Jet1D) -> Jet1D:
    x = g.d0
    if x <= 0.0:
        raise DomainError(f"log of non-positive value {x!r}")
    r = 1.0 / x
    return g.compose(math.log(x), r, -r * r, 2.0 * r ** 3)


def sqrt(g: Jet1D) -> Jet1D:
    x = g.d0
    if x <= 0.0:
        raise DomainError(f"sqrt of non-positive value {x!r}")
    s = math.sqrt(x)
    return g.compose(s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x))


def sinh(g: Jet1D) -> Jet1D:
    try:
        sh, ch = math.sinh(g.d0), math.cosh(g.d0)
    except OverflowError as exc:
        raise DomainError(f"sinh overflow at {g.d0!r}") from exc
    return g.compose(sh, ch, sh, ch)


def cosh(g: Jet1D) -> Jet1D:
    try:
        sh, ch = math.sinh(g.d0), math.cosh(g.d0)
    except OverflowError as exc:
        raise DomainError(f"cosh overflow at {g.d0!r}") from exc
    return g.compose(ch, sh, ch, sh)


def atan(g: Jet1D) -> Jet1D:
    x = g.d0
    q = 1.0 / (1.0 + x * x)
    return g.compose(math.atan(x), q, -2.0 * x * q * q, (6.0 * x * x - 2.0) * q ** 3)


FUNCTIONS: Dict[str, Callable[[Jet1D], Jet1D]] = {
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
    "sinh": sinh,
    "cosh": cosh,
    "atan": atan,
}
