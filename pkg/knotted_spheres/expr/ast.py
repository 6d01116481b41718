"""
Expression trees in the single variable ``u``.

Nodes are frozen dataclasses so trees are hashable, comparable and safe to
share between threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import FrozenSet, Union

VARIABLE = "u"
PI_NAME = "pi"
FUNCTION_NAMES: FrozenSet[str] = frozenset(
    {"sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh", "atan"}
)
RESERVED_NAMES: FrozenSet[str] = FUNCTION_NAMES | {VARIABLE, PI_NAME}


class BinaryOp(StrEnum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"


@dataclass(frozen=True, slots=True)
class Const:
    value: float


@dataclass(frozen=True, slots=True)
class Var:
    name: str = VARIABLE


@dataclass(frozen=True, slots=True)
class Param:
    name: str


@dataclass(frozen=True, slots=True)
class Pi:
    pass


@dataclass(frozen=True, slots=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True, slots=True)
class BinOp:
    op: BinaryOp
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True, slots=True)
class Pow:
    """Power with an exponent that does not depend on ``u``."""
    base: "ExprAst"
    exponent: "ExprAst"


@dataclass(frozen=True, slots=True)
class Call:
    func: str
    arg: "ExprAst"


ExprAst = Union[Const, Var, Param, Pi, Neg, BinOp, Pow, Call]

ZERO = Const(0.0)
ONE = Const(1.0)
TWO = Const(2.0)


def depends_on_u(node: ExprAst) -> bool:
    """True when the tree mentions the variable ``u``."""
    match node:
        case Var():
            return True
        case Const() | Param() | Pi():
            return False
        case Neg(operand):
            return depends_on_u(operand)
        case BinOp(_, left, right):
            return depends_on_u(left) or depends_on_u(right)
        case Pow(base, exponent):
            return depends_on_u(base) or depends_on_u(exponent)
        case Call(_, arg):
            return depends_on_u(arg)
    raise TypeError(f"Not an expression node: {node!r}")


def free_parameters(node: ExprAst) -> FrozenSet[str]:
    """Names of all parameters referenced by the tree."""
    match node:
        case Param(name):
            return frozenset({name})
        case Const() | Var() | Pi():
            return frozenset()
        case Neg(operand):
            return free_parameters(operand)
        case BinOp(_, left, right):
            return free_parameters(left) | free_parameters(right)
        case Pow(base, exponent):
            return free_parameters(base) | free_parameters(exponent)
        case Call(_, arg):
            return free_parameters(arg)
    raise TypeError(f"Not an expression node: {node!r}")


def render(node: ExprAst) -> str:
    """
    Render a tree as fully parenthesized text.

    ``parse(render(ast))`` yields a tree that evaluates identically to ``ast``.
    """
    match node:
        case Const(value):
            text = repr(float(value))
            return f"({text})" if value < 0 or text.startswith("-") else text
        case Var(name):
            return name
        case Param(name):
            return name
        case Pi():
            return PI_NAME
        case Neg(operand):
            return f"(-{render(operand)})"
        case BinOp(op, left, right):
            return f"({render(left)} {op.value} {render(right)})"
        case Pow(base, exponent):
            return f"(({render(base)})^({render(exponent)}))"
        case Call(func, arg):
            return f"{func}({render(arg)})"
    raise TypeError(f"Not an expression node: {node!r}")


# Builders with folding of neutral operands only; no algebraic simplification.

def add(a: ExprAst, b: ExprAst) -> ExprAst:
    if a == ZERO:
        return b
    if b == ZERO:
        return a
    return BinOp(BinaryOp.ADD, a, b)


def sub(a: ExprAst, b: ExprAst) -> ExprAst:
    if b == ZERO:
        return a
    if a == ZERO:
        return neg(b)
    return BinOp(BinaryOp.SUB, a, b)


def mul(a: ExprAst, b: ExprAst) -> ExprAst:
    if a == ZERO or b == ZERO:
        return ZERO
    if a == ONE:
        return b
    if b == ONE:
        return a
    return BinOp(BinaryOp.MUL, a, b)


def div(a: ExprAst, b: ExprAst) -> ExprAst:
    if a == ZERO:
        return ZERO
    if b == ONE:
        return a
    return BinOp(BinaryOp.DIV, a, b)


def neg(a: ExprAst) -> ExprAst:
    if a == ZERO:
        return ZERO
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def power(base: ExprAst, exponent: ExprAst) -> ExprAst:
    if exponent == ONE:
        return base
    if exponent == ZERO:
        return ONE
    return Pow(base, exponent)


def differentiate(node: ExprAst) -> ExprAst:
    """
    Exact symbolic derivative with respect to ``u``.

    Args:
        node: Expression tree

    Returns:
        A new tree for d(node)/du
    """
    match node:
        case Const() | Param() | Pi():
            return ZERO
        case Var():
            return ONE
        case Neg(operand):
            return neg(differentiate(operand))
        case BinOp(BinaryOp.ADD, left, right):
            return add(differentiate(left), differentiate(right))
        case BinOp(BinaryOp.SUB, left, right):
            return sub(differentiate(left), differentiate(right))
        case BinOp(BinaryOp.MUL, left, right):
            return add(mul(differentiate(left), right), mul(left, differentiate(right)))
        case BinOp(BinaryOp.DIV, left, right):
            numerator = sub(mul(differentiate(left), right), mul(left, differentiate(right)))
            return div(numerator, power(right, TWO))
        case Pow(base, exponent):
            # exponent is constant in u
            lowered = power(base, sub(exponent, ONE))
            return mul(mul(exponent, lowered), differentiate(base))
        case Call(func, arg):
            return mul(_outer_derivative(func, arg), differentiate(arg))
    raise TypeError(f"Not an expression node: {node!r}")


def _outer_derivative(func: str, arg: ExprAst) -> ExprAst:
    if func == "sin":
        return Call("cos", arg)
    if func == "cos":
        return neg(Call("sin", arg))
    if func == "tan":
        return add(ONE, power(Call("tan", arg), TWO))
    if func == "exp":
        return Call("exp", arg)
    if func == "log":
        return div(ONE, arg)
    if func == "sqrt":
        return div(ONE, mul(TWO, Call("sqrt", arg)))
    if func == "sinh":
        return Call("cosh", arg)
    if func == "cosh":
        return Call("sinh", arg)
    if func == "atan":
        return div(ONE, add(ONE, power(arg, TWO)))
    raise ValueError(f"Unknown function {func!r}")
