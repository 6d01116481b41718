import math
from typing import Mapping

from ..exceptions import DomainError
from . import jet
from .ast import (
    BinaryOp,
    BinOp,
    Call,
    Const,
    ExprAst,
    FUNCTION_NAMES,
    Neg,
    Param,
    Pi,
    Pow,
    Var,
    depends_on_u,
    differentiate,
    free_parameters,
    render,
)
from .jet import Jet1D
from .parser import parse

__all__ = [
    "BinaryOp",
    "BinOp",
    "Call",
    "Const",
    "ExprAst",
    "FUNCTION_NAMES",
    "Jet1D",
    "Neg",
    "Param",
    "Pi",
    "Pow",
    "Var",
    "depends_on_u",
    "differentiate",
    "eval_jet1d",
    "eval_value",
    "free_parameters",
    "parse",
    "render",
]


def _eval(node: ExprAst, u: float, params: Mapping[str, float]) -> Jet1D:
    try:
        match node:
            case Const(value):
                return Jet1D(float(value))
            case Var():
                return Jet1D(u, 1.0)
            case Param(name):
                if name not in params:
                    raise DomainError(f"unbound parameter {name!r}")
                return Jet1D(float(params[name]))
            case Pi():
                return Jet1D(math.pi)
            case Neg(operand):
                return -_eval(operand, u, params)
            case BinOp(op, left, right):
                a = _eval(left, u, params)
                b = _eval(right, u, params)
                if op is BinaryOp.ADD:
                    out = a + b
                elif op is BinaryOp.SUB:
                    out = a - b
                elif op is BinaryOp.MUL:
                    out = a * b
                else:
                    out = a / b
            case Pow(base, exponent):
                out = _eval(base, u, params) ** _eval(exponent, u, params).d0
            case Call(func, arg):
                out = jet.FUNCTIONS[func](_eval(arg, u, params))
            case _:
                raise TypeError(f"Not an expression node: {node!r}")
    except DomainError as exc:
        if exc.node is None:
            raise exc.at(node, u) from exc
        raise
    if not out.is_finite():
        raise DomainError("non-finite result", node=node, u=u)
    return out


def eval_jet1d(ast: ExprAst, u: float, params: Mapping[str, float] | None = None) -> Jet1D:
    """
    Evaluate an expression and its first three u-derivatives.

    Args:
        ast: Parsed expression
        u: Evaluation point
        params: Values of the declared parameters

    Returns:
        Jet1D(d0, d1, d2, d3) with the exact analytic derivatives at u

    Raises:
        DomainError: carrying the offending node (sqrt/log of a non-positive
            value, division by zero, overflow)
    """
    return _eval(ast, float(u), params or {})


def eval_value(ast: ExprAst, u: float, params: Mapping[str, float] | None = None) -> float:
    """Value only; same domain rules as eval_jet1d."""
    return eval_jet1d(ast, u, params).d0
