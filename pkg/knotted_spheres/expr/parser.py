"""
Recursive-descent parser for profile-curve expressions.

Grammar::

    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := "-" factor | base ("^" exponent)?
    exponent := "-" exponent | base ("^" exponent)?
    base     := number | "u" | "pi" | ident | ident "(" expr ")" | "(" expr ")"

``^`` binds tighter than unary minus and is right-associative; exponents must
not mention ``u``.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Collection, List, Optional

from ..exceptions import ExpressionSyntaxError
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
    PI_NAME,
    Pow,
    Var,
    VARIABLE,
    depends_on_u,
)

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    offset: int


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExpressionSyntaxError(
                f"unexpected character {text[pos]!r}", offset=_byte_offset(text, pos), text=text
            )
        kind = match.lastgroup or ""
        if kind != "ws":
            tokens.append(Token(kind, match.group(), _byte_offset(text, pos)))
        pos = match.end()
    tokens.append(Token("end", "", _byte_offset(text, len(text))))
    return tokens


class _Parser:
    def __init__(self, text: str, params: Collection[str]):
        self.text = text
        self.params = frozenset(params)
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ExpressionSyntaxError:
        token = token or self.current
        if token.kind == "end":
            message = f"{message} (unexpected end of input)"
        return ExpressionSyntaxError(message, offset=token.offset, text=self.text)

    def accept_op(self, *ops: str) -> Optional[Token]:
        token = self.current
        if token.kind == "op" and token.text in ops:
            return self.advance()
        return None

    def expect_op(self, op: str) -> Token:
        token = self.accept_op(op)
        if token is None:
            raise self.error(f"expected {op!r}")
        return token

    def parse(self) -> ExprAst:
        if self.current.kind == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.current.kind != "end":
            raise self.error(f"unexpected {self.current.text!r}")
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while (token := self.accept_op("+", "-")) is not None:
            node = BinOp(BinaryOp(token.text), node, self.term())
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while (token := self.accept_op("*", "/")) is not None:
            node = BinOp(BinaryOp(token.text), node, self.factor())
        return node

    def factor(self) -> ExprAst:
        if self.accept_op("-") is not None:
            return Neg(self.factor())
        node = self.base()
        if self.accept_op("^") is not None:
            node = Pow(node, self.exponent())
        return node

    def exponent(self) -> ExprAst:
        start = self.current
        if self.accept_op("-") is not None:
            node: ExprAst = Neg(self.exponent())
        else:
            node = self.base()
            if self.accept_op("^") is not None:
                node = Pow(node, self.exponent())
        if depends_on_u(node):
            raise self.error("exponent must not depend on u", token=start)
        return node

    def base(self) -> ExprAst:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Const(float(token.text))
        if token.kind == "op" and token.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        if token.kind == "ident":
            self.advance()
            name = token.text
            if name in FUNCTION_NAMES:
                if self.accept_op("(") is None:
                    raise self.error(f"function {name!r} requires a parenthesized argument")
                arg = self.expr()
                self.expect_op(")")
                return Call(name, arg)
            if name == VARIABLE:
                return Var()
            if name == PI_NAME:
                return Pi()
            if name in self.params:
                return Param(name)
            raise self.error(f"unknown identifier {name!r}", token=token)
        raise self.error("expected a number, identifier or '('")


def parse(text: str, params: Collection[str] = ()) -> ExprAst:
    """
    Parse an expression in ``u``.

    Args:
        text: Expression source, e.g. ``"a*sin(b*u) + c*u"``
        params: Declared parameter names; any other identifier is rejected

    Returns:
        The expression tree

    Raises:
        ExpressionSyntaxError: with the byte offset of the offending token
    """
    if text is None:
        raise ExpressionSyntaxError("empty expression", offset=0)
    node = _Parser(text, params).parse()
    logger.debug(f"Parsed {text!r} -> {node!r}")
    return node
