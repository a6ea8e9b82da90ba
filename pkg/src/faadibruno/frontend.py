"""A small univariate expression language and its derivative jets.

Grammar (``^`` binds tightest, binary operators are left-associative, unary
minus sits between term and factor)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | factor
    factor := base ('^' uint)?
    base   := number | 'x' | ident '(' expr ')' | '(' expr ')'

``ident`` is one of exp, log, sin, cos, sqrt.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import DomainError, InvalidArgument, LexError, ParseError
from .series import (
    Jet,
    compose_faa,
    compose_series,
    elementary_jet,
    jet_add,
    jet_div,
    jet_mul,
    jet_neg,
    jet_pow,
    jet_sub,
)

FUNCTIONS = ("exp", "log", "sin", "cos", "sqrt")


@dataclass(frozen=True)
class Token:
    kind: str  # number | identifier | operator | paren | end
    lexeme: str
    offset: int


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<number>\d+(?:\.\d+)?)|(?P<identifier>[a-z]+)"
    r"|(?P<operator>[-+*/^])|(?P<paren>[()])"
)


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise LexError(f"illegal character {source[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Apply:
    func: str
    arg: "Expr"


Expr = Union[Const, Var, BinOp, Neg, Pow, Apply]


class _Parser:
    def __init__(self, tokens: list[Token], length: int):
        self.tokens = tokens
        self.i = 0
        self.end = Token("end", "", length)

    def peek(self) -> Token:
        return self.tokens[self.i] if self.i < len(self.tokens) else self.end

    def take(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, lexeme: str) -> Token:
        tok = self.peek()
        if tok.lexeme != lexeme or tok.kind == "end":
            found = tok.lexeme or "end of input"
            raise ParseError(f"expected {lexeme!r}, found {found!r}", tok.offset)
        return self.take()

    def expr(self) -> Expr:
        node = self.term()
        while self.peek().lexeme in ("+", "-") and self.peek().kind == "operator":
            op = self.take().lexeme
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek().lexeme in ("*", "/") and self.peek().kind == "operator":
            op = self.take().lexeme
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.peek().lexeme == "-" and self.peek().kind == "operator":
            self.take()
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Expr:
        node = self.base()
        if self.peek().lexeme == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "number" or not tok.lexeme.isdigit():
                raise ParseError("expected a nonnegative integer exponent", tok.offset)
            self.take()
            node = Pow(node, int(tok.lexeme))
        return node

    def base(self) -> Expr:
        tok = self.peek()
        if tok.kind == "number":
            self.take()
            return Const(Fraction(tok.lexeme))
        if tok.kind == "identifier":
            self.take()
            if tok.lexeme == "x":
                return Var()
            if tok.lexeme not in FUNCTIONS:
                raise ParseError(f"unknown function {tok.lexeme!r}", tok.offset)
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Apply(tok.lexeme, arg)
        if tok.lexeme == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        found = tok.lexeme or "end of input"
        raise ParseError(f"expected a number, 'x', a function or '(', found {found!r}", tok.offset)


def parse(source: Union[str, list[Token]]) -> Expr:
    """Parse source text (or a token list from :func:`tokenize`)."""
    if isinstance(source, str):
        tokens, length = tokenize(source), len(source)
    else:
        tokens = list(source)
        length = tokens[-1].offset + len(tokens[-1].lexeme) if tokens else 0
    parser = _Parser(tokens, length)
    node = parser.expr()
    if parser.peek().kind != "end":
        tok = parser.peek()
        raise ParseError(f"unexpected trailing input {tok.lexeme!r}", tok.offset)
    return node


# -- printer -----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _const_source(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    den = v.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        # not a terminating decimal; prints as a quotient, which parses to a BinOp
        return f"({v.numerator}/{v.denominator})"
    shift = 1
    while (v * 10**shift).denominator != 1:
        shift += 1
    digits = str((v * 10**shift).numerator).rjust(shift + 1, "0")
    return digits[:-shift] + "." + digits[-shift:]


def to_source(e: Expr, prec: int = 0) -> str:
    """Render ``e`` with the minimal parentheses that parse back to ``e``."""
    if isinstance(e, Const):
        return _const_source(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Apply):
        return f"{e.func}({to_source(e.arg)})"
    if isinstance(e, Pow):
        text = f"{to_source(e.base, 4)}^{e.exponent}"
        return f"({text})" if prec > 3 else text
    if isinstance(e, Neg):
        text = "-" + to_source(e.operand, 3)
        return f"({text})" if prec > 3 else text
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        text = f"{to_source(e.left, p)} {e.op} {to_source(e.right, p + 1)}"
        return f"({text})" if prec > p else text
    raise TypeError(f"not an expression node: {e!r}")


# -- differentiation ---------------------------------------------------------


def derive(
    e: Union[Expr, str],
    order: int,
    at,
    mode: str = "float",
    oracle: bool = False,
) -> Jet:
    """Jet of the expression at ``at`` up to ``order``.

    ``mode="exact"`` computes over rationals and raises :class:`DomainError`
    wherever an elementary value would be irrational. ``oracle=True`` swaps
    the partition-based composition for power-series substitution.
    """
    if isinstance(e, str):
        e = parse(e)
    if not isinstance(order, int) or order < 0:
        raise InvalidArgument(f"order must be a nonnegative integer, got {order!r}")
    if mode == "exact":
        at = Fraction(str(at)) if isinstance(at, float) else Fraction(at)
    elif mode == "float":
        at = float(at)
    else:
        raise InvalidArgument(f"mode must be 'exact' or 'float', got {mode!r}")
    compose: Callable = compose_series if oracle else compose_faa
    return _derive(e, order, at, compose)


def _derive(e: Expr, n: int, at, compose: Callable) -> Jet:
    if isinstance(e, Const):
        value = e.value if isinstance(at, Fraction) else float(e.value)
        return Jet.constant(value, at, n)
    if isinstance(e, Var):
        return Jet.identity(at, n)
    if isinstance(e, Neg):
        return jet_neg(_derive(e.operand, n, at, compose))
    if isinstance(e, Pow):
        return jet_pow(_derive(e.base, n, at, compose), e.exponent)
    if isinstance(e, BinOp):
        left = _derive(e.left, n, at, compose)
        right = _derive(e.right, n, at, compose)
        if e.op == "+":
            return jet_add(left, right)
        if e.op == "-":
            return jet_sub(left, right)
        if e.op == "*":
            return jet_mul(left, right)
        try:
            return jet_div(left, right)
        except DomainError:
            raise DomainError(f"division by zero in {to_source(e)}") from None
    if isinstance(e, Apply):
        inner = _derive(e.arg, n, at, compose)
        try:
            outer = elementary_jet(e.func, inner.value, n)
        except DomainError as exc:
            raise DomainError(f"{exc} (in {to_source(e)})") from None
        return compose(outer, inner)
    raise TypeError(f"not an expression node: {e!r}")
