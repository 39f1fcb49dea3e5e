"""Radical expressions: the `zcase v1` expression grammar.

Grammar (whitespace-insensitive):

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | primary
    primary := NUMBER | NAME | NAME '(' expr ',' expr ')' | '(' expr ')'

Functions are `root(x, k)` (principal k-th root) and `pow(x, e)` (principal
power, rational exponent).  Literal integer quotients such as `1/2` fold to
a single rational constant, so parse . print is the identity on every tree
the parser produces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from mpmath import mp


class ExprError(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Func:
    name: str  # root | pow
    arg: "Expr"
    exponent: "Expr"


Expr = Union[Num, Param, BinOp, Neg, Func]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/,]))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ExprError(f"bad character at position {pos}: {text[pos:]!r}")
            break
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ExprError(f"expected {expected!r}, got {tok!r}")
        self.pos += 1
        return tok

    def expr(self) -> Expr:
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "/" and isinstance(node, Num) and isinstance(rhs, Num):
                if rhs.value == 0:
                    raise ExprError("literal division by zero")
                node = Num(node.value / rhs.value)
            else:
                node = BinOp(op, node, rhs)
        return node

    def factor(self) -> Expr:
        if self.peek() == "-":
            self.take()
            inner = self.factor()
            if isinstance(inner, Num):
                return Num(-inner.value)
            return Neg(inner)
        return self.primary()

    def primary(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if tok == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if tok.isdigit():
            self.take()
            return Num(Fraction(int(tok)))
        self.take()
        if self.peek() == "(":
            if tok not in ("root", "pow"):
                raise ExprError(f"unknown function {tok!r}")
            self.take("(")
            arg = self.expr()
            self.take(",")
            exponent = self.expr()
            self.take(")")
            return Func(tok, arg, exponent)
        return Param(tok)


def parse(text: str) -> Expr:
    p = _Parser(_tokenize(text))
    node = p.expr()
    if p.peek() is not None:
        raise ExprError(f"trailing tokens: {p.tokens[p.pos:]}")
    return node


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _print(e: Expr, parent_prec: int = 0, right_side: bool = False) -> str:
    if isinstance(e, Num):
        s = str(e.value)
        return f"({s})" if e.value < 0 and parent_prec > 0 else s
    if isinstance(e, Param):
        return e.name
    if isinstance(e, Neg):
        inner = _print(e.arg, 3)
        s = f"-{inner}"
        return f"({s})" if parent_prec > 0 else s
    if isinstance(e, Func):
        return f"{e.name}({_print(e.arg)}, {_print(e.exponent)})"
    prec = _PREC[e.op]
    left = _print(e.left, prec, False)
    # right operand of - and / needs parens at equal precedence
    right = _print(e.right, prec + (1 if e.op in ("-", "/") else 0), True)
    s = f"{left} {e.op} {right}"
    if prec < parent_prec or (prec == parent_prec and right_side):
        return f"({s})"
    return s


def print_expr(e: Expr) -> str:
    return _print(e)


def params_of(e: Expr) -> set[str]:
    if isinstance(e, Param):
        return {e.name}
    if isinstance(e, Num):
        return set()
    if isinstance(e, Neg):
        return params_of(e.arg)
    if isinstance(e, Func):
        return params_of(e.arg) | params_of(e.exponent)
    return params_of(e.left) | params_of(e.right)


def eval_exact(e: Expr, env: Mapping[str, Fraction]) -> Fraction:
    """Field operations only; `pow` with an integer exponent is allowed,
    anything with a genuine radical raises."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Param):
        try:
            return Fraction(env[e.name])
        except KeyError:
            raise ExprError(f"unbound parameter {e.name!r}") from None
    if isinstance(e, Neg):
        return -eval_exact(e.arg, env)
    if isinstance(e, Func):
        exponent = eval_exact(e.exponent, env)
        if e.name == "root":
            exponent = Fraction(1) / exponent
        base = eval_exact(e.arg, env)
        if exponent.denominator != 1:
            raise ExprError("radical has no exact rational value")
        return base ** int(exponent)
    a, b = eval_exact(e.left, env), eval_exact(e.right, env)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if b == 0:
        raise ExprError("division by zero")
    return a / b


def eval_numeric(e: Expr, env: Mapping[str, object]):
    """Evaluate to an mpmath complex number; roots and fractional powers use
    the principal branch exp(e log z)."""
    if isinstance(e, Num):
        return mp.mpf(e.value.numerator) / mp.mpf(e.value.denominator)
    if isinstance(e, Param):
        try:
            v = env[e.name]
        except KeyError:
            raise ExprError(f"unbound parameter {e.name!r}") from None
        if isinstance(v, Fraction):
            return mp.mpf(v.numerator) / mp.mpf(v.denominator)
        return v
    if isinstance(e, Neg):
        return -eval_numeric(e.arg, env)
    if isinstance(e, Func):
        base = eval_numeric(e.arg, env)
        exponent = eval_numeric(e.exponent, env)
        if e.name == "root":
            exponent = 1 / exponent
        return principal_pow(base, exponent)
    a, b = eval_numeric(e.left, env), eval_numeric(e.right, env)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if b == 0:
        raise ExprError("division by zero")
    return a / b


def principal_pow(base, exponent):
    if base == 0:
        if mp.re(exponent) <= 0 and exponent != 0:
            raise ExprError("zero base with nonpositive exponent")
        return mp.mpf(0) if exponent != 0 else mp.mpf(1)
    return mp.exp(exponent * mp.log(mp.mpc(base)))
