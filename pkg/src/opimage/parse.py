"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is insignificant, implicit multiplication is not
allowed)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' UINT)?
    base   := RAT | 'i' | VAR | '(' expr ')'
    VAR    := ('z' | 'u') UINT
    RAT    := '-'? UINT ('/' UINT)?

``u<k>`` denotes xi_k.  Error offsets are byte offsets into the UTF-8
encoded source.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (ImaginaryInNonGaussianField, IndexOutOfRange, PolySyntaxError,
                     ZeroDenominator)
from .fields import GaussianField, Field, QQ
from .poly import Poly


@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class ImagLit:
    pass


@dataclass(frozen=True)
class Var:
    block: str  # 'z' or 'u'
    index: int  # 1-based


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, Expr) with sign in (+1, -1)


Expr = Union[RationalLit, ImagLit, Var, Power, Product, Sum]

_TOKEN = re.compile(r"\s*(?:(?P<uint>\d+)|(?P<var>[zu]\d+)|(?P<op>[-+*/^()])|(?P<imag>i)|(?P<bad>\S))")


@dataclass
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(src: str) -> list:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastgroup
        text = m.group(kind)
        start = len(src[:m.start(kind)].encode("utf-8"))
        if kind == "bad":
            raise PolySyntaxError(f"unexpected character {text!r}", start)
        toks.append(_Tok(kind, text, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(src.encode("utf-8"))))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.pos = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.pos]

    def peek(self, k=1) -> _Tok:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        if self.cur.kind != "op" or self.cur.text != op:
            found = self.cur.text or "end of input"
            raise PolySyntaxError(f"expected {op!r}, found {found!r}", self.cur.offset)
        return self.advance()

    def is_op(self, *ops) -> bool:
        return self.cur.kind == "op" and self.cur.text in ops

    def parse(self) -> Expr:
        node = self.expr()
        if self.cur.kind != "end":
            raise PolySyntaxError(f"unexpected {self.cur.text!r}", self.cur.offset)
        return node

    def expr(self) -> Expr:
        terms = [(1, self.term())]
        while self.is_op("+", "-"):
            sign = 1 if self.advance().text == "+" else -1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 and terms[0][0] == 1 else Sum(tuple(terms))

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.is_op("*"):
            self.advance()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Expr:
        base = self.base()
        if self.is_op("^"):
            self.advance()
            if self.cur.kind != "uint":
                raise PolySyntaxError("exponent must be an unsigned integer", self.cur.offset)
            return Power(base, int(self.advance().text))
        return base

    def base(self) -> Expr:
        tok = self.cur
        if tok.kind == "uint" or (self.is_op("-") and self.peek().kind == "uint"):
            return self.rational()
        if tok.kind == "imag":
            self.advance()
            return ImagLit()
        if tok.kind == "var":
            self.advance()
            return Var(tok.text[0], int(tok.text[1:]))
        if self.is_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        found = tok.text or "end of input"
        raise PolySyntaxError(f"unexpected {found!r}", tok.offset)

    def rational(self) -> RationalLit:
        neg = False
        if self.is_op("-"):
            self.advance()
            neg = True
        num = int(self.advance().text)
        den = 1
        if self.is_op("/"):
            self.advance()
            if self.cur.kind != "uint":
                raise PolySyntaxError("expected denominator", self.cur.offset)
            tok = self.advance()
            den = int(tok.text)
            if den == 0:
                raise ZeroDenominator("zero denominator", tok.offset)
        q = Fraction(num, den)
        return RationalLit(-q if neg else q)


def parse_expr(src: str) -> Expr:
    return _Parser(src).parse()


def evaluate(node: Expr, nvars: int, field: Field = QQ) -> Poly:
    if isinstance(node, RationalLit):
        return Poly.const(nvars, node.value, field)
    if isinstance(node, ImagLit):
        if not isinstance(field, GaussianField):
            raise ImaginaryInNonGaussianField("'i' needs the gaussian field", 0)
        return Poly.const(nvars, field.i, field)
    if isinstance(node, Var):
        if not 1 <= node.index <= nvars:
            raise IndexOutOfRange(f"{node.block}{node.index} outside 1..{nvars}")
        ctor = Poly.z if node.block == "z" else Poly.u
        return ctor(nvars, node.index - 1, field)
    if isinstance(node, Power):
        return evaluate(node.base, nvars, field) ** node.exponent
    if isinstance(node, Product):
        out = evaluate(node.factors[0], nvars, field)
        for f in node.factors[1:]:
            out = out * evaluate(f, nvars, field)
        return out
    if isinstance(node, Sum):
        out = Poly.zero(nvars, field)
        for sign, t in node.terms:
            v = evaluate(t, nvars, field)
            out = out + v if sign > 0 else out - v
        return out
    raise TypeError(f"not an expression node: {node!r}")


def parse_poly(src: str, nvars: int, field: Field = QQ) -> Poly:
    """Parse ``src`` into a canonical :class:`Poly`."""
    node = parse_expr(src)
    for tok in _tokenize(src):
        if tok.kind == "imag" and not isinstance(field, GaussianField):
            raise ImaginaryInNonGaussianField("'i' needs the gaussian field", tok.offset)
        if tok.kind == "var" and not 1 <= int(tok.text[1:]) <= nvars:
            raise IndexOutOfRange(
                f"{tok.text} outside 1..{nvars} at offset {tok.offset}")
    try:
        return evaluate(node, nvars, field)
    except ZeroDivisionError as exc:
        raise ZeroDenominator(str(exc), 0) from exc
