"""Sparse polynomials in C[xi, z] and Laurent polynomials in z.

A :class:`Poly` over ``n`` variables holds terms ``c * xi^alpha * z^beta``.
Internally each term is keyed by the flat tuple ``beta + alpha`` (z block
first, then the xi block) so that products only need one tuple addition.
In text the xi variables are spelled ``u1..un``.

Values are immutable; every operation returns a new object.  Zero
coefficients are never stored.  Terms iterate in decreasing graded
lexicographic order on ``(zexp, uexp)``.
"""

from __future__ import annotations

import os
from fractions import Fraction
from operator import add as _add
from typing import Iterable, Iterator, Sequence

from . import multiindex as mi
from .errors import IndexOutOfRange, MismatchedContext, NonZPure, SingularMatrix
from .fields import QQ, Field, field_from_tag

# Set OPIMAGE_DEBUG=1 to scan every constructed value for stored zeros.
DEBUG = bool(os.environ.get("OPIMAGE_DEBUG"))


def _check_block(block: str) -> str:
    if block in ("z", "u"):
        return block
    if block == "xi":
        return "u"
    raise ValueError(f"block must be 'z' or 'u', got {block!r}")


def _monomial_text(zexp, uexp, zsym="z", usym="u") -> str:
    parts = []
    for sym, exps in ((usym, uexp), (zsym, zexp)):
        for i, e in enumerate(exps):
            if e == 1:
                parts.append(f"{sym}{i + 1}")
            elif e:
                parts.append(f"{sym}{i + 1}^{e}")
    return "*".join(parts)


def _join_terms(field: Field, items) -> str:
    """items: iterable of (coeff, monomial_text)."""
    out = []
    for coeff, mono in items:
        neg, mag = field.coeff_text(coeff)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            if neg:
                body = "-" + body if body[0].isdigit() else "-1*" + body
            out.append(body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


class Poly:
    """Polynomial in ``z_1..z_n`` and ``xi_1..xi_n`` over an exact field."""

    __slots__ = ("nvars", "field", "_terms", "_hash")

    def __init__(self, nvars: int, field: Field = QQ, terms=None):
        """``terms`` maps ``(zexp, uexp)`` pairs to coefficients."""
        if nvars < 1:
            raise ValueError("nvars must be positive")
        self.nvars = nvars
        self.field = field
        self._hash = None
        out = {}
        for (zexp, uexp), c in (terms or {}).items():
            zexp, uexp = tuple(zexp), tuple(uexp)
            if len(zexp) != nvars or len(uexp) != nvars:
                raise IndexOutOfRange("exponent length does not match nvars")
            if min(zexp + uexp, default=0) < 0:
                raise ValueError("negative exponent in a polynomial")
            key = zexp + uexp
            c = out.get(key, field.zero) + field(c)
            if c:
                out[key] = c
            else:
                out.pop(key, None)
        self._terms = out

    @classmethod
    def _raw(cls, nvars, field, terms):
        """Wrap a canonical flat-key dict without copying."""
        p = object.__new__(cls)
        p.nvars = nvars
        p.field = field
        p._terms = terms
        p._hash = None
        if DEBUG:
            p.check_canonical()
        return p

    @classmethod
    def _strip(cls, nvars, field, terms):
        return cls._raw(nvars, field, {k: c for k, c in terms.items() if c})

    # constructors

    @classmethod
    def zero(cls, nvars, field=QQ):
        return cls._raw(nvars, field, {})

    @classmethod
    def const(cls, nvars, c, field=QQ):
        c = field(c)
        return cls._raw(nvars, field, {(0,) * (2 * nvars): c} if c else {})

    @classmethod
    def one(cls, nvars, field=QQ):
        return cls.const(nvars, 1, field)

    @classmethod
    def z(cls, nvars, i, field=QQ):
        """The variable z_{i+1} (0-based index)."""
        return cls.monomial(nvars, mi.unit(nvars, i), (0,) * nvars, field=field)

    @classmethod
    def u(cls, nvars, i, field=QQ):
        """The variable xi_{i+1} (0-based index)."""
        return cls.monomial(nvars, (0,) * nvars, mi.unit(nvars, i), field=field)

    @classmethod
    def monomial(cls, nvars, zexp, uexp=None, c=1, field=QQ):
        uexp = (0,) * nvars if uexp is None else tuple(uexp)
        return cls(nvars, field, {(tuple(zexp), uexp): c})

    @classmethod
    def from_terms(cls, nvars, field, terms: Iterable):
        """Build from ``(zexp, uexp, coeff)`` triples; duplicates are summed."""
        acc = {}
        for zexp, uexp, c in terms:
            key = (tuple(zexp), tuple(uexp))
            acc[key] = acc.get(key, field.zero) + field(c)
        return cls(nvars, field, acc)

    # inspection

    def check_canonical(self):
        n2 = 2 * self.nvars
        for k, c in self._terms.items():
            if not c:
                raise AssertionError(f"stored zero coefficient at {k}")
            if len(k) != n2:
                raise AssertionError(f"bad key length at {k}")

    def terms(self) -> Iterator[tuple]:
        """Yield ``(zexp, uexp, coeff)`` in decreasing graded-lex order."""
        n = self.nvars
        for k in sorted(self._terms, key=lambda k: (sum(k), k), reverse=True):
            yield k[:n], k[n:], self._terms[k]

    def items(self):
        """Raw ``(flat_key, coeff)`` pairs, unordered."""
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return (self.nvars == other.nvars and self.field == other.field
                    and self._terms == other._terms)
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.field, frozenset(self._terms.items())))
        return self._hash

    def coefficient(self, zexp, uexp=None):
        uexp = (0,) * self.nvars if uexp is None else tuple(uexp)
        if len(zexp) != self.nvars or len(uexp) != self.nvars:
            raise IndexOutOfRange("exponent length does not match nvars")
        return self._terms.get(tuple(zexp) + uexp, self.field.zero)

    def _block_degree(self, lo, hi):
        return max((sum(k[lo:hi]) for k in self._terms), default=-1)

    @property
    def deg_z(self) -> int:
        """Total degree in z; -1 for the zero polynomial."""
        return self._block_degree(0, self.nvars)

    @property
    def deg_u(self) -> int:
        """Total degree in xi; -1 for the zero polynomial."""
        return self._block_degree(self.nvars, 2 * self.nvars)

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(k) for k in self._terms), default=-1)

    def max_exponents(self, block="z") -> tuple:
        """Componentwise maximum exponent in the chosen block."""
        n = self.nvars
        off = 0 if _check_block(block) == "z" else n
        out = [0] * n
        for k in self._terms:
            for i in range(n):
                if k[off + i] > out[i]:
                    out[i] = k[off + i]
        return tuple(out)

    def is_pure_z(self) -> bool:
        n = self.nvars
        return all(not any(k[n:]) for k in self._terms)

    def is_pure_u(self) -> bool:
        n = self.nvars
        return all(not any(k[:n]) for k in self._terms)

    def is_constant(self) -> bool:
        return all(not any(k) for k in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * (2 * self.nvars), self.field.zero)

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self._terms}) <= 1

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars or other.field != self.field:
                raise MismatchedContext(
                    f"({self.nvars}, {self.field.tag}) vs ({other.nvars}, {other.field.tag})")
            return other
        try:
            return Poly.const(self.nvars, other, self.field)
        except (TypeError, ValueError, MismatchedContext):
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for k, c in b.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Poly._raw(self.nvars, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, self.field, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        c = self.field(c)
        if not c:
            return Poly.zero(self.nvars, self.field)
        return Poly._strip(self.nvars, self.field, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except (TypeError, ValueError, MismatchedContext):
                return NotImplemented
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = tuple(map(_add, ka, kb))
                if k in out:
                    out[k] = out[k] + ca * cb
                else:
                    out[k] = ca * cb
        return Poly._strip(self.nvars, self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = Poly.one(self.nvars, self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # calculus

    def diff(self, i: int, block: str = "z") -> "Poly":
        """Partial derivative in z_{i+1} (or xi_{i+1} for block 'u')."""
        block = _check_block(block)
        if not 0 <= i < self.nvars:
            raise IndexOutOfRange(f"variable index {i} outside 0..{self.nvars - 1}")
        pos = i if block == "z" else self.nvars + i
        out = {}
        for k, c in self._terms.items():
            e = k[pos]
            if e:
                nk = k[:pos] + (e - 1,) + k[pos + 1:]
                out[nk] = c * e
        return Poly._strip(self.nvars, self.field, out)

    def diff_multi(self, alpha, block: str = "z") -> "Poly":
        """d^alpha in the chosen block, computed termwise."""
        block = _check_block(block)
        n = self.nvars
        off = 0 if block == "z" else n
        alpha = tuple(alpha)
        out = {}
        for k, c in self._terms.items():
            f = mi.falling(k[off:off + n], alpha)
            if f:
                nk = list(k)
                for j in range(n):
                    nk[off + j] -= alpha[j]
                out[tuple(nk)] = c * f
        return Poly._strip(n, self.field, out)

    def gradient(self) -> list:
        return [self.diff(i) for i in range(self.nvars)]

    def truncate(self, d: int) -> "Poly":
        """Drop terms of total degree > d."""
        return Poly._raw(self.nvars, self.field,
                         {k: c for k, c in self._terms.items() if sum(k) <= d})

    def homogeneous_component(self, d: int) -> "Poly":
        return Poly._raw(self.nvars, self.field,
                         {k: c for k, c in self._terms.items() if sum(k) == d})

    def split_u(self) -> dict:
        """Group as ``{uexp: pure-z Poly}``."""
        n = self.nvars
        groups = {}
        for k, c in self._terms.items():
            groups.setdefault(k[n:], {})[k[:n] + (0,) * n] = c
        return {ue: Poly._raw(n, self.field, t) for ue, t in groups.items()}

    def swap_blocks(self) -> "Poly":
        """Exchange the roles of z and xi."""
        n = self.nvars
        return Poly._raw(n, self.field, {k[n:] + k[:n]: c for k, c in self._terms.items()})

    def map_coeffs(self, fn, field=None) -> "Poly":
        field = field or self.field
        return Poly._strip(self.nvars, field, {k: field(fn(c)) for k, c in self._terms.items()})

    # text and JSON

    def __str__(self):
        field = self.field
        return _join_terms(field, ((c, _monomial_text(z, u)) for z, u, c in self.terms()))

    def __repr__(self):
        return f"Poly({self.nvars}, {self.field.tag}, {str(self)!r})"

    def to_json(self) -> dict:
        fj = self.field.coeff_to_json
        return {
            "nvars": self.nvars,
            "field": self.field.tag,
            "terms": [{"coeff": fj(c), "zexp": list(z), "uexp": list(u)}
                      for z, u, c in self.terms()],
        }

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None) -> "Poly":
        field = field or field_from_tag(obj["field"])
        n = int(obj["nvars"])
        return cls.from_terms(n, field, (
            (t["zexp"], t.get("uexp", [0] * n), field.coeff_from_json(t["coeff"]))
            for t in obj["terms"]))


class LaurentPoly:
    """Laurent polynomial in n variables; exponents may be negative.

    ``symbol`` only affects printing (``z`` by default, ``u`` for Laplace
    transforms, which live in the xi variables).
    """

    __slots__ = ("nvars", "field", "_terms", "symbol")

    def __init__(self, nvars: int, field: Field = QQ, terms=None, symbol: str = "z"):
        self.nvars = nvars
        self.field = field
        self.symbol = symbol
        out = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise IndexOutOfRange("exponent length does not match nvars")
            c = out.get(e, field.zero) + field(c)
            if c:
                out[e] = c
            else:
                out.pop(e, None)
        self._terms = out

    @classmethod
    def _raw(cls, nvars, field, terms, symbol="z"):
        p = object.__new__(cls)
        p.nvars, p.field, p._terms, p.symbol = nvars, field, terms, symbol
        if DEBUG:
            p.check_canonical()
        return p

    def check_canonical(self):
        for k, c in self._terms.items():
            if not c:
                raise AssertionError(f"stored zero coefficient at {k}")

    def terms(self):
        for k in sorted(self._terms, key=lambda k: (sum(k), k), reverse=True):
            yield k, self._terms[k]

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.field(other)
            return self._terms == ({(0,) * self.nvars: c} if c else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.nvars == other.nvars and self.field == other.field
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.nvars, self.field, frozenset(self._terms.items())))

    def _coerce(self, other):
        if isinstance(other, Poly):
            if not other.is_pure_z():
                raise NonZPure("cannot mix xi terms into a Laurent polynomial")
            other = LaurentPoly._raw(other.nvars, other.field,
                                     {k[:other.nvars]: c for k, c in other.items()},
                                     self.symbol)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.nvars != self.nvars or other.field != self.field:
            raise MismatchedContext("Laurent operands differ in nvars or field")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, self.field.zero) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(self.nvars, self.field, out, self.symbol)

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, self.field,
                                {k: -c for k, c in self._terms.items()}, self.symbol)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (LaurentPoly, Poly)):
            other = self._coerce(other)
            out = {}
            for ka, ca in self._terms.items():
                for kb, cb in other._terms.items():
                    k = tuple(map(_add, ka, kb))
                    out[k] = out.get(k, self.field.zero) + ca * cb
            return LaurentPoly._raw(self.nvars, self.field,
                                    {k: c for k, c in out.items() if c}, self.symbol)
        c = self.field(other)
        return LaurentPoly._raw(self.nvars, self.field,
                                {k: v * c for k, v in self._terms.items() if v * c},
                                self.symbol)

    __rmul__ = __mul__

    def coefficient(self, exps):
        if len(exps) != self.nvars:
            raise IndexOutOfRange("exponent length does not match nvars")
        return self._terms.get(tuple(exps), self.field.zero)

    def holomorphic_part(self) -> Poly:
        n = self.nvars
        return Poly._raw(n, self.field, {k + (0,) * n: c for k, c in self._terms.items()
                                         if min(k) >= 0})

    def part(self, predicate) -> "LaurentPoly":
        """Sub-sum over exponent vectors satisfying ``predicate``."""
        return LaurentPoly._raw(self.nvars, self.field,
                                {k: c for k, c in self._terms.items() if predicate(k)},
                                self.symbol)

    def __str__(self):
        def mono(k):
            parts = []
            for i, e in enumerate(k):
                if e == 1:
                    parts.append(f"{self.symbol}{i + 1}")
                elif e:
                    parts.append(f"{self.symbol}{i + 1}^{e}")
            return "*".join(parts)
        return _join_terms(self.field, ((c, mono(k)) for k, c in self.terms()))

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self.field.tag}, {str(self)!r})"

    def to_json(self) -> dict:
        fj = self.field.coeff_to_json
        return {"nvars": self.nvars, "field": self.field.tag,
                "terms": [{"coeff": fj(c), "zexp": list(k)} for k, c in self.terms()]}

    @classmethod
    def from_json(cls, obj, field=None, symbol="z"):
        field = field or field_from_tag(obj["field"])
        n = int(obj["nvars"])
        acc = {}
        for t in obj["terms"]:
            k = tuple(t["zexp"])
            acc[k] = acc.get(k, field.zero) + field.coeff_from_json(t["coeff"])
        return cls(n, field, acc, symbol)


# Functional API ----------------------------------------------------------


def poly_add(a: Poly, b: Poly) -> Poly:
    if not isinstance(b, Poly):
        raise MismatchedContext("poly_add needs two polynomials")
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not isinstance(b, Poly):
        raise MismatchedContext("poly_mul needs two polynomials")
    return a * b


def partial_derivative(f: Poly, block: str, i: int) -> Poly:
    return f.diff(i, block)


def coefficient_of(f, zexp, uexp=None):
    if isinstance(f, LaurentPoly):
        return f.coefficient(zexp)
    return f.coefficient(zexp, uexp)


def holomorphic_part(q: LaurentPoly) -> Poly:
    return q.holomorphic_part()


def _linear_form_powers(n, field, row, block, max_e):
    """[l^0, l^1, ..., l^max_e] for the linear form sum_j row[j] * var_j."""
    ctor = Poly.z if block == "z" else Poly.u
    form = Poly.zero(n, field)
    for j, a in enumerate(row):
        if a:
            form = form + ctor(n, j, field) * a
    pows = [Poly.one(n, field)]
    for _ in range(max_e):
        pows.append(pows[-1] * form)
    return pows


def substitute_linear(f: Poly, M: Sequence[Sequence], block: str = "z") -> Poly:
    """Replace each variable v_i of ``block`` by ``sum_j M[i][j] v_j``."""
    from .linalg import det

    block = _check_block(block)
    n, field = f.nvars, f.field
    M = [[field(x) for x in row] for row in M]
    if len(M) != n or any(len(row) != n for row in M):
        raise MismatchedContext(f"matrix must be {n}x{n}")
    if not det(M, field):
        raise SingularMatrix("coordinate change is not invertible")
    off = 0 if block == "z" else n
    maxe = f.max_exponents(block)
    pows = [_linear_form_powers(n, field, M[i], block, maxe[i]) for i in range(n)]
    acc = {}
    for k, c in f.items():
        rest = list(k)
        for i in range(n):
            rest[off + i] = 0
        term = Poly._raw(n, field, {tuple(rest): c})
        for i in range(n):
            e = k[off + i]
            if e:
                term = term * pows[i][e]
        for kk, cc in term.items():
            acc[kk] = acc.get(kk, field.zero) + cc
    return Poly._strip(n, field, acc)


def substitute_poly(f: Poly, subs: Sequence[Poly]) -> Poly:
    """Compose: ``f(subs[0], ..., subs[n-1])`` for pure-z ``f``."""
    n, field = f.nvars, f.field
    if not f.is_pure_z():
        raise NonZPure("substitute_poly needs a polynomial free of xi")
    if len(subs) != n:
        raise MismatchedContext(f"need {n} substitutions, got {len(subs)}")
    tgt_n = subs[0].nvars if subs else n
    for s in subs:
        if s.nvars != tgt_n or s.field != field:
            raise MismatchedContext("substitutions differ in nvars or field")
    maxe = f.max_exponents("z")
    pows = []
    for i in range(n):
        p = [Poly.one(tgt_n, field)]
        for _ in range(maxe[i]):
            p.append(p[-1] * subs[i])
        pows.append(p)
    acc = {}
    for k, c in f.items():
        term = Poly.const(tgt_n, c, field)
        for i in range(n):
            if k[i]:
                term = term * pows[i][k[i]]
        for kk, cc in term.items():
            acc[kk] = acc.get(kk, field.zero) + cc
    return Poly._strip(tgt_n, field, acc)
