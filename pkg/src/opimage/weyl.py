"""First-order differential operators and reduction of commuting families.

Operators act on ``Poly`` values (elements of C[xi][z]); derivatives are
always taken in the z variables, and the xi variables behave as scalars.
Operator indices and variable indices are 0-based throughout the Python
API.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (AllZeroOrder, IndexOutOfRange, MismatchedContext, NonCommuting,
                     NonConstantLeading, NotIntegrable, PositiveCharacteristic)
from .fields import QQ, Field
from .poly import Poly, substitute_linear


class FirstOrderOp:
    """``sum_i leading[i] * d_i + zero_order``."""

    __slots__ = ("nvars", "field", "leading", "zero_order")

    def __init__(self, leading: Sequence[Poly], zero_order: Poly):
        leading = tuple(leading)
        n, fld = zero_order.nvars, zero_order.field
        if len(leading) != n:
            raise MismatchedContext(f"need {n} leading coefficients, got {len(leading)}")
        for a in leading:
            if a.nvars != n or a.field != fld:
                raise MismatchedContext("leading coefficient lives in another ring")
        self.nvars = n
        self.field = fld
        self.leading = leading
        self.zero_order = zero_order

    @classmethod
    def constant(cls, vector, zero_order: Poly) -> "FirstOrderOp":
        """Operator with constant leading vector."""
        n, fld = zero_order.nvars, zero_order.field
        return cls([Poly.const(n, c, fld) for c in vector], zero_order)

    @classmethod
    def theta(cls, n: int, i: int, field: Field = QQ) -> "FirstOrderOp":
        """xi_i - d_i."""
        vec = [0] * n
        vec[i] = -1
        return cls.constant(vec, Poly.u(n, i, field))

    @classmethod
    def gradient_op(cls, q: Poly, i: int) -> "FirstOrderOp":
        """d_i - d_i(q)."""
        vec = [0] * q.nvars
        vec[i] = 1
        return cls.constant(vec, -q.diff(i))

    @classmethod
    def multiplication(cls, g: Poly) -> "FirstOrderOp":
        return cls.constant([0] * g.nvars, g)

    def is_constant_leading(self) -> bool:
        return all(a.is_constant() for a in self.leading)

    def leading_vector(self) -> list:
        if not self.is_constant_leading():
            raise NonConstantLeading("leading coefficients are not constants")
        return [a.constant_value() for a in self.leading]

    def is_zero_order(self) -> bool:
        return not any(self.leading)

    def __call__(self, f: Poly) -> Poly:
        return apply_op(self, f)

    def __eq__(self, other):
        if not isinstance(other, FirstOrderOp):
            return NotImplemented
        return self.leading == other.leading and self.zero_order == other.zero_order

    def __hash__(self):
        return hash((self.leading, self.zero_order))

    def __add__(self, other):
        return FirstOrderOp([a + b for a, b in zip(self.leading, other.leading)],
                            self.zero_order + other.zero_order)

    def __neg__(self):
        return FirstOrderOp([-a for a in self.leading], -self.zero_order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FirstOrderOp":
        return FirstOrderOp([a * c for a in self.leading], self.zero_order * c)

    def __str__(self):
        parts = []
        for i, a in enumerate(self.leading):
            if a:
                parts.append(f"({a})*d{i + 1}")
        if self.zero_order or not parts:
            parts.append(f"({self.zero_order})")
        return " + ".join(parts)

    def __repr__(self):
        return f"FirstOrderOp({self})"

    def to_json(self) -> dict:
        return {"leading": [a.to_json() for a in self.leading],
                "zero_order": self.zero_order.to_json()}

    @classmethod
    def from_json(cls, obj) -> "FirstOrderOp":
        return cls([Poly.from_json(a) for a in obj["leading"]],
                   Poly.from_json(obj["zero_order"]))


class ConstCoeffOp:
    """Lambda(d) for a symbol Lambda(xi) with constant coefficients."""

    __slots__ = ("symbol",)

    def __init__(self, symbol: Poly):
        if not symbol.is_pure_u():
            raise ValueError("symbol must only involve the xi (u) variables")
        self.symbol = symbol

    @property
    def nvars(self):
        return self.symbol.nvars

    @property
    def field(self):
        return self.symbol.field

    @classmethod
    def laplacian(cls, n: int, field: Field = QQ) -> "ConstCoeffOp":
        s = Poly.zero(n, field)
        for i in range(n):
            s = s + Poly.u(n, i, field) ** 2
        return cls(s)

    def __call__(self, f: Poly) -> Poly:
        return apply_symbol(self.symbol, f)

    def __mul__(self, other: "ConstCoeffOp") -> "ConstCoeffOp":
        return ConstCoeffOp(self.symbol * other.symbol)

    def __pow__(self, m: int) -> "ConstCoeffOp":
        return ConstCoeffOp(self.symbol ** m)

    def __repr__(self):
        return f"ConstCoeffOp({self.symbol})"

    def to_json(self) -> dict:
        return {"symbol": self.symbol.to_json()}

    @classmethod
    def from_json(cls, obj) -> "ConstCoeffOp":
        return cls(Poly.from_json(obj["symbol"]))


def _same_ring(a, b):
    if a.nvars != b.nvars or a.field != b.field:
        raise MismatchedContext("operator and polynomial live in different rings")


def apply_op(op: FirstOrderOp, f: Poly) -> Poly:
    _same_ring(op, f)
    out = op.zero_order * f
    for i, a in enumerate(op.leading):
        if a:
            out = out + a * f.diff(i)
    return out


def apply_symbol(symbol: Poly, f: Poly) -> Poly:
    """Lambda(d) f where Lambda(xi) = symbol."""
    _same_ring(symbol, f)
    n = symbol.nvars
    acc = {}
    zero = f.field.zero
    for _, alpha, c in symbol.terms():
        for k, v in f.diff_multi(alpha).items():
            acc[k] = acc.get(k, zero) + c * v
    return Poly._strip(n, f.field, acc)


def apply_lambda(op: ConstCoeffOp, f: Poly, power: int = 1, method: str = "iterate") -> Poly:
    """Lambda(d)^power f, by repeated application or via the symbol power."""
    if power < 1:
        raise ValueError("power must be >= 1")
    if method == "symbol":
        return apply_symbol(op.symbol ** power, f)
    if method != "iterate":
        raise ValueError(f"unknown method {method!r}")
    for _ in range(power):
        f = apply_symbol(op.symbol, f)
        if not f:
            break
    return f


def directional(vec, h: Poly) -> Poly:
    """sum_i vec[i] * d_i h."""
    out = Poly.zero(h.nvars, h.field)
    for i, c in enumerate(vec):
        if c:
            out = out + h.diff(i) * c
    return out


def commutator_first_order(A: FirstOrderOp, B: FirstOrderOp) -> FirstOrderOp:
    """[A, B] for constant-leading A, B; always a multiplication operator."""
    _same_ring(A, B)
    u, v = A.leading_vector(), B.leading_vector()
    g = directional(u, B.zero_order) - directional(v, A.zero_order)
    return FirstOrderOp.multiplication(g)


def is_commuting_family(ops: Sequence[FirstOrderOp]):
    """Return ``(True, None)`` or ``(False, (i, j))`` for the first failing pair."""
    for op in ops:
        if not op.is_constant_leading():
            raise NonConstantLeading("commutation test needs constant leading coefficients")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if commutator_first_order(ops[i], ops[j]).zero_order:
                return False, (i, j)
    return True, None


def recover_potential(h: Sequence[Poly], k: int | None = None) -> Poly:
    """q with d_i q = h[i] for the first ``k = len(h)`` variables.

    Uses the radial homotopy formula in z' = (z_1..z_k) with the remaining
    variables frozen, so q vanishes on z' = 0.
    """
    if not h:
        raise ValueError("need at least one component")
    k = len(h) if k is None else k
    n, fld = h[0].nvars, h[0].field
    if fld.characteristic:
        raise PositiveCharacteristic("potential recovery needs characteristic zero")
    if k > n:
        raise IndexOutOfRange(f"{k} components for {n} variables")
    for i in range(k):
        for j in range(i + 1, k):
            if h[i].diff(j) != h[j].diff(i):
                raise NotIntegrable((i, j))
    acc = {}
    for i in range(k):
        for key, c in h[i].items():
            d = sum(key[:k])
            nk = key[:i] + (key[i] + 1,) + key[i + 1:]
            acc[nk] = acc.get(nk, fld.zero) + c * Fraction(1, d + 1)
    q = Poly._strip(n, fld, acc)
    for i in range(k):
        if q.diff(i) != h[i]:
            raise AssertionError("homotopy formula failed on an integrable input")
    return q


@dataclass
class ReducedFamily:
    """Normal form of a commuting constant-leading family.

    In the coordinates ``w`` with ``z = coord_change @ w`` the family has the
    same image as ``{d_j - d_j(q) : j < k}`` together with multiplication by
    the ``zero_order_gens``, none of which involves w_1..w_k.
    """

    k: int
    coord_change: list
    q: Poly
    zero_order_gens: list
    pivot_ops: list = dc_field(default_factory=list)

    def reduced_ops(self) -> list:
        ops = [FirstOrderOp.gradient_op(self.q, j) for j in range(self.k)]
        return ops + [FirstOrderOp.multiplication(g) for g in self.zero_order_gens]

    def to_json(self) -> dict:
        fld = self.q.field
        return {
            "k": self.k,
            "coord_change": [[fld.coeff_to_json(fld(x)) for x in row] for row in self.coord_change],
            "q": self.q.to_json(),
            "zero_order_gens": [g.to_json() for g in self.zero_order_gens],
            "pivot_ops": list(self.pivot_ops),
        }


def transform_op(op: FirstOrderOp, M) -> FirstOrderOp:
    """Rewrite a constant-leading operator in coordinates z = M w."""
    fld = op.field
    Minv = linalg.inverse(M, fld)
    vec = linalg.mat_vec(Minv, op.leading_vector(), fld)
    return FirstOrderOp.constant(vec, substitute_linear(op.zero_order, M, "z"))


def reduce_family(ops: Sequence[FirstOrderOp]) -> ReducedFamily:
    if not ops:
        raise AllZeroOrder("empty family")
    n, fld = ops[0].nvars, ops[0].field
    ok, pair = is_commuting_family(ops)
    if not ok:
        raise NonCommuting(pair)
    vectors = [op.leading_vector() for op in ops]

    ech = linalg.Echelon(fld, track=False)
    pivots = []
    for idx, v in enumerate(vectors):
        if ech.add({i: c for i, c in enumerate(v) if c}):
            pivots.append(idx)
    k = len(pivots)
    if k == 0:
        raise AllZeroOrder("family contains no order-one operator")

    columns = [vectors[p] for p in pivots]
    for i in range(n):
        if len(columns) == n:
            break
        if ech.add({i: fld.one}):
            columns.append([fld.one if j == i else fld.zero for j in range(n)])
    M = [[columns[j][i] for j in range(n)] for i in range(n)]

    transformed = [transform_op(op, M) for op in ops]
    lead = [t.leading_vector() for t in transformed]
    hs = [-transformed[p].zero_order for p in pivots]
    q = recover_potential(hs)

    gens = []
    for idx, t in enumerate(transformed):
        if idx in pivots:
            continue
        g = t.zero_order
        for j, p in enumerate(pivots):
            a = lead[idx][j]
            if a:
                g = g - transformed[p].zero_order * a
        if g:
            gens.append(g)
    for g in gens:
        for j in range(k):
            if g.diff(j):
                raise AssertionError("zero-order generator depends on a reduced variable")
    return ReducedFamily(k=k, coord_change=M, q=q, zero_order_gens=gens, pivot_ops=pivots)
