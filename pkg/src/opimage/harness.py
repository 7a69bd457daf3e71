"""Finite instance checks for the vanishing/image/Jacobian equivalences.

Nothing here proves anything: each driver computes exact boolean tables up
to a chosen power ``M`` and cross-checks the two sides of an equivalence
entry by entry.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from . import multiindex as mi
from .errors import (MismatchedContext, NotHomogeneous, NotUnimodular,
                     OracleDisagreement, PositiveCharacteristic)
from .image import member_theta
from .poly import Poly, substitute_poly
from .weyl import ConstCoeffOp, apply_lambda


class PolyMap:
    """Polynomial self-map z -> (F_1(z), ..., F_n(z)) with pure-z components."""

    __slots__ = ("nvars", "field", "components")

    def __init__(self, components: Sequence[Poly]):
        components = tuple(components)
        if not components:
            raise ValueError("empty map")
        n, fld = components[0].nvars, components[0].field
        if len(components) != n:
            raise MismatchedContext(f"{len(components)} components for {n} variables")
        for c in components:
            if c.nvars != n or c.field != fld:
                raise MismatchedContext("components live in different rings")
            if not c.is_pure_z():
                raise ValueError("map components must be free of xi")
        self.nvars, self.field, self.components = n, fld, components

    @classmethod
    def identity(cls, n, field):
        return cls([Poly.z(n, i, field) for i in range(n)])

    @classmethod
    def zero(cls, n, field):
        return cls([Poly.zero(n, field) for _ in range(n)])

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return self.nvars

    def __eq__(self, other):
        return isinstance(other, PolyMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __add__(self, other):
        return PolyMap([a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        return PolyMap([a - b for a, b in zip(self, other)])

    def __call__(self, other: "PolyMap") -> "PolyMap":
        """Composition self(other(z))."""
        return PolyMap([substitute_poly(c, list(other)) for c in self])

    def truncate(self, d: int) -> "PolyMap":
        return PolyMap([c.truncate(d) for c in self])

    def homogeneous_degree(self) -> int | None:
        """Common degree of all nonzero components; None for the zero map."""
        degs = set()
        for c in self:
            if c:
                if not c.is_homogeneous():
                    raise NotHomogeneous(f"component {c} is not homogeneous")
                degs.add(c.degree)
        if len(degs) > 1:
            raise NotHomogeneous(f"components have degrees {sorted(degs)}")
        return degs.pop() if degs else None

    def jacobian_matrix(self) -> list:
        return [[c.diff(j) for j in range(self.nvars)] for c in self]

    def jacobian_det(self) -> Poly:
        return poly_det(self.jacobian_matrix())

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self) + ")"

    def __repr__(self):
        return f"PolyMap{self}"

    def to_json(self) -> dict:
        return {"components": [c.to_json() for c in self]}

    @classmethod
    def from_json(cls, obj) -> "PolyMap":
        return cls([Poly.from_json(c) for c in obj["components"]])


# polynomial matrices -----------------------------------------------------


def poly_det(M: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by Laplace expansion memoised over column subsets."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    memo = {}

    def minor(row, cols):
        if row == n:
            return Poly.one(M[0][0].nvars, M[0][0].field)
        key = (row, cols)
        if key in memo:
            return memo[key]
        out = Poly.zero(M[0][0].nvars, M[0][0].field)
        sign = 1
        for j in range(n):
            if cols & (1 << j):
                continue
            if M[row][j]:
                sub = minor(row + 1, cols | (1 << j))
                if sub:
                    term = M[row][j] * sub
                    out = out + term if sign > 0 else out - term
            sign = -sign
        memo[key] = out
        return out

    return minor(0, 0)


def mat_mul(A, B) -> list:
    n, m, p = len(A), len(B), len(B[0])
    zero = Poly.zero(A[0][0].nvars, A[0][0].field)
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = zero
            for k in range(m):
                if A[i][k] and B[k][j]:
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def is_zero_matrix(M) -> bool:
    return all(not x for row in M for x in row)


def hessian_matrix(P: Poly) -> list:
    n = P.nvars
    grad = P.gradient()
    return [[grad[i].diff(j) for j in range(n)] for i in range(n)]


def is_nilpotent_matrix(M) -> bool:
    """M^n == 0 for an n x n polynomial matrix (Cayley-Hamilton bound)."""
    n = len(M)
    power = M
    for _ in range(n - 1):
        if is_zero_matrix(power):
            return True
        power = mat_mul(power, M)
    return is_zero_matrix(power)


def matrix_to_json(M) -> list:
    return [[x.to_json() for x in row] for row in M]


def matrix_text(M) -> str:
    return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in M)


# reports -----------------------------------------------------------------


def stable_threshold(flags: Sequence[bool]) -> int | None:
    """Least m0 (1-based) with flags true for every m >= m0; None if the last is false."""
    m0 = None
    for m in range(len(flags), 0, -1):
        if not flags[m - 1]:
            break
        m0 = m
    return m0


@dataclass
class VCReport:
    lam: ConstCoeffOp
    P: Poly
    Q: Poly
    hypothesis: list
    conclusion: list
    timings_ms: list = dc_field(default_factory=list)

    @property
    def hypothesis_violated(self) -> bool:
        return not all(self.hypothesis)

    @property
    def threshold(self) -> int | None:
        return stable_threshold(self.conclusion)

    def to_json(self) -> dict:
        return {
            "instance": {"kind": "vc", "lambda": self.lam.to_json(),
                         "P": self.P.to_json(), "Q": self.Q.to_json()},
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "threshold": self.threshold,
            "hypothesis_violated": self.hypothesis_violated,
            "timings_ms": self.timings_ms,
        }


@dataclass
class ICReport:
    f: Poly
    g: Poly
    hypothesis: list
    conclusion: list
    timings_ms: list = dc_field(default_factory=list)

    @property
    def hypothesis_violated(self) -> bool:
        return not all(self.hypothesis)

    @property
    def threshold(self) -> int | None:
        return stable_threshold(self.conclusion)

    def to_json(self) -> dict:
        return {
            "instance": {"kind": "ic", "f": self.f.to_json(), "g": self.g.to_json()},
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "threshold": self.threshold,
            "hypothesis_violated": self.hypothesis_violated,
            "timings_ms": self.timings_ms,
        }


def _ms(t0):
    return round((time.perf_counter() - t0) * 1000, 3)


def vc_check(lam: ConstCoeffOp, P: Poly, Q: Poly, M: int) -> VCReport:
    """Tabulate Lambda^m(P^m) == 0 and Lambda^m(P^m Q) == 0 for m = 1..M.

    Each entry is cross-checked against membership of Lambda(xi)^m P^m
    (resp. times Q) in im Theta.
    """
    if P.field.characteristic:
        raise PositiveCharacteristic("vc_check needs characteristic zero")
    if M < 1:
        raise ValueError("M must be >= 1")
    hyp, con, times = [], [], []
    Pm = Poly.one(P.nvars, P.field)
    Lm = Poly.one(P.nvars, P.field)
    for m in range(1, M + 1):
        t0 = time.perf_counter()
        Pm = Pm * P
        Lm = Lm * lam.symbol
        h = not apply_lambda(lam, Pm, m)
        c = not apply_lambda(lam, Pm * Q, m)
        if member_theta(Lm * Pm).is_member != h or member_theta(Lm * Pm * Q).is_member != c:
            raise OracleDisagreement(f"vanishing and image criteria disagree at m={m}")
        hyp.append(h)
        con.append(c)
        times.append(_ms(t0))
    return VCReport(lam, P, Q, hyp, con, times)


def ic_instance_check(f: Poly, g: Poly, M: int) -> ICReport:
    """Tabulate f^m in im Theta and f^m g in im Theta for m = 1..M."""
    if M < 1:
        raise ValueError("M must be >= 1")
    hyp, con, times = [], [], []
    fm = Poly.one(f.nvars, f.field)
    for m in range(1, M + 1):
        t0 = time.perf_counter()
        fm = fm * f
        hyp.append(member_theta(fm).is_member)
        con.append(member_theta(fm * g).is_member)
        times.append(_ms(t0))
    return ICReport(f, g, hyp, con, times)


def _power_cache(H: PolyMap):
    cache = [[Poly.one(H.nvars, H.field)] for _ in range(H.nvars)]

    def power(i, e):
        lst = cache[i]
        while len(lst) <= e:
            lst.append(lst[-1] * H[i])
        return lst[e]

    return power


def inversion_term(H: PolyMap, m: int, g: Poly | None = None, _power=None) -> Poly:
    """sum_{|alpha| = m} (1/alpha!) d^alpha (H^alpha * g), with g = 1 by default."""
    n, fld = H.nvars, H.field
    power = _power or _power_cache(H)
    out = Poly.zero(n, fld)
    for alpha in mi.of_degree(n, m):
        Ha = Poly.one(n, fld)
        for i, a in enumerate(alpha):
            if a:
                Ha = Ha * power(i, a)
        if g is not None:
            Ha = Ha * g
        if Ha:
            out = out + Ha.diff_multi(alpha) * Fraction(1, mi.factorial(alpha))
    return out


def jc_power_sums(H: PolyMap, M: int) -> list:
    """[S_1, ..., S_M] with S_m = sum_{|alpha|=m} (1/alpha!) d^alpha(H^alpha)."""
    if H.field.characteristic:
        raise PositiveCharacteristic("power sums need characteristic zero")
    power = _power_cache(H)
    return [inversion_term(H, m, None, power) for m in range(1, M + 1)]


def jacobian_of_shift(H: PolyMap) -> Poly:
    """j(z - H)."""
    return (PolyMap.identity(H.nvars, H.field) - H).jacobian_det()


def ag_inverse(H: PolyMap, g: Poly | PolyMap | None = None, trunc_degree: int = 9):
    """g(G) truncated to ``trunc_degree``, where G is the formal inverse of z - H.

    ``g`` defaults to the identity map, in which case the result is G itself.
    H must be homogeneous of degree >= 2 with j(z - H) == 1.
    """
    n, fld = H.nvars, H.field
    if fld.characteristic:
        raise PositiveCharacteristic("inversion formula needs characteristic zero")
    d = H.homogeneous_degree()
    if d is not None and d < 2:
        raise NotHomogeneous("H must be homogeneous of degree >= 2")
    jac = jacobian_of_shift(H)
    if jac != 1:
        raise NotUnimodular(f"j(z - H) = {jac}")
    if g is None:
        g = PolyMap.identity(n, fld)
    if isinstance(g, PolyMap):
        return PolyMap([ag_inverse(H, c, trunc_degree) for c in g])

    if not g:
        return g
    power = _power_cache(H)
    base = jac * g
    low = base.min_degree()
    out = Poly.zero(n, fld)
    m = 0
    while True:
        if m and (d is None or low + m * (d - 1) > trunc_degree):
            break
        out = out + inversion_term(H, m, base, power).truncate(trunc_degree)
        m += 1
    return out
