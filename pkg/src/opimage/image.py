"""The image of Theta = (xi_i - d_i) in C[xi, z] and related maps.

``eval_E`` sends ``g(xi) h(z)`` to ``g(d) h(z)``; its kernel is exactly the
image of Theta.  ``eval_Z`` sends ``g(xi) z^beta`` to
``beta! g(1/z) z^beta``; f lies in the image iff that Laurent polynomial
has no holomorphic part.  Both criteria are run side by side in
:func:`member_theta`, and :func:`member_bruteforce` gives an independent,
linear-algebra route for arbitrary first-order operator families.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from . import linalg
from . import multiindex as mi
from .errors import OracleDisagreement, PositiveCharacteristic
from .poly import LaurentPoly, Poly
from .weyl import FirstOrderOp, apply_op


def _need_char0(f, what):
    if f.field.characteristic:
        raise PositiveCharacteristic(f"{what} needs a characteristic-zero field")


def theta_ops(n: int, field) -> list:
    return [FirstOrderOp.theta(n, i, field) for i in range(n)]


def apply_theta(f: Poly, i: int) -> Poly:
    """Theta_i f = xi_i f - d_i f."""
    return Poly.u(f.nvars, i, f.field) * f - f.diff(i)


def apply_theta_power(f: Poly, alpha) -> Poly:
    for i, a in enumerate(alpha):
        for _ in range(a):
            f = apply_theta(f, i)
    return f


def eval_E(f: Poly) -> Poly:
    n, fld = f.nvars, f.field
    acc = {}
    pad = (0,) * n
    for key, c in f.items():
        beta, alpha = key[:n], key[n:]
        coef = mi.falling(beta, alpha)
        if coef:
            nk = tuple(b - a for b, a in zip(beta, alpha)) + pad
            acc[nk] = acc.get(nk, fld.zero) + c * coef
    return Poly._strip(n, fld, acc)


def eval_Z(f: Poly) -> LaurentPoly:
    _need_char0(f, "the Laurent map")
    n, fld = f.nvars, f.field
    acc = {}
    for key, c in f.items():
        beta, alpha = key[:n], key[n:]
        nk = tuple(b - a for b, a in zip(beta, alpha))
        acc[nk] = acc.get(nk, fld.zero) + c * mi.factorial(beta)
    return LaurentPoly._raw(n, fld, {k: c for k, c in acc.items() if c})


def laplace_transform(f: Poly) -> LaurentPoly:
    """Laplace transform in z, as a Laurent polynomial in xi.

    Uses the closed form xi^[-1] * Z(f)(z = 1/xi); no integration happens.
    """
    _need_char0(f, "the Laplace transform")
    z = eval_Z(f)
    terms = {tuple(-e - 1 for e in k): c for k, c in z.items()}
    return LaurentPoly._raw(f.nvars, f.field, terms, symbol="u")


def laplace_negative_part(L: LaurentPoly) -> LaurentPoly:
    """The xi^[-1] C[1/xi] part: exponents all <= -1."""
    return L.part(lambda k: max(k) <= -1)


@dataclass
class TaylorDecomposition:
    """f = sum_alpha (1/alpha!) Theta^alpha a_alpha, with pure-z a_alpha."""

    nvars: int
    field: object
    coefficients: dict = dc_field(default_factory=dict)

    def a(self, alpha) -> Poly:
        return self.coefficients.get(tuple(alpha), Poly.zero(self.nvars, self.field))

    def reconstruct(self) -> Poly:
        out = Poly.zero(self.nvars, self.field)
        for alpha, a in self.coefficients.items():
            out = out + apply_theta_power(a, alpha) * Fraction(1, mi.factorial(alpha))
        return out

    def theta_witness(self) -> list:
        """u_i with f - a_0 = sum_i Theta_i u_i."""
        n, fld = self.nvars, self.field
        us = [Poly.zero(n, fld) for _ in range(n)]
        for alpha, a in self.coefficients.items():
            if not any(alpha):
                continue
            i = next(j for j, x in enumerate(alpha) if x)
            rest = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
            us[i] = us[i] + apply_theta_power(a, rest) * Fraction(1, mi.factorial(alpha))
        return us

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "field": self.field.tag,
                "coefficients": [{"alpha": list(al), "a": a.to_json()}
                                 for al, a in sorted(self.coefficients.items())]}


def twisted_taylor(f: Poly) -> TaylorDecomposition:
    _need_char0(f, "the twisted Taylor decomposition")
    n = f.nvars
    coeffs = {}
    for alpha in mi.box(f.max_exponents("u")):
        a = eval_E(f.diff_multi(alpha, "u"))
        if a:
            coeffs[tuple(alpha)] = a
    return TaylorDecomposition(n, f.field, coeffs)


@dataclass
class MembershipReport:
    is_member: bool
    e_value: Poly
    z_holomorphic: Poly
    witness: list | None = None

    def to_json(self) -> dict:
        return {
            "is_member": self.is_member,
            "e_value": self.e_value.to_json(),
            "z_holomorphic": self.z_holomorphic.to_json(),
            "witness": None if self.witness is None else [u.to_json() for u in self.witness],
        }


def member_theta(f: Poly, witness: bool = False) -> MembershipReport:
    """Decide f in im Theta by the E-kernel and the Z-holomorphic criteria."""
    _need_char0(f, "membership in im Theta")
    e = eval_E(f)
    zh = eval_Z(f).holomorphic_part()
    if bool(e) != bool(zh):
        raise OracleDisagreement(f"E(f) = {e} but hol(Z(f)) = {zh}")
    member = not e
    wit = None
    if witness and member:
        wit = twisted_taylor(f).theta_witness()
        total = Poly.zero(f.nvars, f.field)
        for i, u in enumerate(wit):
            total = total + apply_theta(u, i)
        if total != f:
            raise OracleDisagreement("Taylor witness does not reproduce f")
    return MembershipReport(member, e, zh, wit)


def theta_witness_bounds(f: Poly) -> tuple:
    """(D_z, D_u) large enough that a missing witness certifies non-membership."""
    du = f.deg_u
    return max(f.deg_z, 0) + max(du, 0), du - 1


def _monomials(n, dz, du):
    if dz < 0 or du < 0:
        return []
    return [(b, a) for a in mi.up_to_degree(n, du) for b in mi.up_to_degree(n, dz)]


def member_bruteforce(f: Poly, ops: Sequence[FirstOrderOp], deg_bound_z: int,
                      deg_bound_u: int = 0) -> list | None:
    """Search u_i with deg_z <= D_z, deg_u <= D_u and f = sum_i ops[i](u_i).

    Returns the witness list or None.  None only certifies non-membership
    when the bounds are known to be adequate for the family.
    """
    n, fld = f.nvars, f.field
    monos = _monomials(n, deg_bound_z, deg_bound_u)
    columns, labels = [], []
    for i, op in enumerate(ops):
        for beta, alpha in monos:
            img = apply_op(op, Poly.monomial(n, beta, alpha, field=fld))
            columns.append(dict(img.items()))
            labels.append((i, beta, alpha))
    if not f:
        return [Poly.zero(n, fld) for _ in ops]
    x = linalg.solve(columns, dict(f.items()), fld)
    if x is None:
        return None
    terms = [[] for _ in ops]
    for (i, beta, alpha), c in zip(labels, x):
        if c:
            terms[i].append((beta, alpha, c))
    return [Poly.from_terms(n, fld, t) for t in terms]


def codim_truncated(q: Poly, deg: int) -> int:
    """dim K[z]_{<=D} minus the rank of the images of d_i - d_i(q)
    on K[z]_{<= D - deg q + 1}."""
    _need_char0(q, "the codimension count")
    n, fld = q.nvars, q.field
    dq = max(q.deg_z, 0)
    src = deg - dq + 1
    ops = [FirstOrderOp.gradient_op(q, i) for i in range(n)]
    ech = linalg.Echelon(fld, track=False)
    for op in ops:
        for beta in mi.up_to_degree(n, src):
            img = apply_op(op, Poly.monomial(n, beta, field=fld))
            if img.degree <= deg:
                ech.add(dict(img.items()))
    total = sum(1 for _ in mi.up_to_degree(n, deg))
    return total - ech.rank


@dataclass
class CodimSweep:
    degrees: list
    codims: list
    stabilized: bool
    value: int | None

    @property
    def verdict(self) -> str:
        if self.stabilized:
            return f"stabilized at {self.value}"
        return "inconclusive / likely infinite"

    def to_json(self) -> dict:
        return {"degrees": self.degrees, "codims": self.codims,
                "stabilized": self.stabilized, "value": self.value, "verdict": self.verdict}


def codim_sweep(q: Poly, degrees: Sequence[int]) -> CodimSweep:
    """Run codim_truncated over ``degrees``; stable when the last two agree."""
    degrees = sorted(degrees)
    codims = [codim_truncated(q, d) for d in degrees]
    stable = len(codims) >= 2 and codims[-1] == codims[-2]
    return CodimSweep(degrees, codims, stable, codims[-1] if stable else None)


__all__ = [
    "theta_ops", "apply_theta", "apply_theta_power", "eval_E", "eval_Z",
    "laplace_transform", "laplace_negative_part", "TaylorDecomposition",
    "twisted_taylor", "MembershipReport", "member_theta", "theta_witness_bounds",
    "member_bruteforce", "codim_truncated", "CodimSweep", "codim_sweep",
]
