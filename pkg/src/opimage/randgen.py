"""Seeded random instances for tests, benchmarks and the CLI ``--seed`` modes."""

from __future__ import annotations

import random
from fractions import Fraction

from . import linalg
from . import multiindex as mi
from .fields import QQ, Field, GaussianField, PrimeField
from .harness import PolyMap
from .poly import Poly


def random_coeff(rng: random.Random, field: Field, bound: int = 5):
    def rat():
        num = rng.randint(-bound, bound)
        den = rng.choice((1, 1, 1, 2, 3))
        return Fraction(num, den)

    if isinstance(field, GaussianField):
        return field(0) + rat() + field.i * rat()
    if isinstance(field, PrimeField):
        return field(rng.randrange(field.p))
    return field(rat())


def random_poly(rng: random.Random, nvars: int, field: Field = QQ, deg_z: int = 3,
                deg_u: int = 0, nterms: int = 4, bound: int = 5) -> Poly:
    """Sum of up to ``nterms`` random monomials within the degree box."""
    zs = list(mi.up_to_degree(nvars, deg_z))
    us = list(mi.up_to_degree(nvars, max(deg_u, 0)))
    terms = [(rng.choice(zs), rng.choice(us), random_coeff(rng, field, bound))
             for _ in range(nterms)]
    return Poly.from_terms(nvars, field, terms)


def random_homogeneous(rng, nvars, field, degree, variables, nterms=3, bound=4) -> Poly:
    """Random homogeneous form of ``degree`` in the given variable indices."""
    variables = list(variables)
    if not variables:
        return Poly.zero(nvars, field)
    out = Poly.zero(nvars, field)
    for _ in range(nterms):
        exps = [0] * nvars
        for _ in range(degree):
            exps[rng.choice(variables)] += 1
        out = out + Poly.monomial(nvars, exps, field=field) * random_coeff(rng, field, bound)
    return out


def random_triangular_map(rng, nvars, field=QQ, degree=3, nterms=3) -> PolyMap:
    """H with H_i homogeneous of ``degree`` in z_{i+1..n} only (H_n = 0).

    Such H has strictly triangular, hence nilpotent, Jacobian matrix and
    j(z - H) = 1.
    """
    return PolyMap([random_homogeneous(rng, nvars, field, degree, range(i + 1, nvars), nterms)
                    for i in range(nvars)])


def random_homogeneous_map(rng, nvars, field=QQ, degree=3, nterms=3) -> PolyMap:
    return PolyMap([random_homogeneous(rng, nvars, field, degree, range(nvars), nterms)
                    for _ in range(nvars)])


def random_invertible_matrix(rng, n, field=QQ, bound=3) -> list:
    while True:
        M = [[field(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if linalg.det(M, field):
            return M
