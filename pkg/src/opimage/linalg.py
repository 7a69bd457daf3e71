"""Exact linear algebra over a coefficient field.

Vectors are sparse: dicts from an orderable index (row key) to a nonzero
field element.  Elimination is deterministic: the pivot of a vector is its
largest index, and a new vector is reduced against existing pivots until its
largest index is fresh.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .errors import SingularMatrix
from .fields import Field


class Echelon:
    """Incrementally maintained echelon basis of a span.

    Each stored basis vector remembers how it is combined from the input
    vectors (by label), so membership queries can return explicit
    coefficients.
    """

    def __init__(self, field: Field, track: bool = True):
        self.field = field
        self.track = track
        self._rows = {}  # pivot index -> (vector, combination)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self):
        return list(self._rows)

    def _reduce(self, vec: dict, comb: dict | None):
        vec = dict(vec)
        rows = self._rows
        while vec:
            piv = max(vec)
            row = rows.get(piv)
            if row is None:
                break
            bvec, bcomb = row
            t = vec[piv] / bvec[piv]
            for k, c in bvec.items():
                s = vec.get(k)
                s = -t * c if s is None else s - t * c
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
            if comb is not None:
                for lab, c in bcomb.items():
                    s = comb.get(lab)
                    s = -t * c if s is None else s - t * c
                    if s:
                        comb[lab] = s
                    else:
                        comb.pop(lab, None)
        return vec, comb

    def add(self, vec: dict, label: Hashable = None) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        comb = {label: self.field.one} if self.track else None
        vec, comb = self._reduce({k: c for k, c in vec.items() if c}, comb)
        if not vec:
            return False
        self._rows[max(vec)] = (vec, comb)
        return True

    def contains(self, vec: dict) -> bool:
        res, _ = self._reduce({k: c for k, c in vec.items() if c}, None)
        return not res

    def express(self, vec: dict) -> dict | None:
        """Coefficients ``{label: c}`` with ``sum c * input[label] == vec``, or None."""
        if not self.track:
            raise ValueError("express() needs a tracking Echelon")
        target = {k: c for k, c in vec.items() if c}
        coeffs = {}
        rows = self._rows
        while target:
            piv = max(target)
            row = rows.get(piv)
            if row is None:
                return None
            bvec, bcomb = row
            t = target[piv] / bvec[piv]
            for k, c in bvec.items():
                s = target.get(k)
                s = -t * c if s is None else s - t * c
                if s:
                    target[k] = s
                else:
                    target.pop(k, None)
            for lab, c in bcomb.items():
                s = coeffs.get(lab)
                s = t * c if s is None else s + t * c
                if s:
                    coeffs[lab] = s
                else:
                    coeffs.pop(lab, None)
        return coeffs


def rank(vectors: Iterable[dict], field: Field) -> int:
    ech = Echelon(field, track=False)
    for v in vectors:
        ech.add(v)
    return ech.rank


def solve(columns: Sequence[dict], target: dict, field: Field) -> list | None:
    """Find x with ``sum_j x[j] * columns[j] == target``; None if inconsistent."""
    ech = Echelon(field)
    for j, col in enumerate(columns):
        ech.add(col, j)
    coeffs = ech.express(target)
    if coeffs is None:
        return None
    return [coeffs.get(j, field.zero) for j in range(len(columns))]


def det(M: Sequence[Sequence], field: Field):
    """Determinant by Bareiss fraction-free elimination."""
    n = len(M)
    if n == 0:
        return field.one
    a = [[field(x) for x in row] for row in M]
    sign = 1
    prev = field.one
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return field.zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def inverse(M: Sequence[Sequence], field: Field) -> list:
    """Gauss-Jordan inverse, first-nonzero pivoting."""
    n = len(M)
    a = [[field(x) for x in row] + [field.one if i == j else field.zero for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        a[col], a[piv] = a[piv], a[col]
        inv = field.one / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def mat_vec(M, v, field: Field) -> list:
    return [sum((field(x) * y for x, y in zip(row, v)), field.zero) for row in M]


def mat_mul(A, B, field: Field) -> list:
    cols = list(zip(*B))
    return [[sum((field(x) * field(y) for x, y in zip(row, col)), field.zero) for col in cols]
            for row in A]


def identity(n: int, field: Field) -> list:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
