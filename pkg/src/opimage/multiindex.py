"""Multi-index helpers.  Multi-indices are plain tuples of ints."""

from __future__ import annotations

from itertools import product
from math import factorial as _fact
from typing import Iterator, Sequence

MultiIndex = tuple


def degree(alpha: Sequence[int]) -> int:
    return sum(alpha)


def factorial(alpha: Sequence[int]) -> int:
    """alpha! = prod alpha_i!  (only for alpha >= 0)."""
    out = 1
    for a in alpha:
        if a < 0:
            raise ValueError(f"factorial of negative multi-index {tuple(alpha)}")
        out *= _fact(a)
    return out


def leq(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """Componentwise alpha <= beta."""
    return all(a <= b for a, b in zip(alpha, beta))


def falling(beta: Sequence[int], alpha: Sequence[int]) -> int:
    """beta! / (beta - alpha)!, the coefficient of d^alpha z^beta; 0 unless alpha <= beta."""
    out = 1
    for b, a in zip(beta, alpha):
        if a > b:
            return 0
        for t in range(b - a + 1, b + 1):
            out *= t
    return out


def unit(n: int, i: int) -> tuple:
    e = [0] * n
    e[i] = 1
    return tuple(e)


def add(alpha, beta) -> tuple:
    return tuple(a + b for a, b in zip(alpha, beta))


def sub(alpha, beta) -> tuple:
    return tuple(a - b for a, b in zip(alpha, beta))


def of_degree(n: int, d: int) -> Iterator[tuple]:
    """All alpha in N^n with |alpha| = d, in lexicographically decreasing order."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in of_degree(n - 1, d - first):
            yield (first,) + rest


def up_to_degree(n: int, d: int) -> Iterator[tuple]:
    """All alpha with |alpha| <= d, by increasing degree."""
    for k in range(d + 1):
        yield from of_degree(n, k)


def box(bounds: Sequence[int]) -> Iterator[tuple]:
    """All alpha with 0 <= alpha <= bounds componentwise."""
    return product(*(range(b + 1) for b in bounds))
