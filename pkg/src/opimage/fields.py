"""Exact coefficient fields: Q, Q(i) and F_p.

Coefficients are plain Python objects supporting ``+ - * /`` with each
other and with ``int``: :class:`fractions.Fraction` for Q,
:class:`GaussianRational` for Q(i) and :class:`Residue` for F_p.  A
:class:`Field` object knows how to build, parse and print them.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MismatchedContext


class GaussianRational:
    """``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** -k
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"


class Residue:
    """Element of F_p stored as a representative in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        self.v = v % p

    def _val(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise MismatchedContext(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Residue(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Residue(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Residue(o - self.v, self.p)

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __mul__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Residue(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if not self.v:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return Residue(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Residue(o, self.p) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** -k
        return Residue(pow(self.v, k, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (other - self.v) % self.p == 0
        return False

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Residue({self.v}, {self.p})"


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rat_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_rat(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


class Field:
    """Base class; concrete fields are hashable and compare by tag."""

    tag: str = ""
    characteristic: int = 0

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"<field {self.tag}>"

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, c):
        return self.one / c

    def coeff_text(self, c) -> tuple[bool, str]:
        """Return ``(negative, magnitude)`` such that the coefficient reads
        ``-magnitude`` or ``magnitude`` in the expression grammar."""
        raise NotImplementedError

    def coeff_to_json(self, c):
        raise NotImplementedError

    def coeff_from_json(self, obj):
        raise NotImplementedError


class RationalField(Field):
    tag = "rational"
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, GaussianRational):
            if value.im:
                raise MismatchedContext("non-real value in Q")
            return value.re
        if isinstance(value, Residue):
            raise MismatchedContext("F_p value in Q")
        return Fraction(value)

    def coeff_text(self, c):
        return c < 0, _rat_text(abs(c))

    def coeff_to_json(self, c):
        return _rat_text(c)

    def coeff_from_json(self, obj):
        return _parse_rat(obj)


class GaussianField(Field):
    tag = "gaussian"
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, Residue):
            raise MismatchedContext("F_p value in Q(i)")
        return GaussianRational(value, 0)

    @property
    def i(self):
        return GaussianRational(0, 1)

    def coeff_text(self, c):
        re, im = c.re, c.im
        if not im:
            return re < 0, _rat_text(abs(re))
        if not re:
            mag = "i" if abs(im) == 1 else f"{_rat_text(abs(im))}*i"
            return im < 0, mag
        sign = "-" if im < 0 else "+"
        imag = "i" if abs(im) == 1 else f"{_rat_text(abs(im))}*i"
        return False, f"({_rat_text(re)}{sign}{imag})"

    def coeff_to_json(self, c):
        return [_rat_text(c.re), _rat_text(c.im)]

    def coeff_from_json(self, obj):
        if isinstance(obj, str):
            return GaussianRational(_parse_rat(obj), 0)
        re, im = obj
        return GaussianRational(_parse_rat(re), _parse_rat(im))


class PrimeField(Field):
    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 2**63:
            raise ValueError("prime must fit in a machine word")
        self.p = p
        self.tag = f"fp:{p}"
        self.characteristic = p

    def __call__(self, value):
        if isinstance(value, Residue):
            if value.p != self.p:
                raise MismatchedContext(f"F_{value.p} value in F_{self.p}")
            return value
        if isinstance(value, GaussianRational):
            if value.im:
                raise MismatchedContext("non-real value in F_p")
            value = value.re
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return Residue(value.numerator * pow(value.denominator, -1, self.p), self.p)
        return Residue(int(value), self.p)

    def coeff_text(self, c):
        return False, str(c.v)

    def coeff_to_json(self, c):
        return str(c.v)

    def coeff_from_json(self, obj):
        return self(_parse_rat(obj))


QQ = RationalField()
QQI = GaussianField()


def field_from_tag(tag: str) -> Field:
    """Parse ``rational``, ``gaussian`` or ``fp:<p>``."""
    tag = tag.strip().lower()
    if tag in ("rational", "q", "qq"):
        return QQ
    if tag in ("gaussian", "qi", "q(i)"):
        return QQI
    if tag.startswith("fp:"):
        return PrimeField(int(tag[3:]))
    raise ValueError(f"unknown field tag {tag!r}")
