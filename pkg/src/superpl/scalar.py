"""Exact scalars in Q(i) with square roots of square-free integers adjoined.

A value is stored as a sparse map ``radicand -> (re, im)`` meaning
``sum (re + i*im) * sqrt(radicand)``.  Radicand 1 holds the Gaussian
rational part.  Rationals are ``gmpy2.mpq`` (always reduced).
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import gcd

from gmpy2 import mpq

from .errors import DivisionByZero, MultiTermInverse

Rational = mpq

_ZERO_Q = mpq(0)


@lru_cache(maxsize=None)
def square_free_split(k: int) -> tuple[int, int]:
    """Return (s, r) with k = s**2 * r and r square-free (k > 0)."""
    if k <= 0:
        raise ValueError("radicand must be positive")
    s, r, p = 1, 1, 2
    while p * p <= k:
        e = 0
        while k % p == 0:
            k //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            r *= p
        p += 1
    return s, r * k


@lru_cache(maxsize=4096)
def _radical_product(r: int, s: int) -> tuple[int, int]:
    # sqrt(r) * sqrt(s) = g * sqrt(rs / g^2) for square-free r, s
    g = gcd(r, s)
    return g, (r // g) * (s // g)


def _is_rational_like(x) -> bool:
    return isinstance(x, (int, type(_ZERO_Q))) or hasattr(x, "denominator")


class RadicalScalar:
    """Immutable exact scalar; see module docstring."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: dict | None = None):
        t = {}
        for r, (a, b) in (terms or {}).items():
            a, b = mpq(a), mpq(b)
            s, rr = square_free_split(int(r))
            if s != 1:
                a, b = a * s, b * s
            if rr in t:
                a, b = a + t[rr][0], b + t[rr][1]
            if a or b:
                t[rr] = (a, b)
            else:
                t.pop(rr, None)
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: dict) -> "RadicalScalar":
        obj = object.__new__(cls)
        obj._t = t
        obj._h = None
        return obj

    # constructors
    @classmethod
    def rational(cls, re_part=0, im_part=0) -> "RadicalScalar":
        re_part, im_part = mpq(re_part), mpq(im_part)
        if re_part or im_part:
            return cls._raw({1: (re_part, im_part)})
        return cls._raw({})

    @classmethod
    def sqrt(cls, k: int) -> "RadicalScalar":
        """Exact square root of a positive integer."""
        return cls({k: (1, 0)})

    @classmethod
    def coerce(cls, x) -> "RadicalScalar":
        if isinstance(x, RadicalScalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls.rational(x)

    # inspection
    @property
    def terms(self) -> dict:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_single_term(self) -> bool:
        return len(self._t) == 1

    def is_gaussian(self) -> bool:
        """True when no irrational radicand is present."""
        return not self._t or (len(self._t) == 1 and 1 in self._t)

    def gaussian_parts(self) -> tuple:
        """(re, im) of a value with radicand 1 only."""
        if not self._t:
            return _ZERO_Q, _ZERO_Q
        if not self.is_gaussian():
            raise ValueError(f"{self} is not a Gaussian rational")
        return self._t[1]

    # arithmetic
    def __add__(self, other) -> "RadicalScalar":
        if not isinstance(other, RadicalScalar):
            if not _is_rational_like(other):
                return NotImplemented
            other = RadicalScalar.rational(other)
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for r, (a, b) in other._t.items():
            if r in t:
                c, d = t[r]
                a, b = a + c, b + d
                if a or b:
                    t[r] = (a, b)
                else:
                    del t[r]
            else:
                t[r] = (a, b)
        return RadicalScalar._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "RadicalScalar":
        return RadicalScalar._raw({r: (-a, -b) for r, (a, b) in self._t.items()})

    def __sub__(self, other) -> "RadicalScalar":
        if not isinstance(other, RadicalScalar):
            other = RadicalScalar.rational(other)
        return self + (-other)

    def __rsub__(self, other) -> "RadicalScalar":
        return RadicalScalar.coerce(other) - self

    def __mul__(self, other) -> "RadicalScalar":
        if not isinstance(other, RadicalScalar):
            if isinstance(other, int):
                return self.scale(other)
            if not _is_rational_like(other):
                return NotImplemented
            other = RadicalScalar.rational(other)
        if not self._t or not other._t:
            return ZERO
        t: dict = {}
        for r, (a, b) in self._t.items():
            for s, (c, d) in other._t.items():
                if r == 1:
                    g, k = 1, s
                elif s == 1:
                    g, k = 1, r
                else:
                    g, k = _radical_product(r, s)
                x, y = a * c - b * d, a * d + b * c
                if g != 1:
                    x, y = x * g, y * g
                if k in t:
                    p, q = t[k]
                    x, y = x + p, y + q
                if x or y:
                    t[k] = (x, y)
                else:
                    t.pop(k, None)
        return RadicalScalar._raw(t)

    __rmul__ = __mul__

    def scale(self, k) -> "RadicalScalar":
        """Multiply by an integer or rational."""
        if not k:
            return ZERO
        if k == 1:
            return self
        return RadicalScalar._raw({r: (a * k, b * k) for r, (a, b) in self._t.items()})

    def times_i(self) -> "RadicalScalar":
        return RadicalScalar._raw({r: (-b, a) for r, (a, b) in self._t.items()})

    def conj(self) -> "RadicalScalar":
        return RadicalScalar._raw({r: (a, -b) for r, (a, b) in self._t.items()})

    def invert(self) -> "RadicalScalar":
        if not self._t:
            raise DivisionByZero("inverse of zero")
        if len(self._t) > 1:
            raise MultiTermInverse(f"cannot invert multi-term scalar {self}")
        ((r, (a, b)),) = self._t.items()
        # 1/((a+ib) sqrt r) = (a-ib) sqrt r / ((a^2+b^2) r)
        den = (a * a + b * b) * r
        return RadicalScalar._raw({r: (a / den, -b / den)})

    def __truediv__(self, other) -> "RadicalScalar":
        return self * RadicalScalar.coerce(other).invert()

    def __rtruediv__(self, other) -> "RadicalScalar":
        return RadicalScalar.coerce(other) * self.invert()

    def __pow__(self, k: int) -> "RadicalScalar":
        if k < 0:
            return self.invert() ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    # comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, RadicalScalar):
            return self._t == other._t
        if isinstance(other, (int, mpq)) or hasattr(other, "denominator"):
            return self._t == RadicalScalar.rational(other)._t
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    def to_complex(self) -> complex:
        """Floating approximation, for diagnostics only."""
        return sum(complex(float(a), float(b)) * (r ** 0.5) for r, (a, b) in self._t.items())

    # text form
    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"RadicalScalar('{format_scalar(self)}')"


def _fmt_rat(q) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x: RadicalScalar) -> str:
    """Render in the exchange grammar, terms sorted by radicand."""
    if not x._t:
        return "0/1"
    parts = []
    for r in sorted(x._t):
        a, b = x._t[r]
        s = _fmt_rat(a)
        if b:
            s += "+" + _fmt_rat(b) + "i"
        if r != 1:
            s += f"*sqrt({r})"
        parts.append(s)
    return " + ".join(parts)


_TERM = re.compile(r"^(-?\d+)/(\d+)(?:\+(-?\d+)/(\d+)i)?(?:\*sqrt\((\d+)\))?$")


def parse_scalar(text: str) -> RadicalScalar:
    """Inverse of :func:`format_scalar`."""
    terms: dict = {}
    for chunk in text.strip().split(" + "):
        m = _TERM.match(chunk)
        if not m:
            raise ValueError(f"bad scalar term: {chunk!r}")
        a = mpq(int(m.group(1)), int(m.group(2)))
        b = mpq(int(m.group(3)), int(m.group(4))) if m.group(3) else _ZERO_Q
        r = int(m.group(5)) if m.group(5) else 1
        if r in terms:
            p, q = terms[r]
            a, b = a + p, b + q
        terms[r] = (a, b)
    return RadicalScalar(terms)


ZERO = RadicalScalar._raw({})
ONE = RadicalScalar.rational(1)
I = RadicalScalar.rational(0, 1)


def as_scalar(x) -> RadicalScalar:
    return RadicalScalar.coerce(x)
