"""Supermatrices with (m|n) block grading and the double sl + sl."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .errors import EqualDimensions, InhomogeneousOperand, InvalidShape, NotInDouble, ParityMismatch
from gmpy2 import mpq

from .scalar import ONE, ZERO, RadicalScalar, as_scalar, format_scalar

_MINUS_I_HALF = RadicalScalar.rational(0, mpq(-1, 2))


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1
    INHOMOGENEOUS = 2

    @property
    def bit(self) -> int:
        if self is Parity.INHOMOGENEOUS:
            raise InhomogeneousOperand("inhomogeneous operand has no parity")
        return self.value

    @classmethod
    def of(cls, bit: int) -> "Parity":
        return cls.ODD if bit % 2 else cls.EVEN


@dataclass(frozen=True)
class BlockShape:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidShape(f"block sizes must be positive, got ({self.m}, {self.n})")
        if self.m == self.n:
            raise EqualDimensions(f"m == n == {self.m} is not supported")

    @property
    def size(self) -> int:
        return self.m + self.n

    def index_parity(self, i: int) -> int:
        """|i| for a 1-based row/column index."""
        return 0 if i <= self.m else 1

    def entry_parity(self, i: int, j: int) -> int:
        return (i > self.m) ^ (j > self.m)

    def indices(self) -> range:
        return range(1, self.size + 1)

    def __str__(self) -> str:
        return f"({self.m}|{self.n})"


class SuperMatrix:
    """Sparse (m+n)x(m+n) matrix over RadicalScalar, entries 1-based."""

    __slots__ = ("shape", "_e", "parity")

    def __init__(self, shape: BlockShape, entries: dict | None = None, parity: Parity | None = None):
        self.shape = shape
        e = {}
        for (i, j), v in (entries or {}).items():
            if not (1 <= i <= shape.size and 1 <= j <= shape.size):
                raise IndexError(f"entry ({i}, {j}) outside {shape}")
            v = as_scalar(v)
            if v:
                e[(i, j)] = v
        self._e = e
        actual = self._support_parity()
        if parity is not None and actual is not None and parity is not actual:
            raise ParityMismatch(f"declared {parity.name}, support is {actual.name}")
        self.parity = parity if parity is not None else (actual or Parity.EVEN)

    @classmethod
    def _raw(cls, shape, e, parity):
        obj = object.__new__(cls)
        obj.shape, obj._e, obj.parity = shape, e, parity
        return obj

    def _support_parity(self) -> Parity | None:
        bits = {self.shape.entry_parity(i, j) for (i, j) in self._e}
        if not bits:
            return None
        if len(bits) == 2:
            return Parity.INHOMOGENEOUS
        return Parity.of(bits.pop())

    # constructors
    @classmethod
    def zero(cls, shape: BlockShape, parity: Parity = Parity.EVEN) -> "SuperMatrix":
        return cls._raw(shape, {}, parity)

    @classmethod
    def unit(cls, shape: BlockShape, s: int, t: int) -> "SuperMatrix":
        """Matrix unit E_st."""
        return cls(shape, {(s, t): ONE})

    @classmethod
    def identity(cls, shape: BlockShape) -> "SuperMatrix":
        return cls(shape, {(k, k): ONE for k in shape.indices()})

    @classmethod
    def from_rows(cls, shape: BlockShape, rows) -> "SuperMatrix":
        return cls(shape, {(i + 1, j + 1): v for i, row in enumerate(rows) for j, v in enumerate(row)})

    # access
    def __getitem__(self, ij) -> RadicalScalar:
        return self._e.get(ij, ZERO)

    def items(self):
        return self._e.items()

    @property
    def entries(self) -> dict:
        return dict(self._e)

    def is_zero(self) -> bool:
        return not self._e

    @property
    def bit(self) -> int:
        return self.parity.bit

    def rows(self) -> list:
        N = self.shape.size
        return [[self[(i, j)] for j in range(1, N + 1)] for i in range(1, N + 1)]

    # linear structure
    def _combine(self, other: "SuperMatrix", sign: int) -> "SuperMatrix":
        _same_shape(self, other)
        e = dict(self._e)
        for k, v in other._e.items():
            w = e.get(k, ZERO) + (v if sign > 0 else -v)
            if w:
                e[k] = w
            else:
                e.pop(k, None)
        if not e:
            pa = self.parity if self.is_zero() or self.parity is other.parity else other.parity
            return SuperMatrix._raw(self.shape, e, other.parity if self.is_zero() else pa)
        return SuperMatrix(self.shape, e)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return SuperMatrix._raw(self.shape, {k: -v for k, v in self._e.items()}, self.parity)

    def __mul__(self, c) -> "SuperMatrix":
        c = as_scalar(c)
        if not c:
            return SuperMatrix.zero(self.shape, self.parity)
        return SuperMatrix._raw(self.shape, {k: c * v for k, v in self._e.items()}, self.parity)

    __rmul__ = __mul__

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        _same_shape(self, other)
        rows: dict = {}
        for (k, j), v in other._e.items():
            rows.setdefault(k, []).append((j, v))
        e: dict = {}
        for (i, k), a in self._e.items():
            for j, b in rows.get(k, ()):
                e[(i, j)] = e.get((i, j), ZERO) + a * b
        p = Parity.of(self.bit + other.bit) if Parity.INHOMOGENEOUS not in (self.parity, other.parity) else None
        out = SuperMatrix(self.shape, {k: v for k, v in e.items() if v})
        if out.is_zero() and p is not None:
            out.parity = p
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.shape, frozenset(self._e.items())))

    def conj(self) -> "SuperMatrix":
        return SuperMatrix._raw(self.shape, {k: v.conj() for k, v in self._e.items()}, self.parity)

    def transpose(self) -> "SuperMatrix":
        return SuperMatrix._raw(self.shape, {(j, i): v for (i, j), v in self._e.items()}, self.parity)

    def diagonal_part(self) -> "SuperMatrix":
        return SuperMatrix(self.shape, {(i, j): v for (i, j), v in self._e.items() if i == j})

    def upper_part(self) -> "SuperMatrix":
        return SuperMatrix(self.shape, {(i, j): v for (i, j), v in self._e.items() if i < j})

    def lower_part(self) -> "SuperMatrix":
        return SuperMatrix(self.shape, {(i, j): v for (i, j), v in self._e.items() if i > j})

    def to_json(self) -> list:
        return [[format_scalar(v) for v in row] for row in self.rows()]

    def __str__(self) -> str:
        return json.dumps(self.to_json())

    def __repr__(self) -> str:
        return f"SuperMatrix{self.shape}{self}"


def _same_shape(a, b):
    if a.shape != b.shape:
        raise InvalidShape(f"shape mismatch {a.shape} vs {b.shape}")


def supertrace(M: SuperMatrix) -> RadicalScalar:
    out = ZERO
    for (i, j), v in M.items():
        if i == j:
            out = out + v if i <= M.shape.m else out - v
    return out


def superbracket(M: SuperMatrix, N: SuperMatrix) -> SuperMatrix:
    a, b = M.bit, N.bit
    MN, NM = M @ N, N @ M
    out = MN + NM if a and b else MN - NM
    out.parity = Parity.of(a + b)
    return out


def supertranspose(M: SuperMatrix) -> SuperMatrix:
    """[[P, Q], [R, T]] -> [[P^t, R^t], [-Q^t, T^t]]."""
    m = M.shape.m
    e = {}
    for (i, j), v in M.items():
        # Q block (i <= m < j) lands in the lower-left slot with a sign
        e[(j, i)] = -v if (i <= m < j) else v
    return SuperMatrix._raw(M.shape, e, M.parity)


def sp_sl(M: SuperMatrix, N: SuperMatrix) -> RadicalScalar:
    """The invariant form -(i/2) Str(MN)."""
    _same_shape(M, N)
    s = ZERO
    for (i, k), a in M.items():
        b = N[(k, i)]
        if b:
            s = s + a * b if i <= M.shape.m else s - a * b
    return _MINUS_I_HALF * s


class DoubleElement:
    """A pair (A, B) in sl + sl; ``in_d`` False allows gl-level pairs."""

    __slots__ = ("first", "second", "in_d")

    def __init__(self, first: SuperMatrix, second: SuperMatrix, in_d: bool = True):
        _same_shape(first, second)
        pa, pb = first.parity, second.parity
        if first.is_zero():
            first = SuperMatrix._raw(first.shape, {}, pb)
        elif second.is_zero():
            second = SuperMatrix._raw(second.shape, {}, pa)
        elif pa is not pb:
            raise ParityMismatch("components of a double element differ in parity")
        if in_d and (supertrace(first) or supertrace(second)):
            raise NotInDouble("components must be supertraceless")
        self.first, self.second, self.in_d = first, second, in_d

    @property
    def shape(self) -> BlockShape:
        return self.first.shape

    @property
    def parity(self) -> Parity:
        return self.first.parity

    @property
    def bit(self) -> int:
        return self.first.bit

    @classmethod
    def zero(cls, shape: BlockShape, parity: Parity = Parity.EVEN) -> "DoubleElement":
        z = SuperMatrix.zero(shape, parity)
        return cls(z, z)

    def is_zero(self) -> bool:
        return self.first.is_zero() and self.second.is_zero()

    def _wrap(self, a, b, in_d=None):
        return DoubleElement(a, b, self.in_d if in_d is None else in_d)

    def __add__(self, other):
        return DoubleElement(self.first + other.first, self.second + other.second, self.in_d and other.in_d)

    def __sub__(self, other):
        return DoubleElement(self.first - other.first, self.second - other.second, self.in_d and other.in_d)

    def __neg__(self):
        return self._wrap(-self.first, -self.second)

    def __mul__(self, c):
        return self._wrap(self.first * c, self.second * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DoubleElement):
            return NotImplemented
        return self.first == other.first and self.second == other.second

    def __hash__(self):
        return hash((self.first, self.second))

    def conj(self):
        return self._wrap(self.first.conj(), self.second.conj())

    def units(self) -> list:
        """Expansion over elementary directions (('y'|'z', s, t), coefficient)."""
        out = [(("y", i, j), v) for (i, j), v in sorted(self.first.items())]
        out += [(("z", i, j), v) for (i, j), v in sorted(self.second.items())]
        return out

    def to_json(self) -> list:
        return [self.first.to_json(), self.second.to_json()]

    def __repr__(self):
        return f"DoubleElement({self.first}, {self.second})"


def double_bracket(x: DoubleElement, y: DoubleElement) -> DoubleElement:
    return DoubleElement(superbracket(x.first, y.first), superbracket(x.second, y.second), x.in_d and y.in_d)


def sp_double(x: DoubleElement, y: DoubleElement) -> RadicalScalar:
    return sp_sl(x.first, y.first) - sp_sl(x.second, y.second)


def unit(shape: BlockShape, s: int, t: int) -> SuperMatrix:
    return SuperMatrix.unit(shape, s, t)

