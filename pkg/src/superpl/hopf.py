"""Truncated supercommutative Hopf superalgebra of the double and its quotients.

Generators are y_ij, z_ij (double) and x_ij (single group). A monomial is a
sorted tuple of generator ids; even ids come first so the odd factors of a
monomial appear in canonical order and never repeat.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import InhomogeneousOperand, RankMismatch, TruncationMismatch
from .scalar import I, ONE, ZERO, RadicalScalar, as_scalar, format_scalar
from .supermatrix import BlockShape, DoubleElement, Parity, SuperMatrix

KINDS = ("y", "z", "x")


@dataclass(frozen=True)
class GeneratorId:
    kind: str
    i: int
    j: int

    def __str__(self):
        return f"{self.kind}[{self.i},{self.j}]"


class GeneratorTable:
    """Global generator order: even before odd, then (kind, i, j)."""

    def __init__(self, shape: BlockShape):
        self.shape = shape
        N = shape.size
        cells = [(k, i, j) for k in KINDS for i in range(1, N + 1) for j in range(1, N + 1)]
        even = [c for c in cells if not shape.entry_parity(c[1], c[2])]
        odd = [c for c in cells if shape.entry_parity(c[1], c[2])]
        self.gens = [GeneratorId(*c) for c in even + odd]
        self.n_even = len(even)
        self.index = {g: k for k, g in enumerate(self.gens)}

    def id(self, kind: str, i: int, j: int) -> int:
        return self.index[GeneratorId(kind, i, j)]

    def parity(self, gid: int) -> int:
        return int(gid >= self.n_even)

    def kind_ids(self, kind: str) -> list:
        return [k for k, g in enumerate(self.gens) if g.kind == kind]


@lru_cache(maxsize=None)
def generator_table(shape: BlockShape) -> GeneratorTable:
    return GeneratorTable(shape)


@lru_cache(maxsize=1 << 20)
def mono_mul(a: tuple, b: tuple, n_even: int):
    """Product of canonical monomials: (sign, monomial) or None if it vanishes."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    odd_a = [g for g in a if g >= n_even]
    odd_b = [g for g in b if g >= n_even]
    swaps = 0
    if odd_a and odd_b:
        sa = set(odd_a)
        for g in odd_b:
            if g in sa:
                return None
            swaps += sum(1 for h in odd_a if h > g)
    return (-1 if swaps % 2 else 1), tuple(sorted(a + b))


def mono_parity(mono: tuple, n_even: int) -> int:
    return sum(1 for g in mono if g >= n_even) % 2


def canonical(gids, n_even: int):
    """Canonical monomial of an ordered product of generators, with its sign."""
    sign, mono = 1, ()
    for g in gids:
        r = mono_mul(mono, (g,), n_even)
        if r is None:
            return 0, None
        s, mono = r
        sign *= s
    return sign, mono


class SuperPoly:
    """Truncated polynomial: monomial -> RadicalScalar, all degrees <= D."""

    __slots__ = ("table", "D", "terms")

    def __init__(self, table: GeneratorTable, D: int, terms: dict | None = None):
        self.table, self.D = table, D
        self.terms = {k: v for k, v in (terms or {}).items() if v and len(k) <= D}

    @classmethod
    def _raw(cls, table, D, terms):
        obj = object.__new__(cls)
        obj.table, obj.D, obj.terms = table, D, terms
        return obj

    # constructors
    @classmethod
    def zero(cls, table, D):
        return cls._raw(table, D, {})

    @classmethod
    def const(cls, table, D, c=ONE):
        c = as_scalar(c)
        return cls._raw(table, D, {(): c} if c else {})

    @classmethod
    def gen(cls, table, D, kind, i, j):
        return cls._raw(table, D, {(table.id(kind, i, j),): ONE})

    @classmethod
    def u(cls, table, D, kind, i, j):
        """delta_ij + generator."""
        p = cls.gen(table, D, kind, i, j)
        return p + cls.const(table, D) if i == j else p

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def parity(self) -> Parity:
        bits = {mono_parity(m, self.table.n_even) for m in self.terms}
        if len(bits) == 2:
            return Parity.INHOMOGENEOUS
        return Parity.of(bits.pop()) if bits else Parity.EVEN

    @property
    def bit(self) -> int:
        return self.parity.bit

    def split_parity(self) -> tuple["SuperPoly", "SuperPoly"]:
        ev, od = {}, {}
        for m, c in self.terms.items():
            (od if mono_parity(m, self.table.n_even) else ev)[m] = c
        return SuperPoly._raw(self.table, self.D, ev), SuperPoly._raw(self.table, self.D, od)

    def constant_term(self) -> RadicalScalar:
        return self.terms.get((), ZERO)

    def linear_part(self) -> dict:
        return {m[0]: c for m, c in self.terms.items() if len(m) == 1}

    def degree_part(self, d: int) -> "SuperPoly":
        return SuperPoly._raw(self.table, self.D, {m: c for m, c in self.terms.items() if len(m) == d})

    def truncate(self, D: int) -> "SuperPoly":
        return SuperPoly._raw(self.table, D, {m: c for m, c in self.terms.items() if len(m) <= D})

    def with_degree(self, D: int) -> "SuperPoly":
        return self.truncate(D)

    # arithmetic
    def _check(self, other):
        if self.D != other.D:
            raise TruncationMismatch(f"D = {self.D} vs {other.D}")

    def __add__(self, other):
        if not isinstance(other, SuperPoly):
            return self + SuperPoly.const(self.table, self.D, other)
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m)
            if v is None:
                t[m] = c
            else:
                v = v + c
                if v:
                    t[m] = v
                else:
                    del t[m]
        return SuperPoly._raw(self.table, self.D, t)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly._raw(self.table, self.D, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SuperPoly":
        c = as_scalar(c)
        if not c:
            return SuperPoly.zero(self.table, self.D)
        return SuperPoly._raw(self.table, self.D, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SuperPoly):
            return self.scale(other)
        self._check(other)
        return SuperPoly._raw(self.table, self.D, poly_mul_terms(self.terms, other.terms, self.D, self.table.n_even))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = SuperPoly.const(self.table, self.D)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SuperPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def conj(self) -> "SuperPoly":
        return SuperPoly._raw(self.table, self.D, {m: c.conj() for m, c in self.terms.items()})

    def subs(self, images: dict) -> "SuperPoly":
        """Algebra morphism sending generator id g to images[g] (missing ids fixed)."""
        return substitute(self, images)

    def uses_kinds(self) -> set:
        return {self.table.gens[g].kind for m in self.terms for g in m}

    # text
    def __str__(self):
        if not self.terms:
            return "0/1"
        parts = []
        for m in sorted(self.terms, key=lambda k: (len(k), k)):
            parts.append(f"{format_scalar(self.terms[m])} * {format_mono(m, self.table)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SuperPoly(D={self.D}, {self})"


def format_mono(m: tuple, table: GeneratorTable) -> str:
    if not m:
        return "1"
    out, k = [], 0
    while k < len(m):
        e = 1
        while k + e < len(m) and m[k + e] == m[k]:
            e += 1
        g = str(table.gens[m[k]])
        out.append(g if e == 1 else f"{g}^{e}")
        k += e
    return "*".join(out)


def _by_degree(terms: dict) -> dict:
    buckets: dict = {}
    for m, c in terms.items():
        buckets.setdefault(len(m), []).append((m, c))
    return buckets


def poly_mul_terms(ta: dict, tb: dict, D: int, n_even: int) -> dict:
    """Degree-bucketed truncated product of two term maps."""
    out: dict = {}
    if not ta or not tb:
        return out
    ba, bb = _by_degree(ta), _by_degree(tb)
    for da, la in ba.items():
        for db, lb in bb.items():
            if da + db > D:
                continue
            for ma, ca in la:
                for mb, cb in lb:
                    r = mono_mul(ma, mb, n_even)
                    if r is None:
                        continue
                    s, m = r
                    v = ca * cb
                    if s < 0:
                        v = -v
                    w = out.get(m)
                    if w is None:
                        out[m] = v
                    else:
                        w = w + v
                        if w:
                            out[m] = w
                        else:
                            del out[m]
    return out


def substitute(f: SuperPoly, images: dict) -> SuperPoly:
    table, D = f.table, f.D
    one = SuperPoly.const(table, D)
    cache: dict = {(): one}

    def image_of(m):
        if m in cache:
            return cache[m]
        head = image_of(m[:-1])
        g = m[-1]
        img = images.get(g)
        if img is None:
            img = SuperPoly._raw(table, D, {(g,): ONE})
        val = head * img
        cache[m] = val
        return val

    out = SuperPoly.zero(table, D)
    for m in sorted(f.terms, key=len):
        out = out + image_of(m).scale(f.terms[m])
    return out


# ---------------------------------------------------------------- tensors

class TensorPoly:
    """Rank-2 or rank-3 tensor of monomials; total degree <= D."""

    __slots__ = ("table", "D", "rank", "terms")

    def __init__(self, table, D, rank, terms=None):
        self.table, self.D, self.rank = table, D, rank
        self.terms = {k: v for k, v in (terms or {}).items()
                      if v and sum(map(len, k)) <= D}

    @classmethod
    def _raw(cls, table, D, rank, terms):
        obj = object.__new__(cls)
        obj.table, obj.D, obj.rank, obj.terms = table, D, rank, terms
        return obj

    @classmethod
    def pure(cls, *factors: SuperPoly) -> "TensorPoly":
        """f1 (x) f2 (x) ... as a tensor."""
        table, D = factors[0].table, factors[0].D
        terms: dict = {((),) * 0: ONE}
        for f in factors:
            new = {}
            for k, c in terms.items():
                for m, v in f.terms.items():
                    key = k + (m,)
                    if sum(map(len, key)) <= D:
                        new[key] = c * v
            terms = new
        return cls(table, D, len(factors), terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        if self.D != other.D:
            raise TruncationMismatch(f"D = {self.D} vs {other.D}")
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k, ZERO) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return TensorPoly._raw(self.table, self.D, self.rank, t)

    def __neg__(self):
        return TensorPoly._raw(self.table, self.D, self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        return TensorPoly._raw(self.table, self.D, self.rank,
                               {k: c * v for k, v in self.terms.items()} if c else {})

    def __mul__(self, other):
        if not isinstance(other, TensorPoly):
            return self.scale(other)
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        ne, D = self.table.n_even, self.D
        out: dict = {}
        for ka, ca in self.terms.items():
            da = sum(map(len, ka))
            pa = [mono_parity(m, ne) for m in ka]
            for kb, cb in other.terms.items():
                if da + sum(map(len, kb)) > D:
                    continue
                pb = [mono_parity(m, ne) for m in kb]
                # b_k moves past a_l for every l > k
                swaps = sum(pb[k] * pa[l] for k in range(self.rank) for l in range(k + 1, self.rank))
                sign = -1 if swaps % 2 else 1
                key = []
                for ma, mb in zip(ka, kb):
                    r = mono_mul(ma, mb, ne)
                    if r is None:
                        break
                    sign *= r[0]
                    key.append(r[1])
                else:
                    key = tuple(key)
                    v = ca * cb
                    if sign < 0:
                        v = -v
                    w = out.get(key, ZERO) + v
                    if w:
                        out[key] = w
                    else:
                        out.pop(key, None)
        return TensorPoly._raw(self.table, D, self.rank, out)

    def __eq__(self, other):
        if isinstance(other, TensorPoly):
            return self.rank == other.rank and self.terms == other.terms
        return NotImplemented

    def map_slots(self, maps) -> "TensorPoly":
        """Apply even linear maps (SuperPoly -> SuperPoly) slotwise, no signs."""
        out = TensorPoly._raw(self.table, self.D, self.rank, {})
        for key, c in self.terms.items():
            imgs = [mp(SuperPoly._raw(self.table, self.D, {m: ONE})) for mp, m in zip(maps, key)]
            out = out + TensorPoly.pure(*imgs).scale(c)
        return out

    def truncate(self, D) -> "TensorPoly":
        return TensorPoly._raw(self.table, D, self.rank,
                               {k: c for k, c in self.terms.items() if sum(map(len, k)) <= D})

    def __str__(self):
        if not self.terms:
            return "0/1"
        return " + ".join(
            f"{format_scalar(c)} * " + " (x) ".join(format_mono(m, self.table) for m in k)
            for k, c in sorted(self.terms.items(), key=lambda kc: (sum(map(len, kc[0])), kc[0])))

    def __repr__(self):
        return f"TensorPoly(rank={self.rank}, {self})"


def tensor_mul_factors(t: TensorPoly) -> SuperPoly:
    """Multiply the slots of a tensor in order."""
    out = SuperPoly.zero(t.table, t.D)
    ne = t.table.n_even
    for key, c in t.terms.items():
        sign, mono = 1, ()
        for m in key:
            r = mono_mul(mono, m, ne)
            if r is None:
                break
            sign *= r[0]
            mono = r[1]
        else:
            out = out + SuperPoly._raw(t.table, t.D, {mono: c if sign > 0 else -c})
    return out


# ---------------------------------------------------------------- Hopf maps

def poly_matrix(table: GeneratorTable, D: int, kind: str, shift: bool = False) -> list:
    """The matrix X (or 1 + X) of generators of one kind, 0-based lists."""
    N = table.shape.size
    return [[SuperPoly.u(table, D, kind, i, j) if shift else SuperPoly.gen(table, D, kind, i, j)
             for j in range(1, N + 1)] for i in range(1, N + 1)]


def matmul_poly(A: list, B: list) -> list:
    n, k, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = SuperPoly.zero(A[0][0].table, A[0][0].D)
            for l in range(k):
                if A[i][l] and B[l][j]:
                    acc = acc + A[i][l] * B[l][j]
            row.append(acc)
        out.append(row)
    return out


def neumann_inverse(X: list) -> list:
    """(1 + X)^{-1} = sum_k (-X)^k for X with zero constant terms."""
    table, D = X[0][0].table, X[0][0].D
    n = len(X)
    one = SuperPoly.const(table, D)
    zero = SuperPoly.zero(table, D)
    negX = [[-x for x in row] for row in X]
    acc = [[one if i == j else zero for j in range(n)] for i in range(n)]
    power = [row[:] for row in acc]
    for _ in range(D):
        power = matmul_poly(power, negX)
        acc = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(acc, power)]
    return acc


class HopfAlgebra:
    """Coproduct, counit, antipode and star at fixed shape and truncation."""

    def __init__(self, shape: BlockShape, D: int):
        self.shape, self.D = shape, D
        self.table = generator_table(shape)
        self._delta_gen: dict = {}
        self._delta_mono: dict = {}
        self._antipode_gen: dict | None = None
        self._star_gen: dict | None = None

    # elements
    def gen(self, kind, i, j) -> SuperPoly:
        return SuperPoly.gen(self.table, self.D, kind, i, j)

    def u(self, kind, i, j) -> SuperPoly:
        return SuperPoly.u(self.table, self.D, kind, i, j)

    def one(self) -> SuperPoly:
        return SuperPoly.const(self.table, self.D)

    def zero(self) -> SuperPoly:
        return SuperPoly.zero(self.table, self.D)

    def generators(self, kinds=("y", "z")) -> list:
        N = self.shape.size
        return [(k, i, j) for k in kinds for i in range(1, N + 1) for j in range(1, N + 1)]

    # coproduct
    def _delta_of_gen(self, g: int) -> TensorPoly:
        if g not in self._delta_gen:
            gid = self.table.gens[g]
            N = self.shape.size
            terms = {((), (g,)): ONE, ((g,), ()): ONE}
            for k in range(1, N + 1):
                a = self.table.id(gid.kind, gid.i, k)
                b = self.table.id(gid.kind, k, gid.j)
                terms[((a,), (b,))] = ONE
            self._delta_gen[g] = TensorPoly(self.table, self.D, 2, terms)
        return self._delta_gen[g]

    def _delta_of_mono(self, m: tuple) -> TensorPoly:
        if m not in self._delta_mono:
            if not m:
                val = TensorPoly._raw(self.table, self.D, 2, {((), ()): ONE})
            else:
                val = self._delta_of_mono(m[:-1]) * self._delta_of_gen(m[-1])
            self._delta_mono[m] = val
        return self._delta_mono[m]

    def coproduct(self, f: SuperPoly) -> TensorPoly:
        out = TensorPoly._raw(self.table, self.D, 2, {})
        for m, c in f.terms.items():
            out = out + self._delta_of_mono(m).scale(c)
        return out

    def coproduct_slot(self, t: TensorPoly, slot: int) -> TensorPoly:
        """Apply the coproduct to one slot of a tensor, raising its rank."""
        out = TensorPoly._raw(self.table, self.D, t.rank + 1, {})
        for key, c in t.terms.items():
            d = self._delta_of_mono(key[slot])
            terms = {}
            for (a, b), v in d.terms.items():
                k2 = key[:slot] + (a, b) + key[slot + 1:]
                if sum(map(len, k2)) <= self.D:
                    terms[k2] = v * c
            out = out + TensorPoly(self.table, self.D, t.rank + 1, terms)
        return out

    @staticmethod
    def counit(f: SuperPoly) -> RadicalScalar:
        return f.constant_term()

    # antipode
    def antipode_images(self) -> dict:
        if self._antipode_gen is None:
            imgs = {}
            N = self.shape.size
            for kind in KINDS:
                inv = neumann_inverse(poly_matrix(self.table, self.D, kind))
                for i in range(N):
                    for j in range(N):
                        v = inv[i][j]
                        if i == j:
                            v = v - self.one()
                        imgs[self.table.id(kind, i + 1, j + 1)] = v
            self._antipode_gen = imgs
        return self._antipode_gen

    def antipode(self, f: SuperPoly) -> SuperPoly:
        return substitute(f, self.antipode_images())

    # star
    def star_sign(self, i: int, j: int) -> int:
        s = self.shape
        return -1 if (s.entry_parity(i, j) * s.index_parity(j)) % 2 else 1

    def star_images(self) -> dict:
        """y*_ij = s_ij S(z_ji), z*_ij = s_ij S(y_ji), x*_ij = s_ij S(x_ji)."""
        if self._star_gen is None:
            S = self.antipode_images()
            partner = {"y": "z", "z": "y", "x": "x"}
            imgs = {}
            for g, gid in enumerate(self.table.gens):
                img = S[self.table.id(partner[gid.kind], gid.j, gid.i)]
                imgs[g] = img if self.star_sign(gid.i, gid.j) > 0 else -img
            self._star_gen = imgs
        return self._star_gen

    def star(self, f: SuperPoly) -> SuperPoly:
        return substitute(f.conj(), self.star_images())

    def tensor_star(self, t: TensorPoly, signed: bool) -> TensorPoly:
        """Slotwise star; ``signed`` adds (-1)^{|f||g|} on rank-2 terms."""
        ne = self.table.n_even
        out = TensorPoly._raw(self.table, self.D, t.rank, {})
        for key, c in t.terms.items():
            imgs = [self.star(SuperPoly._raw(self.table, self.D, {m: ONE})) for m in key]
            piece = TensorPoly.pure(*imgs).scale(c.conj())
            if signed:
                ps = [mono_parity(m, ne) for m in key]
                swaps = sum(ps[a] * ps[b] for a in range(len(ps)) for b in range(a + 1, len(ps)))
                if swaps % 2:
                    piece = -piece
            out = out + piece
        return out

    # superdeterminant
    def sdet(self, kind: str) -> SuperPoly:
        """sdet(1 + X) for the generators of one kind."""
        return sdet_poly(poly_matrix(self.table, self.D, kind, shift=True), self.shape.m)

    # quotients
    def project_I(self, f: SuperPoly) -> SuperPoly:
        """y_ij, z_ij -> x_ij."""
        imgs = {}
        for g, gid in enumerate(self.table.gens):
            if gid.kind in ("y", "z"):
                imgs[g] = self.gen("x", gid.i, gid.j)
        return substitute(f, imgs)

    def project_J_images(self) -> dict:
        imgs = {}
        for g, gid in enumerate(self.table.gens):
            if gid.kind == "y" and gid.i < gid.j:
                imgs[g] = self.zero()
            elif gid.kind == "z" and gid.i > gid.j:
                imgs[g] = self.zero()
            elif gid.kind == "z" and gid.i == gid.j:
                yii = self.gen("y", gid.i, gid.i)
                acc, p = self.zero(), self.one()
                for _ in range(self.D):
                    p = p * (-yii)
                    acc = acc + p
                imgs[g] = acc
        return imgs

    def project_J(self, f: SuperPoly) -> SuperPoly:
        """Strict-upper y and strict-lower z -> 0, z_ii -> sum_k (-y_ii)^k."""
        return substitute(f, self.project_J_images())

    def project_tensor(self, t: TensorPoly, which: str) -> TensorPoly:
        pr = self.project_I if which == "I" else self.project_J
        return t.map_slots([pr] * t.rank)

    def ideal_generators(self, which: str) -> list:
        """(label, polynomial) pairs generating I or J."""
        N = self.shape.size
        out = []
        if which == "I":
            for i in range(1, N + 1):
                for j in range(1, N + 1):
                    out.append((f"y[{i},{j}]-z[{i},{j}]", self.gen("y", i, j) - self.gen("z", i, j)))
        else:
            for i in range(1, N + 1):
                for j in range(1, N + 1):
                    if i < j:
                        out.append((f"y[{i},{j}]", self.gen("y", i, j)))
                    if i > j:
                        out.append((f"z[{i},{j}]", self.gen("z", i, j)))
                out.append((f"S(y[{i},{i}])-z[{i},{i}]",
                            self.antipode(self.gen("y", i, i)) - self.gen("z", i, i)))
        return out


def sdet_poly(U: list, m: int) -> SuperPoly:
    """det(A - B D^{-1} C) / det(D) for a matrix with constant part 1."""
    N = len(U)
    table, Dg = U[0][0].table, U[0][0].D
    A = [row[:m] for row in U[:m]]
    B = [row[m:] for row in U[:m]]
    C = [row[:m] for row in U[m:]]
    Dm = [row[m:] for row in U[m:]]
    n = N - m
    one = SuperPoly.const(table, Dg)
    # D = 1 + X_D, inverse by Neumann series
    X_D = [[Dm[i][j] - (one if i == j else SuperPoly.zero(table, Dg)) for j in range(n)] for i in range(n)]
    Dinv = neumann_inverse(X_D)
    BDC = matmul_poly(matmul_poly(B, Dinv), C)
    schur = [[A[i][j] - BDC[i][j] for j in range(m)] for i in range(m)]
    num = leibniz_det(schur)
    den = leibniz_det(Dm)
    e = den - one
    inv, p = one, one
    for _ in range(Dg):
        p = p * (-e)
        inv = inv + p
    return num * inv


def leibniz_det(M: list) -> SuperPoly:
    """Determinant of a matrix with commuting (even) entries."""
    n = len(M)
    out = SuperPoly.zero(M[0][0].table, M[0][0].D)
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = SuperPoly.const(M[0][0].table, M[0][0].D, -1 if inv % 2 else 1)
        for r in range(n):
            term = term * M[r][perm[r]]
        out = out + term
    return out


def eps_pair(M: DoubleElement | SuperMatrix, f: SuperPoly) -> RadicalScalar:
    """Pairing of an epsilon-derivation with the linear part of f."""
    out = ZERO
    tab = f.table
    for g, c in f.linear_part().items():
        gid = tab.gens[g]
        if isinstance(M, DoubleElement):
            mat = M.first if gid.kind == "y" else M.second if gid.kind == "z" else None
        else:
            mat = M if gid.kind == "x" else None
        if mat is not None:
            v = mat[(gid.i, gid.j)]
            if v:
                out = out + c * v
    return out


def phi_from_star(M: DoubleElement, D: int | None = None) -> DoubleElement:
    """phi(delta_M)(g) = conj(delta_M(g*)), reassembled as a double element."""
    if M.parity is Parity.INHOMOGENEOUS:
        raise InhomogeneousOperand("phi_from_star needs a homogeneous element")
    shape = M.shape
    H = hopf_algebra(shape, D or max(2, shape.size))
    first, second = {}, {}
    for kind, slot in (("y", first), ("z", second)):
        for (_, i, j) in H.generators((kind,)):
            v = eps_pair(M, H.star(H.gen(kind, i, j))).conj()
            if v:
                slot[(i, j)] = v
    a = SuperMatrix(shape, first, M.parity if first else None)
    b = SuperMatrix(shape, second, M.parity if second else None)
    if a.is_zero():
        a = SuperMatrix.zero(shape, M.parity)
    if b.is_zero():
        b = SuperMatrix.zero(shape, M.parity)
    return DoubleElement(a, b, M.in_d)


def phi_single_from_star(M: SuperMatrix, D: int | None = None) -> SuperMatrix:
    if M.parity is Parity.INHOMOGENEOUS:
        raise InhomogeneousOperand("phi_single_from_star needs a homogeneous matrix")
    shape = M.shape
    H = hopf_algebra(shape, D or max(2, shape.size))
    e = {}
    for (_, i, j) in H.generators(("x",)):
        v = eps_pair(M, H.star(H.gen("x", i, j))).conj()
        if v:
            e[(i, j)] = v
    out = SuperMatrix(shape, e)
    if out.is_zero():
        out.parity = M.parity
    return out


@lru_cache(maxsize=None)
def hopf_algebra(shape: BlockShape, D: int) -> HopfAlgebra:
    return HopfAlgebra(shape, D)


# ---------------------------------------------------------------- axiom suites

def _counit_slots(H: HopfAlgebra, t: TensorPoly) -> tuple[SuperPoly, SuperPoly]:
    """((eps (x) id) t, (id (x) eps) t)."""
    left, right = {}, {}
    for (a, b), c in t.terms.items():
        if a == ():
            left[b] = left.get(b, ZERO) + c
        if b == ():
            right[a] = right.get(a, ZERO) + c
    return SuperPoly(H.table, H.D, left), SuperPoly(H.table, H.D, right)


def hopf_axioms_suite(shape: BlockShape, D: int = 3, seed: int = 0):
    """Coassociativity, counit and the two-sided antipode law on all generators."""
    from .report import SuiteResult
    res = SuiteResult("hopf-axioms")
    H = hopf_algebra(shape, D)
    N = shape.size
    for (k, i, j) in H.generators(KINDS):
        f = H.gen(k, i, j)
        d = H.coproduct(f)
        res.check(H.coproduct_slot(d, 0) == H.coproduct_slot(d, 1), lambda: {"coassociativity": f"{k}[{i},{j}]"})
        left, right = _counit_slots(H, d)
        res.check(left == f and right == f, lambda: {"counit": f"{k}[{i},{j}]"})
        a, b = H.zero(), H.zero()
        for s in range(1, N + 1):
            a = a + H.u(k, i, s) * H.antipode(H.u(k, s, j))
            b = b + H.antipode(H.u(k, i, s)) * H.u(k, s, j)
        want = H.one() if i == j else H.zero()
        res.check(a == want and b == want, lambda: {"antipode": f"{k}[{i},{j}]"})
    res.notes["degree"] = D
    return res


def star_axioms_suite(shape: BlockShape, D: int = 3, seed: int = 0):
    """p1-p5 and the graded involution law p7 on all generators."""
    import random
    from .report import SuiteResult
    res = SuiteResult("star-axioms")
    H = hopf_algebra(shape, D)
    gens = [(f"{k}[{i},{j}]", H.gen(k, i, j), shape.entry_parity(i, j)) for (k, i, j) in H.generators(KINDS)]
    stars = [H.star(f) for _, f, _ in gens]
    plain = signed = True
    for (label, f, bit), fs in zip(gens, stars):
        d, ds = H.coproduct(f), H.coproduct(fs)
        plain = plain and H.tensor_star(d, False) == ds
        signed = signed and H.tensor_star(d, True) == ds
        res.check(H.counit(fs) == H.counit(f).conj(), lambda: {"p2": label})
        res.check(H.star(f.scale(I)) == fs.scale(-I), lambda: {"p3": label})
        res.check(H.antipode(fs) == H.star(H.antipode(f)), lambda: {"p5": label})
        res.check(H.star(fs) == (-f if bit else f), lambda: {"p7": label})
    convention = "plain" if plain else "signed" if signed else None
    res.check(convention is not None, lambda: {"p1": "neither tensor-star convention holds"})
    res.notes["tensor_star"] = convention
    rng = random.Random(seed)
    for _ in range(min(60, len(gens) ** 2)):
        a, b = rng.randrange(len(gens)), rng.randrange(len(gens))
        prod = gens[a][1] * gens[b][1]
        res.check(H.star(prod) == stars[a] * stars[b], lambda: {"p4": [gens[a][0], gens[b][0]]})
    res.notes["degree"] = D
    return res
