"""Epsilon-derivations and the invariant superderivations nabla^L, nabla^R.

A direction is a triple (kind, s, t): the matrix unit E_st placed in the
y-slot, z-slot or (single group) x-slot. Both nablas are computed on
generators by closed forms and extended to monomials by the super-Leibniz
rule; the coproduct route is kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InhomogeneousOperand, RankMismatch
from .hopf import SuperPoly, TensorPoly, canonical, eps_pair, generator_table, hopf_algebra, mono_parity
from .scalar import ONE, ZERO, RadicalScalar
from .supermatrix import BlockShape, DoubleElement, Parity, SuperMatrix, double_bracket

SIDES = ("L", "R")


@dataclass(frozen=True)
class EpsDerivation:
    matrix: DoubleElement

    @property
    def parity(self) -> Parity:
        return self.matrix.parity

    def __call__(self, f: SuperPoly) -> RadicalScalar:
        return eps_apply(self, f)


def eps_apply(d: EpsDerivation | DoubleElement, f: SuperPoly) -> RadicalScalar:
    """delta(f): pairing of the matrix with the linear part of f."""
    M = d.matrix if isinstance(d, EpsDerivation) else d
    return eps_pair(M, f)


def directions(M) -> list:
    """[((kind, s, t), coefficient)] for a DoubleElement or single SuperMatrix."""
    if isinstance(M, DoubleElement):
        return [((k, s, t), v) for (k, s, t), v in M.units()]
    return [(("x", s, t), v) for (s, t), v in sorted(M.items())]


def _homogeneous(M) -> int:
    if M.parity is Parity.INHOMOGENEOUS:
        raise InhomogeneousOperand("nabla needs a homogeneous direction")
    return M.bit


@lru_cache(maxsize=None)
def _nabla_generator(shape: BlockShape, side: str, p: tuple, g: int) -> tuple:
    """nabla_p on one generator: ((monomial, int coefficient), ...)."""
    table = generator_table(shape)
    kind, s, t = p
    gid = table.gens[g]
    if gid.kind != kind:
        return ()
    i, j = gid.i, gid.j
    if side == "R":
        if s != i:
            return ()
        a, b, sign = t, j, 1
    else:
        if t != j:
            return ()
        a, b = i, s
        e = shape.entry_parity(s, t) * (shape.entry_parity(i, j) + 1)
        sign = -1 if e % 2 else 1
    out = [((table.id(kind, a, b),), sign)]
    if a == b:
        out.append(((), sign))
    return tuple(out)


@lru_cache(maxsize=1 << 20)
def nabla_unit_mono(shape: BlockShape, side: str, p: tuple, mono: tuple) -> tuple:
    """nabla_p on a canonical monomial, by super-Leibniz; integer coefficients."""
    table = generator_table(shape)
    ne = table.n_even
    dp = shape.entry_parity(p[1], p[2])
    acc: dict = {}
    passed = 0
    for pos, g in enumerate(mono):
        img = _nabla_generator(shape, side, p, g)
        if img:
            koszul = -1 if (dp * passed) % 2 else 1
            before, after = mono[:pos], mono[pos + 1:]
            for h, c in img:
                sign, m = canonical(before + h + after, ne)
                if m is None:
                    continue
                acc[m] = acc.get(m, 0) + koszul * sign * c
        passed += 1 if g >= ne else 0
    return tuple((m, c) for m, c in acc.items() if c)


def nabla_unit(side: str, p: tuple, f: SuperPoly) -> SuperPoly:
    shape = f.table.shape
    out: dict = {}
    for mono, c in f.terms.items():
        for m, k in nabla_unit_mono(shape, side, p, mono):
            v = out.get(m, ZERO) + c.scale(k)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return SuperPoly._raw(f.table, f.D, out)


def nabla(side: str, M, f: SuperPoly) -> SuperPoly:
    _homogeneous(M)
    out = SuperPoly.zero(f.table, f.D)
    for p, c in directions(M):
        out = out + nabla_unit(side, p, f).scale(c)
    return out


def nabla_R(M, f: SuperPoly) -> SuperPoly:
    """Right-invariant derivation: u_ij -> sum_k M_ik u_kj on generators."""
    return nabla("R", M, f)


def nabla_L(M, f: SuperPoly) -> SuperPoly:
    """Left-invariant derivation: u_ij -> sum_k +-u_ik M_kj on generators."""
    if f.parity is Parity.INHOMOGENEOUS:
        raise InhomogeneousOperand("nabla_L needs a homogeneous argument")
    return nabla("L", M, f)


# ---------------------------------------------------------------- coproduct oracle

def _pair_slot(M, m: tuple, table) -> RadicalScalar:
    if len(m) != 1:
        return ZERO
    return eps_pair(M, SuperPoly._raw(table, 1, {m: ONE}))


def nabla_R_via_coproduct(M, f: SuperPoly) -> SuperPoly:
    """(delta_M (x) id) Delta f."""
    H = hopf_algebra(f.table.shape, f.D)
    out: dict = {}
    for (a, b), c in H.coproduct(f).terms.items():
        v = _pair_slot(M, a, f.table)
        if v:
            out[b] = out.get(b, ZERO) + v * c
    return SuperPoly(f.table, f.D, out)


def nabla_L_via_coproduct(M, f: SuperPoly) -> SuperPoly:
    """(-1)^{|M|(|f|+1)} (id (x) delta_M) Delta f."""
    H = hopf_algebra(f.table.shape, f.D)
    bm, bf = _homogeneous(M), f.bit
    out: dict = {}
    for (a, b), c in H.coproduct(f).terms.items():
        v = _pair_slot(M, b, f.table)
        if v:
            out[a] = out.get(a, ZERO) + v * c
    res = SuperPoly(f.table, f.D, out)
    return -res if (bm * (bf + 1)) % 2 else res


# ---------------------------------------------------------------- tensors

def tensor_eval(ops: list, t: TensorPoly) -> SuperPoly:
    """Apply (side, M) to each slot with the Koszul prefactor, then multiply."""
    if len(ops) != t.rank:
        raise RankMismatch(f"{len(ops)} operators for a rank-{t.rank} tensor")
    bits = [_homogeneous(M) for _, M in ops]
    ne = t.table.n_even
    out = SuperPoly.zero(t.table, t.D)
    for key, c in t.terms.items():
        pars = [mono_parity(m, ne) for m in key]
        e = sum(bits[k] * sum(pars[:k]) for k in range(t.rank))
        prod = SuperPoly.const(t.table, t.D, -c if e % 2 else c)
        for (side, M), m in zip(ops, key):
            prod = prod * nabla(side, M, SuperPoly._raw(t.table, t.D, {m: ONE}))
            if not prod:
                break
        out = out + prod
    return out


def apply_in_slot(side: str, M, t: TensorPoly, slot: int) -> TensorPoly:
    """id (x) ... nabla ... (x) id with the Koszul sign for passing earlier slots."""
    bm = _homogeneous(M)
    ne = t.table.n_even
    out = TensorPoly._raw(t.table, t.D, t.rank, {})
    for key, c in t.terms.items():
        passed = sum(mono_parity(m, ne) for m in key[:slot])
        img = nabla(side, M, SuperPoly._raw(t.table, t.D, {key[slot]: ONE}))
        sgn = -1 if (bm * passed) % 2 else 1
        terms = {}
        for m, v in img.terms.items():
            k2 = key[:slot] + (m,) + key[slot + 1:]
            if sum(map(len, k2)) <= t.D:
                terms[k2] = v * c if sgn > 0 else -(v * c)
        out = out + TensorPoly(t.table, t.D, t.rank, terms)
    return out


# ---------------------------------------------------------------- brackets of derivations

def eps_bracket_apply(M, N, f: SuperPoly) -> RadicalScalar:
    """[delta_M, delta_N](f) = delta_M(f')delta_N(f'') - (-1)^{|M||N|} delta_N(f')delta_M(f'')."""
    H = hopf_algebra(f.table.shape, f.D)
    sign = -1 if (_homogeneous(M) * _homogeneous(N)) % 2 else 1
    out = ZERO
    for (a, b), c in H.coproduct(f).terms.items():
        if len(a) == 1 and len(b) == 1:
            t1 = _pair_slot(M, a, f.table) * _pair_slot(N, b, f.table)
            t2 = _pair_slot(N, a, f.table) * _pair_slot(M, b, f.table)
            out = out + c * (t1 - t2 if sign > 0 else t1 + t2)
    return out


def operator_commutator(side: str, M, N, f: SuperPoly) -> SuperPoly:
    """nabla_M nabla_N f - (-1)^{|M||N|} nabla_N nabla_M f."""
    a = nabla(side, M, nabla(side, N, f))
    b = nabla(side, N, nabla(side, M, f))
    return a + b if (_homogeneous(M) * _homogeneous(N)) % 2 else a - b


def bracket_of(M, N):
    if isinstance(M, DoubleElement):
        return double_bracket(M, N)
    from .supermatrix import superbracket
    return superbracket(M, N)


def commutator_sign(side: str, elements: list, generators: list) -> int | None:
    """The sign s with [nabla_M, nabla_N] = s (-1)^{|M||N|} nabla_[M,N] on all generators.

    Returns None when no single s fits.
    """
    found = None
    for M in elements:
        for N in elements:
            MN = bracket_of(M, N)
            twist = -1 if (_homogeneous(M) * _homogeneous(N)) % 2 else 1
            for f in generators:
                lhs = operator_commutator(side, M, N, f)
                rhs = nabla(side, MN, f).scale(twist) if not MN.is_zero() else None
                if rhs is None or not rhs:
                    if lhs:
                        return None
                    continue
                for s in (1, -1):
                    if lhs == rhs.scale(s):
                        break
                else:
                    return None
                if found is None:
                    found = s
                elif found != s:
                    return None
    return found
