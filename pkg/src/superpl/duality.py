"""The cotangent space Ker(eps)/Ker(eps)^2 of the double and its induced structures."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .errors import DualityValidationFailed, NotInKernel
from .hopf import SuperPoly, hopf_algebra
from .liealg import PHI, RealStructure, build_double_basis, build_sl_basis, check_real_structure, k_twist, phi_double
from .linalg import invert_matrix, rank
from .poisson import sum_engine
from .report import SuiteResult, VerificationReport
from .scalar import I, ONE, ZERO, RadicalScalar
from .supermatrix import BlockShape, DoubleElement, Parity, double_bracket, sp_double

HALF_I = RadicalScalar.rational(0, mpq(1, 2))
BRACKET_DEGREE = 2


@dataclass(frozen=True)
class CotangentVector:
    """The class of f in Ker(eps)/Ker(eps)^2, stored as the linear part of f."""

    shape: BlockShape
    coordinates: tuple  # sorted ((generator id, coefficient), ...)

    @classmethod
    def from_dict(cls, shape, coords: dict) -> "CotangentVector":
        return cls(shape, tuple(sorted((g, c) for g, c in coords.items() if c)))

    @property
    def parity(self) -> Parity:
        table = hopf_algebra(self.shape, 1).table
        bits = {table.parity(g) for g, _ in self.coordinates}
        if not bits:
            return Parity.EVEN
        return Parity.of(bits.pop()) if len(bits) == 1 else Parity.INHOMOGENEOUS

    def as_dict(self) -> dict:
        return dict(self.coordinates)

    def is_zero(self) -> bool:
        return not self.coordinates

    def __add__(self, other):
        d = self.as_dict()
        for g, c in other.coordinates:
            d[g] = d.get(g, ZERO) + c
        return CotangentVector.from_dict(self.shape, d)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c) -> "CotangentVector":
        return CotangentVector.from_dict(self.shape, {g: v * c for g, v in self.coordinates})

    def representative(self, D: int = BRACKET_DEGREE) -> SuperPoly:
        """The linear polynomial with these coordinates."""
        table = hopf_algebra(self.shape, D).table
        return SuperPoly._raw(table, D, {(g,): c for g, c in self.coordinates})


def omega(f: SuperPoly) -> CotangentVector:
    if f.constant_term():
        raise NotInKernel("eps(f) must vanish")
    return CotangentVector.from_dict(f.table.shape, f.linear_part())


def pair(M: DoubleElement, w: CotangentVector) -> RadicalScalar:
    """<delta_M, w>."""
    table = hopf_algebra(w.shape, 1).table
    out = ZERO
    for g, c in w.coordinates:
        gid = table.gens[g]
        mat = M.first if gid.kind == "y" else M.second if gid.kind == "z" else None
        if mat is not None:
            v = mat[(gid.i, gid.j)]
            if v:
                out = out + c * v
    return out


# ---------------------------------------------------------------- families

_G_SIGN = {"E": -1, "E-": -1, "H": -1, "Et": 1, "Et-": 1, "Ht": 1, "V": -1, "V-": 1, "H0": -1}


def _h0_star(shape: BlockShape, M):
    return M * RadicalScalar.rational(mpq(shape.n - shape.m, shape.n + shape.m))


def f_family(shape: BlockShape, D: int = BRACKET_DEGREE) -> list:
    """One element per sl basis vector, as displayed: lies in the ideal J."""
    H = hopf_algebra(shape, D)
    out = []
    for v in build_sl_basis(shape).vectors:
        M = _h0_star(shape, v.matrix) if v.family == "H0" else v.matrix
        f = H.zero()
        if v.family in ("E", "Et", "V"):
            for (i, j), c in M.items():
                f = f + H.u("y", i, j).scale(c)
        elif v.family in ("E-", "Et-", "V-"):
            for (i, j), c in M.items():
                f = f + H.u("z", i, j).scale(c)
        else:
            for (i, j), c in M.items():
                if i == j:
                    h = H.antipode(H.u("y", i, i)) - H.u("z", i, i)
                    f = f + h.scale(-c * RadicalScalar.rational(mpq(1, 2)))
        out.append(f)
    return out


def g_family(shape: BlockShape, D: int = BRACKET_DEGREE) -> list:
    """sum A_kl u_kl + B_kl w_kl with (A, B) = (c M, -c M), c = -+i/2: lies in I."""
    H = hopf_algebra(shape, D)
    out = []
    for v in build_sl_basis(shape).vectors:
        M = _h0_star(shape, v.matrix) if v.family == "H0" else v.matrix
        c = HALF_I if _G_SIGN[v.family] > 0 else -HALF_I
        g = H.zero()
        for (i, j), x in M.items():
            g = g + H.u("y", i, j).scale(c * x) - H.u("z", i, j).scale(c * x)
        out.append(g)
    return out


@dataclass
class DualFamilies:
    shape: BlockShape
    f_list: list
    g_list: list
    gram: list
    failures: list
    f_vectors: list = field(default_factory=list)  # corrected, dual to T
    g_vectors: list = field(default_factory=list)  # corrected, dual to t
    correction: list = field(default_factory=list)

    @property
    def validated(self) -> bool:
        return not self.failures


def validate_families(shape: BlockShape, strict: bool = False) -> DualFamilies:
    """Kronecker check of the families against (delta_T, delta_t), then Gram correction."""
    basis = build_double_basis(shape)
    fl, gl = f_family(shape), g_family(shape)
    vecs = [omega(x) for x in fl + gl]
    dirs = basis.T + basis.t
    n = len(dirs)
    gram = [[pair(dirs[i], vecs[j]) for j in range(n)] for i in range(n)]
    failures = []
    for i in range(n):
        for j in range(n):
            want = ONE if i == j else ZERO
            if gram[i][j] != want:
                failures.append((i + 1, j + 1, gram[i][j]))
    if strict and failures:
        raise DualityValidationFailed(*failures[0])
    inv = invert_matrix(gram)
    corrected = []
    for j in range(n):
        acc = CotangentVector.from_dict(shape, {})
        for k in range(n):
            if inv[k][j]:
                acc = acc + vecs[k].scale(inv[k][j])
        corrected.append(acc)
    correction = [(k + 1, j + 1, inv[k][j]) for j in range(n) for k in range(n)
                  if inv[k][j] != (ONE if k == j else ZERO)]
    d = len(basis)
    return DualFamilies(shape, fl, gl, gram, failures, corrected[:d], corrected[d:], correction)


@lru_cache(maxsize=None)
def dual_families(shape: BlockShape) -> DualFamilies:
    return validate_families(shape)


# ---------------------------------------------------------------- induced structures

def induced_bracket(a, b) -> CotangentVector:
    """omega({f, g}) for representatives f, g (CotangentVectors use linear ones)."""
    f = a.representative() if isinstance(a, CotangentVector) else a
    g = b.representative() if isinstance(b, CotangentVector) else b
    for x in (f, g):
        if x.constant_term():
            raise NotInKernel("representatives must lie in Ker(eps)")
    return omega(sum_engine(f.table.shape).bracket(f, g))


def real_structure_on_dual(a) -> CotangentVector:
    """omega(f*)."""
    f = a.representative() if isinstance(a, CotangentVector) else a
    if f.constant_term():
        raise NotInKernel("representatives must lie in Ker(eps)")
    H = hopf_algebra(f.table.shape, f.D)
    return omega(H.star(f))


def t_coordinates(shape, w: CotangentVector) -> list:
    return [pair(T, w) for T in build_double_basis(shape).T]


def small_t_coordinates(shape, w: CotangentVector) -> list:
    return [pair(t, w) for t in build_double_basis(shape).t]


def _i_pow(k: int) -> RadicalScalar:
    return [ONE, I, -ONE, -I][k % 4]


def _sgn(e: int) -> RadicalScalar:
    return -ONE if e % 2 else ONE


def verify_duality_isomorphisms(shape: BlockShape, seed: int = 0) -> VerificationReport:
    res = duality_suite(shape, seed)
    return VerificationReport({"m": shape.m, "n": shape.n}, [res])


def duality_suite(shape: BlockShape, seed: int = 0) -> SuiteResult:
    res = SuiteResult("duality")
    basis = build_double_basis(shape)
    bits = basis.bits
    d = len(basis)
    fam = dual_families(shape)
    res.notes["displayed_pairing_failures"] = [[i, j, str(v)] for i, j, v in fam.failures]
    res.notes["gram_correction"] = [[k, j, str(v)] for k, j, v in fam.correction]
    F, G = fam.f_vectors, fam.g_vectors

    # corrected families are exactly dual and span the cotangent space
    for j in range(d):
        tc, sc = t_coordinates(shape, F[j]), small_t_coordinates(shape, F[j])
        res.check(all(tc[i] == (ONE if i == j else ZERO) for i in range(d)) and not any(sc),
                  lambda: {"f_dual": j + 1})
        tc, sc = t_coordinates(shape, G[j]), small_t_coordinates(shape, G[j])
        res.check(not any(tc) and all(sc[i] == (ONE if i == j else ZERO) for i in range(d)),
                  lambda: {"g_dual": j + 1})
    rows = [dict(v.coordinates) for v in F + G]
    cols = sorted({g for r in rows for g in r})
    res.check(rank(rows, cols) == 2 * d, lambda: {"direct_sum": "families not independent"})

    T, t = basis.T, basis.t
    ff = {(i, j): induced_bracket(F[i], F[j]) for i in range(d) for j in range(d)}
    gg = {(i, j): induced_bracket(G[i], G[j]) for i in range(d) for j in range(d)}
    for i in range(d):
        for j in range(d):
            # f x f closes in G* with the structure constants of the t's
            x = ff[(i, j)]
            br = double_bracket(t[i], t[j])
            want = [_sgn(bits[i] * bits[j]) * sp_double(T[k], br) for k in range(d)]
            res.check(t_coordinates(shape, x) == want and not any(small_t_coordinates(shape, x)),
                      lambda: {"f_bracket": [i + 1, j + 1]})
            # g x g closes in B* with the structure constants of the T's
            y = gg[(i, j)]
            br = double_bracket(T[i], T[j])
            want = [_sgn(bits[i] * bits[j] + 1) * sp_double(br, t[k]) for k in range(d)]
            res.check(small_t_coordinates(shape, y) == want and not any(t_coordinates(shape, y)),
                      lambda: {"g_bracket": [i + 1, j + 1]})
            z = induced_bracket(F[i], G[j])
            res.check(z.is_zero(), lambda: {"cross_bracket": [i + 1, j + 1]})

    # well-definedness: adding an element of Ker(eps)^2 changes nothing
    H = hopf_algebra(shape, BRACKET_DEGREE)
    gens = [H.gen(*g) for g in H.generators()]
    even = [g for g in gens if g.bit == 0]
    odd = [g for g in gens if g.bit == 1]
    for i in range(d):
        e = even[i % len(even)]
        p = e * (odd[i % len(odd)] if bits[i] else even[(3 * i + 1) % len(even)])
        other = G[(i + 1) % d]
        lhs = induced_bracket(F[i].representative() + p, other)
        res.check(lhs == induced_bracket(F[i], other), lambda: {"representative": i + 1})

    # T: i^{|a|} f_a -> t_a is a Lie superalgebra isomorphism onto b
    for a in range(d):
        for b in range(d):
            coords = t_coordinates(shape, ff[(a, b)])
            got = [_i_pow(bits[a] + bits[b] - bits[k]) * coords[k] if coords[k] else ZERO for k in range(d)]
            want = [sp_double(T[k], double_bracket(t[a], t[b])) for k in range(d)]
            res.check(got == want, lambda: {"T_iso": [a + 1, b + 1]})
    # T transports phi on G* to phi on b
    for a in range(d):
        rep = F[a].scale(_i_pow(bits[a]))
        image = real_structure_on_dual(rep)
        coords = t_coordinates(shape, image)
        mapped = DoubleElement.zero(shape, Parity.of(bits[a]))
        for k, c in enumerate(coords):
            if c:
                mapped = mapped + t[k] * (_i_pow(-bits[k]) * c)
        ok = mapped == phi_double(t[a]) and not any(small_t_coordinates(shape, image))
        res.check(ok, lambda: {"T_phi": a + 1, "got": repr(mapped)})

    # S: (-1)^{|a|+1} g_a -> T_a, checked as displayed
    s_scale = [_sgn(b + 1) for b in bits]
    alt_scale = [-_i_pow(b) for b in bits]
    alt_ok = True
    for a in range(d):
        for b in range(d):
            coords = small_t_coordinates(shape, gg[(a, b)])
            want = [sp_double(double_bracket(T[a], T[b]), t[k]) for k in range(d)]
            got = [s_scale[a] * s_scale[b] * coords[k] * s_scale[k].invert() if coords[k] else ZERO
                   for k in range(d)]
            res.check(got == want, lambda: {"S_iso": [a + 1, b + 1], "parities": [bits[a], bits[b]]})
            alt = [alt_scale[a] * alt_scale[b] * coords[k] * alt_scale[k].invert() if coords[k] else ZERO
                   for k in range(d)]
            alt_ok = alt_ok and alt == want
    res.notes["S_iso_with_-i^|a|_rescaling"] = alt_ok
    # S transports phi on B* to the K-twisted structure
    for a in range(d):
        rep = G[a].scale(s_scale[a])
        image = real_structure_on_dual(rep)
        coords = small_t_coordinates(shape, image)
        mapped = DoubleElement.zero(shape, Parity.of(bits[a]))
        for k, c in enumerate(coords):
            if c:
                mapped = mapped + T[k] * (c * s_scale[k].invert())
        want = phi_double(T[a]) * _sgn(bits[a])
        res.check(mapped == want and not any(t_coordinates(shape, image)),
                  lambda: {"S_phi": a + 1, "got": repr(mapped), "want": repr(want)})
    twisted = RealStructure("graded", lambda x: phi_double(x) * _sgn(x.bit))
    combined = basis.combined()
    for x in combined:
        res.check(k_twist(x) == twisted(x), lambda: {"k_twist": repr(x)})
    check_real_structure(twisted, combined, res)
    res.notes["phi"] = PHI.kind
    return res


def export_dual_constants(shape: BlockShape) -> list[dict]:
    """Induced structure constants on g* (f family) and b* (g family)."""
    fam = dual_families(shape)
    d = len(fam.f_vectors)
    out = []
    for tag, vecs, coord in (("g-star", fam.f_vectors, t_coordinates),
                             ("b-star", fam.g_vectors, small_t_coordinates)):
        for i in range(d):
            for j in range(d):
                for k, v in enumerate(coord(shape, induced_bracket(vecs[i], vecs[j]))):
                    if v:
                        out.append({"basis": tag, "i": i + 1, "j": j + 1, "k": k + 1,
                                    "value": v, "source": tag})
    return out
