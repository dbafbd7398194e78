"""The normalized basis of sl(m|n), the double d = g + b and its Baxter operator."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .errors import DualityValidationFailed, InhomogeneousOperand, NotInDouble
from .linalg import rank
from .report import SuiteResult, VerificationReport
from .scalar import I, ONE, ZERO, RadicalScalar
from .supermatrix import (
    BlockShape,
    DoubleElement,
    Parity,
    SuperMatrix,
    double_bracket,
    sp_double,
    sp_sl,
    supertrace,
    supertranspose,
)

TWO_I = RadicalScalar.rational(0, 2)


@dataclass(frozen=True)
class BasisVector:
    label: str
    family: str  # E, E-, H, Et, Et-, Ht, V, V-, H0
    index: tuple
    matrix: SuperMatrix = field(compare=False)

    @property
    def bit(self) -> int:
        return self.matrix.bit


@dataclass
class SlBasis:
    shape: BlockShape
    vectors: list
    duals: list

    def __len__(self):
        return len(self.vectors)

    @property
    def matrices(self) -> list:
        return [v.matrix for v in self.vectors]

    def bits(self) -> list:
        return [v.bit for v in self.vectors]


def _diag(shape, values: dict, scale=ONE) -> SuperMatrix:
    return SuperMatrix(shape, {(k, k): scale * RadicalScalar.rational(v) for k, v in values.items()})


def cartan_normalizer(k: int) -> RadicalScalar:
    """1 / sqrt(k (k + 1))."""
    return RadicalScalar.sqrt(k * (k + 1)).invert()


def h0_matrix(shape: BlockShape) -> SuperMatrix:
    m, n = shape.m, shape.n
    if n > m:
        c = RadicalScalar.sqrt(n) * RadicalScalar.sqrt(m * (n - m)).invert()
    else:
        c = I * RadicalScalar.sqrt(n) * RadicalScalar.sqrt(m * (m - n)).invert()
    vals = {k: 1 for k in range(1, m + 1)}
    vals.update({k: mpq(m, n) for k in range(m + 1, m + n + 1)})
    return _diag(shape, vals, c)


@lru_cache(maxsize=None)
def build_sl_basis(shape: BlockShape) -> SlBasis:
    """Root vectors, Cartan vectors and H_0 in the fixed order, with duals."""
    m, n = shape.m, shape.n
    N = m + n
    E = lambda s, t: SuperMatrix.unit(shape, s, t)  # noqa: E731
    even_pos = [(s, t) for s in range(1, m + 1) for t in range(s + 1, m + 1)]
    odd_block_pos = [(s, t) for s in range(m + 1, N + 1) for t in range(s + 1, N + 1)]
    mixed_pos = [(s, t) for s in range(1, m + 1) for t in range(m + 1, N + 1)]

    vecs, duals = [], []

    def add(label, family, index, mat, dual):
        vecs.append(BasisVector(label, family, index, mat))
        duals.append(dual)

    for s, t in even_pos:
        add(f"E({s},{t})", "E", (s, t), E(s, t), TWO_I * E(t, s))
    for s, t in even_pos:
        add(f"E({t},{s})", "E-", (t, s), E(t, s), TWO_I * E(s, t))
    for k in range(1, m):
        vals = {l: 1 for l in range(1, k + 1)}
        vals[k + 1] = -k
        h = _diag(shape, vals, cartan_normalizer(k))
        add(f"H{k}", "H", (k,), h, TWO_I * h)
    for s, t in odd_block_pos:
        add(f"Et({s},{t})", "Et", (s, t), I * E(s, t), TWO_I * I * E(t, s))
    for s, t in odd_block_pos:
        add(f"Et({t},{s})", "Et-", (t, s), I * E(t, s), TWO_I * I * E(s, t))
    # local index k = 1..n-1 inside the odd block
    for k in range(1, n):
        vals = {m + l: 1 for l in range(1, k + 1)}
        vals[m + k + 1] = -k
        h = _diag(shape, vals, I * cartan_normalizer(k))
        add(f"Ht{k}", "Ht", (k,), h, TWO_I * h)
    for s, t in mixed_pos:
        add(f"V({s},{t})", "V", (s, t), E(s, t), TWO_I * E(t, s))
    for s, t in mixed_pos:
        add(f"V({t},{s})", "V-", (t, s), E(t, s), -TWO_I * E(s, t))
    h0 = h0_matrix(shape)
    add("H0", "H0", (), h0, TWO_I * h0)

    basis = SlBasis(shape, vecs, duals)
    validate_sl_basis(basis)
    return basis


def validate_sl_basis(basis: SlBasis) -> None:
    for i, v in enumerate(basis.vectors):
        if supertrace(v.matrix):
            raise NotInDouble(f"{v.label} is not supertraceless")
        for j, w in enumerate(basis.duals):
            val = sp_sl(v.matrix, w)
            if val != (ONE if i == j else ZERO):
                raise DualityValidationFailed(i, j, val)


@dataclass
class DoubleBasis:
    shape: BlockShape
    labels: list
    bits: list
    T: list
    t: list

    def __len__(self):
        return len(self.T)

    @property
    def T_hat(self) -> list:
        return self.t

    @property
    def t_hat(self) -> list:
        return [-x if b else x for x, b in zip(self.T, self.bits)]

    def combined(self) -> list:
        return self.T + self.t

    def combined_duals(self) -> list:
        return self.T_hat + self.t_hat

    def combined_labels(self) -> list:
        return [f"T[{l}]" for l in self.labels] + [f"t[{l}]" for l in self.labels]

    def combined_bits(self) -> list:
        return self.bits + self.bits

    def coordinates(self, x: DoubleElement) -> tuple[list, list]:
        """Coefficients (c, d) with x = sum c_k T_k + d_k t_k."""
        return [sp_double(x, tk) for tk in self.t], [sp_double(Tk, x) for Tk in self.T]


@lru_cache(maxsize=None)
def build_double_basis(shape: BlockShape) -> DoubleBasis:
    sl = build_sl_basis(shape)
    zero = lambda p: SuperMatrix.zero(shape, p)  # noqa: E731
    T, t = [], []
    for v in sl.vectors:
        M = v.matrix
        T.append(DoubleElement(M, M))
        f = v.family
        if f in ("E", "Et", "V"):
            neg = _partner(sl, v).matrix
            t.append(DoubleElement(TWO_I * neg, zero(M.parity)))
        elif f in ("E-", "Et-"):
            pos = _partner(sl, v).matrix
            t.append(DoubleElement(zero(M.parity), -TWO_I * pos))
        elif f == "V-":
            pos = _partner(sl, v).matrix
            t.append(DoubleElement(zero(M.parity), TWO_I * pos))
        else:  # Cartan directions
            t.append(DoubleElement(I * M, -(I * M)))
    basis = DoubleBasis(shape, [v.label for v in sl.vectors], [v.bit for v in sl.vectors], T, t)
    validate_double_basis(basis)
    return basis


def _partner(sl: SlBasis, v: BasisVector) -> BasisVector:
    """The root vector of opposite sign, i.e. the plain transpose."""
    s, t = v.index
    target = {"E": "E-", "E-": "E", "Et": "Et-", "Et-": "Et", "V": "V-", "V-": "V"}[v.family]
    for w in sl.vectors:
        if w.family == target and w.index == (t, s):
            return w
    raise KeyError(v.label)


def validate_double_basis(basis: DoubleBasis) -> None:
    for i, Ti in enumerate(basis.T):
        for j, tj in enumerate(basis.t):
            val = sp_double(Ti, tj)
            if val != (ONE if i == j else ZERO):
                raise DualityValidationFailed(i, j, val)


# ---------------------------------------------------------------- g + b split

def in_g(x: DoubleElement) -> bool:
    return x.first == x.second


def in_b(x: DoubleElement) -> bool:
    A, B = x.first, x.second
    if not A.upper_part().is_zero() or not B.lower_part().is_zero():
        return False
    return (A.diagonal_part() + B.diagonal_part()).is_zero()


def decompose(x: DoubleElement) -> tuple[DoubleElement, DoubleElement]:
    """Split x = g_part + b_part along d = g + b."""
    A, B = x.first, x.second
    if supertrace(A) or supertrace(B):
        raise NotInDouble("decompose needs supertraceless components")
    half = RadicalScalar.rational(mpq(1, 2))
    C = A.upper_part() + B.lower_part() + (A.diagonal_part() + B.diagonal_part()) * half
    C.parity = x.parity if not C.is_zero() else C.parity
    g = DoubleElement(_retag(C, x.parity), _retag(C, x.parity))
    b = DoubleElement(_retag(A - C, x.parity), _retag(B - C, x.parity))
    return g, b


def _retag(M: SuperMatrix, p: Parity) -> SuperMatrix:
    if M.is_zero():
        return SuperMatrix.zero(M.shape, p)
    return M


def r_operator(x: DoubleElement) -> DoubleElement:
    g, b = decompose(x)
    return b - g


# ---------------------------------------------------------------- real structures

def _homogeneous_bit(x) -> int:
    if x.parity is Parity.INHOMOGENEOUS:
        raise InhomogeneousOperand("real structures act on homogeneous elements")
    return x.bit


def phi_single(M: SuperMatrix) -> SuperMatrix:
    """phi(M) = -(-1)^{|M|} conj(M)^st on a single copy of sl(m|n)."""
    b = _homogeneous_bit(M)
    out = supertranspose(M.conj())
    return out if b else -out


def phi_single_display(M: SuperMatrix) -> SuperMatrix:
    """The variant (-1)^{|M|} conj(M)^st, kept only to record the sign comparison."""
    return -phi_single(M)


def phi_double(x: DoubleElement) -> DoubleElement:
    """phi(A, B) = (-(-1)^{|B|} conj(B)^st, -(-1)^{|A|} conj(A)^st)."""
    _homogeneous_bit(x)
    return DoubleElement(phi_single(x.second), phi_single(x.first), x.in_d)


def phi_double_display(x: DoubleElement) -> DoubleElement:
    """The variant without complex conjugation, kept for the record."""
    _homogeneous_bit(x)
    return phi_double(x.conj())


def k_matrix(shape: BlockShape) -> SuperMatrix:
    """K = diag(1_m, -1_n)."""
    return SuperMatrix(shape, {(k, k): ONE if k <= shape.m else -ONE for k in shape.indices()})


def k_twist(x: DoubleElement) -> DoubleElement:
    """M -> K phi(K^{-1} M), K acting by left multiplication on both slots."""
    K = k_matrix(x.shape)  # K^{-1} = K
    y = DoubleElement(K @ x.first, K @ x.second, in_d=False)
    p = phi_double(y)
    return DoubleElement(K @ p.first, K @ p.second, in_d=False)


@dataclass
class RealStructure:
    kind: str  # "standard" | "graded"
    action: object

    def __call__(self, x):
        return self.action(x)


PHI = RealStructure("graded", phi_double)


def check_real_structure(structure: RealStructure, elements: list, result: SuiteResult) -> None:
    """Antilinearity, the (graded) square law and the Lie morphism property."""
    phi = structure.action
    for x in elements:
        result.check(phi(x * I) == phi(x) * (-I), lambda: {"antilinear": repr(x)})
        sq = phi(phi(x))
        want = -x if structure.kind == "graded" and x.bit else x
        result.check(sq == want, lambda: {"square": repr(x)})
    for x in elements:
        for y in elements:
            lhs = phi(double_bracket(x, y))
            rhs = double_bracket(phi(x), phi(y))
            result.check(lhs == rhs, lambda: {"morphism": [repr(x), repr(y)]})


# ---------------------------------------------------------------- suites

def verify_baxter(shape: BlockShape) -> VerificationReport:
    """Yang-Baxter defect, antisymmetry of R and its compatibility with phi."""
    return VerificationReport({"m": shape.m, "n": shape.n}, [baxter_suite(shape)])


def baxter_suite(shape: BlockShape) -> SuiteResult:
    basis = build_double_basis(shape)
    xs = basis.combined()
    labels = basis.combined_labels()
    R = {i: r_operator(x) for i, x in enumerate(xs)}
    P = {i: phi_double(x) for i, x in enumerate(xs)}
    res = SuiteResult("baxter")
    for i, x in enumerate(xs):
        res.check(phi_double(R[i]) == r_operator(P[i]), lambda: {"phi_R": labels[i]})
        for j, y in enumerate(xs):
            Rx, Ry = R[i], R[j]
            defect = (double_bracket(Rx, Ry)
                      - r_operator(double_bracket(Rx, y) + double_bracket(x, Ry))
                      + double_bracket(x, y))
            res.check(defect.is_zero(), lambda: {"pair": [labels[i], labels[j]], "defect": defect.to_json()})
            res.check(sp_double(Rx, y) == -sp_double(x, Ry), lambda: {"antisymmetry": [labels[i], labels[j]]})
            res.check(sp_double(P[i], P[j]) == sp_double(x, y).conj(),
                      lambda: {"phi_form": [labels[i], labels[j]]})
    return res


def verify_manin(shape: BlockShape) -> SuiteResult:
    """Isotropy and closure of g and b, plus the dual-basis roundtrip."""
    basis = build_double_basis(shape)
    res = SuiteResult("manin")
    T, t = basis.T, basis.t
    for a, X in enumerate(T):
        for b, Y in enumerate(T):
            res.check(not sp_double(X, Y), {"isotropy_g": [a, b]})
            br = double_bracket(X, Y)
            res.check(all(not sp_double(Tk, br) for Tk in T), {"closure_g": [a, b]})
    for a, X in enumerate(t):
        for b, Y in enumerate(t):
            res.check(not sp_double(X, Y), {"isotropy_b": [a, b]})
            br = double_bracket(X, Y)
            res.check(all(not sp_double(br, tk) for tk in t), {"closure_b": [a, b]})
            res.check(in_b(br), {"membership_b": [a, b]})
    for x in basis.combined():
        c, d = basis.coordinates(x)
        rebuilt = DoubleElement.zero(shape, x.parity)
        for ck, dk, Tk, tk in zip(c, d, T, t):
            if ck:
                rebuilt = rebuilt + Tk * ck
            if dk:
                rebuilt = rebuilt + tk * dk
        res.check(rebuilt == x, {"roundtrip": repr(x)})
    return res


def verify_triangular(shape: BlockShape) -> SuiteResult:
    """sl_+, sl_0, sl_- are subalgebras and the orthogonality relations hold."""
    sl = build_sl_basis(shape)
    parts = {"+": [], "0": [], "-": []}
    for v in sl.vectors:
        f = v.family
        key = "+" if f in ("E", "Et", "V") else "-" if f in ("E-", "Et-", "V-") else "0"
        parts[key].append(v.matrix)

    def part_of(M):
        kinds = set()
        for (i, j), _ in M.items():
            kinds.add("+" if i < j else "-" if i > j else "0")
        return kinds

    from .supermatrix import superbracket
    res = SuiteResult("triangular")
    for key, mats in parts.items():
        for M in mats:
            for N in mats:
                res.check(part_of(superbracket(M, N)) <= {key}, {"subalgebra": key})
    for M in parts["0"]:
        for N in parts["0"] + parts["+"]:
            res.check(part_of(superbracket(M, N)) <= {"+"}, {"zero_plus": True})
        for N in parts["-"]:
            res.check(part_of(superbracket(M, N)) <= {"-"}, {"zero_minus": True})
    for key in ("+", "-"):
        for M in parts[key]:
            for N in parts[key]:
                res.check(not sp_sl(M, N), {"isotropic": key})
    for M in parts["0"]:
        for N in parts["-"]:
            res.check(not sp_sl(M, N), {"orth_0_minus": True})
    return res


def phi_fixed_dimensions(shape: BlockShape) -> tuple[int, int]:
    """Real dimensions of the even and odd phi-fixed subspaces of g.

    An element (M, M) of g is described by real unknowns (re, im) for each
    entry of M of the given parity; the fixed-point equations and Str M = 0
    are real-linear with rational coefficients.
    """
    dims = []
    N = shape.size
    for parity in (0, 1):
        cells = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)
                 if shape.entry_parity(i, j) == parity]
        cols = [(c, part) for c in cells for part in (0, 1)]
        rows = []
        # phi(M)_ij = sign_ij * conj(M_ji); fixed point: M_ij - sign_ij conj(M_ji) = 0
        for (i, j) in cells:
            probe = SuperMatrix(shape, {(j, i): ONE}, Parity.of(parity))
            sign = phi_single(probe)[(i, j)]
            rows.append(_accumulate([(((i, j), 0), ONE), (((j, i), 0), -sign)]))
            rows.append(_accumulate([(((i, j), 1), ONE), (((j, i), 1), sign)]))
        if parity == 0:
            for part in (0, 1):
                rows.append({((k, k), part): ONE if k <= shape.m else -ONE for k in shape.indices()})
        dims.append(len(cols) - rank(rows, cols))
    return dims[0], dims[1]


def _accumulate(pairs) -> dict:
    row: dict = {}
    for k, v in pairs:
        row[k] = row.get(k, ZERO) + v
    return {k: v for k, v in row.items() if v}


def verify_real_form(shape: BlockShape) -> SuiteResult:
    res = SuiteResult("real-form")
    even, odd = phi_fixed_dimensions(shape)
    m, n = shape.m, shape.n
    res.check(even == m * m + n * n - 1, {"even_dim": even, "expected": m * m + n * n - 1})
    res.check(odd == 0, {"odd_dim": odd})
    res.notes["fixed_dims"] = {"even": even, "odd": odd}
    basis = build_double_basis(shape)
    check_real_structure(PHI, basis.combined(), res)
    for x in basis.T:
        res.check(in_g(phi_double(x)), {"phi_preserves_g": repr(x)})
    for x in basis.t:
        res.check(in_b(phi_double(x)), {"phi_preserves_b": repr(x)})
    return res


def structure_constants(shape: BlockShape) -> list[dict]:
    """Nonzero c with [b_i, b_j] = sum c b_k over the combined basis T + t."""
    basis = build_double_basis(shape)
    xs = basis.combined()
    d = len(basis)
    out = []
    for i, x in enumerate(xs):
        for j, y in enumerate(xs):
            br = double_bracket(x, y)
            if br.is_zero():
                continue
            c, dd = basis.coordinates(br)
            for k, v in enumerate(c + dd):
                if v:
                    out.append({"basis": "T" if k < d else "t", "i": i + 1, "j": j + 1,
                                "k": k + 1, "value": v})
    return out
