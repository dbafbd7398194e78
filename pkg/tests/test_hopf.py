import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superpl.errors import TruncationMismatch
from superpl.hopf import (SuperPoly, TensorPoly, hopf_algebra, hopf_axioms_suite, matmul_poly, phi_from_star,
                          phi_single_from_star, poly_matrix, star_axioms_suite)
from superpl.liealg import build_double_basis, build_sl_basis, phi_double, phi_single
from superpl.scalar import I, ONE, ZERO, RadicalScalar
from superpl.supermatrix import BlockShape, DoubleElement, SuperMatrix, supertrace
from superpl.calculus import eps_apply


def test_odd_generators_anticommute(s21):
    H = hopf_algebra(s21, 3)
    y13, y23 = H.gen("y", 1, 3), H.gen("y", 2, 3)
    assert (y13 * y13).is_zero()
    assert y13 * y23 == -(y23 * y13)


def test_truncated_product(s21):
    H = hopf_algebra(s21, 2)
    y = H.gen("y", 1, 1)
    assert (H.one() + y) * (H.one() - y + y * y) == H.one()


def test_mismatched_truncation_rejected(s21):
    with pytest.raises(TruncationMismatch):
        hopf_algebra(s21, 2).one() + hopf_algebra(s21, 3).one()


def test_coproduct_examples(s21):
    H = hopf_algebra(s21, 3)
    one = H.one()
    assert H.coproduct(one) == TensorPoly.pure(one, one)
    y = lambda i, j: H.gen("y", i, j)  # noqa: E731
    want = TensorPoly.pure(one, y(1, 1)) + TensorPoly.pure(y(1, 1), one)
    for k in range(1, 4):
        want = want + TensorPoly.pure(y(1, k), y(k, 1))
    assert H.coproduct(y(1, 1)) == want


def test_counit_examples(s21):
    H = hopf_algebra(s21, 3)
    assert H.counit(H.u("y", 1, 1)) == ONE
    assert H.counit(H.gen("y", 1, 2)) == ZERO
    f, g = H.u("y", 1, 1) + H.gen("z", 2, 1), H.u("z", 2, 2).scale(I)
    assert H.counit(f * g) == H.counit(f) * H.counit(g)


def test_antipode_of_diagonal_generator(s21):
    H = hopf_algebra(s21, 3)
    y = lambda i, j: H.gen("y", i, j)  # noqa: E731
    Y = poly_matrix(H.table, 3, "y")
    Y3 = matmul_poly(matmul_poly(Y, Y), Y)
    quad = y(1, 1) * y(1, 1) + y(1, 2) * y(2, 1) + y(1, 3) * y(3, 1)
    assert H.antipode(H.one()) == H.one()
    assert H.antipode(y(1, 1)) == -y(1, 1) + quad - Y3[0][0]


@pytest.mark.parametrize("mn", [(2, 1), (1, 2)])
@pytest.mark.parametrize("D", [3, 4])
def test_hopf_and_star_axioms(mn, D):
    shape = BlockShape(*mn)
    assert hopf_axioms_suite(shape, D).ok
    star = star_axioms_suite(shape, D)
    assert star.ok, star.witness
    assert star.notes["tensor_star"] == "plain"


def test_sdet_linear_part_and_pairing(s21):
    H = hopf_algebra(s21, 3)
    s = H.sdet("y")
    lin = s.truncate(1)
    want = H.one() + H.gen("y", 1, 1) + H.gen("y", 2, 2) - H.gen("y", 3, 3)
    assert lin == want
    for v in build_sl_basis(s21).vectors + []:
        M = v.matrix
        z = SuperMatrix.zero(s21, M.parity)
        assert eps_apply(DoubleElement(M, z), s - H.one()) == supertrace(M)
    M = SuperMatrix.unit(s21, 1, 1)
    assert eps_apply(DoubleElement(M, M, in_d=False), s - H.one()) == supertrace(M)


def test_sdet_on_diagonal(s21):
    H = hopf_algebra(s21, 4)
    keep = {H.table.id("y", k, k) for k in range(1, 4)}
    diag = SuperPoly(H.table, 4, {m: c for m, c in H.sdet("y").terms.items() if set(m) <= keep})
    u = lambda k: H.u("y", k, k)  # noqa: E731
    assert diag * u(3) == u(1) * u(2)


def test_star_examples(s21):
    H1 = hopf_algebra(s21, 1)
    assert H1.star(H1.gen("y", 1, 2)) == -H1.gen("z", 2, 1)
    H = hopf_algebra(s21, 3)
    lam = RadicalScalar.rational(2, 3)
    y11 = H.gen("y", 1, 1)
    assert H.star(y11.scale(lam)) == H.star(y11).scale(lam.conj())
    for (k, i, j) in H.generators(("y", "z", "x")):
        g = H.gen(k, i, j)
        assert H.star(H.star(g)) == (-g if s21.entry_parity(i, j) else g)


def test_project_I_examples(s21):
    H = hopf_algebra(s21, 3)
    assert H.project_I(H.gen("y", 1, 2) - H.gen("z", 1, 2)).is_zero()
    assert H.project_I(H.u("y", 1, 1) * H.u("z", 2, 2)) == H.u("x", 1, 1) * H.u("x", 2, 2)
    p = H.gen("y", 1, 2) - H.gen("z", 1, 2)
    for g in (H.gen("z", 3, 1), H.u("y", 2, 2), H.gen("y", 1, 3) * H.gen("z", 2, 1)):
        assert H.project_I(p * g).is_zero()


@pytest.mark.parametrize("D", [1, 2, 3, 4])
def test_project_J_examples(s21, D):
    H = hopf_algebra(s21, D)
    assert H.project_J(H.gen("y", 1, 2)).is_zero()
    assert H.project_J(H.gen("z", 1, 1) - H.antipode(H.gen("y", 1, 1))).is_zero()
    assert H.project_J(H.gen("y", 2, 1)) == H.gen("y", 2, 1)


def test_phi_from_star(s21):
    # E_11 - E_33 has supertrace 2, so this pair lives at the gl level
    M = SuperMatrix.unit(s21, 1, 1) - SuperMatrix.unit(s21, 3, 3)
    x = DoubleElement(M, M, in_d=False)
    assert phi_from_star(x) == phi_double(x)
    for y in build_double_basis(s21).combined():
        assert phi_from_star(y) == phi_double(y)
        assert phi_from_star(y * I) == phi_from_star(y) * (-I)
        if y.bit:
            assert phi_from_star(phi_from_star(y)) == -y
    for v in build_sl_basis(s21).vectors:
        assert phi_single_from_star(v.matrix) == phi_single(v.matrix)


SHAPE = BlockShape(2, 1)
HD = hopf_algebra(SHAPE, 3)
GENS = [HD.gen(*g) for g in HD.generators(("y", "z"))]
coeffs = st.sampled_from([ONE, -ONE, I, RadicalScalar.rational(1, 2), RadicalScalar.sqrt(2)])


@st.composite
def polys(draw):
    f = HD.one() if draw(st.booleans()) else HD.zero()
    for _ in range(draw(st.integers(1, 3))):
        f = f + draw(st.sampled_from(GENS)).scale(draw(coeffs))
    if draw(st.booleans()):
        f = f * draw(st.sampled_from(GENS))
    return f


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_product_is_associative(f, g, h):
    assert (f * g) * h == f * (g * h)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GENS), st.sampled_from(GENS))
def test_supercommutativity(a, b):
    assert a * b == (b * a).scale(-1 if a.bit * b.bit else 1)


@settings(max_examples=30, deadline=None)
@given(polys(), polys())
def test_coproduct_and_star_are_multiplicative(f, g):
    assert HD.coproduct(f * g) == HD.coproduct(f) * HD.coproduct(g)
    assert HD.star(f * g) == HD.star(f) * HD.star(g)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GENS), st.sampled_from(GENS))
def test_antipode_reverses_products(a, b):
    sign = -1 if a.bit * b.bit else 1
    assert HD.antipode(a * b) == (HD.antipode(b) * HD.antipode(a)).scale(sign)
