import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superpl.errors import InhomogeneousOperand
from superpl.hopf import hopf_algebra
from superpl.liealg import build_double_basis
from superpl.poisson import (RMatrixTable, bracket_general, bracket_sum, c_operator_defect, coproduct_morphism_defect,
                             cross_form_suite, general_engine, ideal_check, jacobi_defect, sdet_compat,
                             split_dual_pair, star_compat_defect, sum_engine, td_dual_pair, wzw_defect,
                             wzw_gl_tensor, wzw_sl_tensor, wzw_apply)
from superpl.scalar import I
from superpl.supermatrix import BlockShape

S21 = BlockShape(2, 1)
H = hopf_algebra(S21, 3)
u = lambda i, j: H.u("y", i, j)  # noqa: E731
w = lambda i, j: H.u("z", i, j)  # noqa: E731
y = lambda i, j: H.gen("y", i, j)  # noqa: E731
z = lambda i, j: H.gen("z", i, j)  # noqa: E731


def test_trivial_brackets():
    assert bracket_general(H.one(), u(1, 2)).is_zero()
    assert bracket_sum(u(1, 1), u(1, 1)).is_zero()


def test_snapshot_brackets():
    # frozen after the general and sum forms agreed exactly
    cases = [
        (u(1, 1), u(1, 2), (y(1, 2) + y(1, 1) * y(1, 2)).scale(-I)),
        (u(1, 1), u(2, 2), (y(1, 2) * y(2, 1)).scale(-2 * I)),
        (u(1, 2), u(2, 1), H.zero()),
        (u(1, 1), w(2, 1), (z(2, 1) + y(1, 1) * z(2, 1)).scale(-I)),
    ]
    for f, g, want in cases:
        assert bracket_sum(f, g) == want
        assert bracket_general(f, g) == want


def test_inhomogeneous_rejected():
    with pytest.raises(InhomogeneousOperand):
        bracket_sum(u(1, 2) + u(1, 3), u(2, 1))
    E = sum_engine(S21)
    assert E.bracket_linear(u(1, 2) + u(1, 3), u(2, 1)) == bracket_sum(u(1, 2), u(2, 1)) + bracket_sum(u(1, 3), u(2, 1))


def test_r_matrix_tables_respect_parity():
    basis = build_double_basis(S21)
    for h, hh in (td_dual_pair(basis), split_dual_pair(S21)):
        table = RMatrixTable.from_dual_pair(S21, h, hh)
        assert table.r and table.parity_consistent()


@pytest.mark.parametrize("mn", [(2, 1), (1, 2)])
def test_general_equals_sum_and_basis_independence(mn):
    res = cross_form_suite(BlockShape(*mn), 3)
    assert res.ok, res.witness
    assert res.attempted == 2 * 18 * 18


def test_jacobi_examples():
    E = sum_engine(S21)
    assert jacobi_defect(u(1, 1), u(1, 2), u(2, 1), E).is_zero()
    assert jacobi_defect(u(1, 3), u(3, 1), w(1, 2), E).is_zero()
    assert jacobi_defect(H.one(), u(1, 3), w(2, 1), E).is_zero()


def test_coproduct_morphism_examples():
    for f, g in [(u(1, 1), w(1, 1)), (H.one(), u(1, 2)), (u(1, 3), w(3, 1))]:
        assert coproduct_morphism_defect(f, g).is_zero()


def test_star_compat_examples():
    for f, g in [(u(1, 2), u(2, 1)), (H.one(), w(1, 2)), (u(1, 3), w(3, 1)), (u(1, 1), w(2, 3))]:
        assert star_compat_defect(f, g).is_zero()


def test_ideal_examples():
    W = hopf_algebra(S21, 4)
    E = sum_engine(S21)
    p = W.gen("y", 1, 2) - W.gen("z", 1, 2)
    assert W.project_I(E.bracket(p, W.u("y", 2, 1))).is_zero()
    q = W.antipode(W.gen("y", 1, 1)) - W.gen("z", 1, 1)
    assert W.project_J(E.bracket(q, W.u("z", 1, 2))).truncate(3).is_zero()
    for which in ("I", "J"):
        res = ideal_check(which, S21, 3)
        assert res.ok, res.witness


@pytest.mark.parametrize("mn", [(2, 1), (1, 2)])
def test_c_operator(mn):
    res = c_operator_defect(BlockShape(*mn), 3)
    assert res.ok, res.witness
    # the identity holds after multiplying the slots, not tensor by tensor
    assert res.notes["tensor_level_differs"] > 0


def test_wzw_examples():
    assert wzw_sl_tensor(S21) == wzw_gl_tensor(S21)
    t = wzw_gl_tensor(S21)
    triple = [u(1, 1)] * 3
    assert (wzw_apply(S21, t, "L", triple, "y") - wzw_apply(S21, t, "R", triple, "y")).is_zero()
    ones = [H.one()] * 3
    assert wzw_apply(S21, t, "L", ones, "y").is_zero()


def test_wzw_sampled_at_larger_shape():
    res = wzw_defect(BlockShape(3, 2), 3, seed=0, samples=10)
    assert res.ok, res.witness


@pytest.mark.parametrize("mn", [(2, 1), (1, 2)])
def test_sdet_compat(mn):
    res = sdet_compat(BlockShape(*mn), 2)
    assert res.ok, res.witness


GENS = [H.gen(*g) for g in H.generators()]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GENS), st.sampled_from(GENS))
def test_superantisymmetry(a, b):
    sign = -1 if a.bit * b.bit else 1
    assert bracket_sum(a, b) == -bracket_sum(b, a).scale(sign)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(GENS), st.sampled_from(GENS), st.sampled_from(GENS))
def test_super_leibniz(a, b, c):
    lhs = bracket_sum(a, b * c)
    sign = -1 if a.bit * b.bit else 1
    assert lhs == bracket_sum(a, b) * c + (b * bracket_sum(a, c)).scale(sign)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(GENS), st.sampled_from(GENS))
def test_split_pair_gives_the_same_bracket(a, b):
    assert general_engine(S21, "split").bracket(a, b) == bracket_sum(a, b)
