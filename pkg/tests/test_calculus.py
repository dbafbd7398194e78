import pytest

from superpl.calculus import (apply_in_slot, commutator_sign, eps_apply, eps_bracket_apply, nabla, nabla_L,
                              nabla_L_via_coproduct, nabla_R, nabla_R_via_coproduct, tensor_eval)
from superpl.errors import InhomogeneousOperand, RankMismatch
from superpl.hopf import TensorPoly, hopf_algebra
from superpl.liealg import build_double_basis, phi_double
from superpl.scalar import I, ONE, ZERO, RadicalScalar
from superpl.supermatrix import BlockShape, DoubleElement, SuperMatrix, double_bracket, supertrace

SHAPES = [BlockShape(2, 1), BlockShape(1, 2)]


def _pair(shape, A, B=None):
    B = SuperMatrix.zero(shape, A.parity) if B is None else B
    return DoubleElement(A, B, in_d=False)


def test_eps_apply_examples(s21):
    H = hopf_algebra(s21, 3)
    A = SuperMatrix.unit(s21, 1, 2) * RadicalScalar.rational(3, 1)
    M = _pair(s21, A, SuperMatrix.unit(s21, 2, 1))
    assert eps_apply(M, H.gen("y", 1, 2)) == A[(1, 2)]
    assert eps_apply(M, H.gen("y", 1, 2) * H.gen("y", 2, 1)) == ZERO
    for T in build_double_basis(s21).T:
        assert eps_apply(T, H.sdet("y") - H.one()) == supertrace(T.first)


def test_nabla_R_on_generator(s21):
    H = hopf_algebra(s21, 3)
    A = SuperMatrix.unit(s21, 1, 1) + SuperMatrix.unit(s21, 1, 2) * I - SuperMatrix.unit(s21, 2, 2)
    M = _pair(s21, A)
    want = H.zero()
    for k in range(1, 4):
        if A[(1, k)]:
            want = want + H.u("y", k, 2).scale(A[(1, k)])
    assert nabla_R(M, H.u("y", 1, 2)) == want
    assert nabla_R(M, H.one()).is_zero()
    assert nabla_L(M, H.one()).is_zero()


def test_nabla_L_on_generator(s21):
    H = hopf_algebra(s21, 3)
    for s, t in [(1, 2), (1, 3), (3, 1), (2, 2)]:
        M = _pair(s21, SuperMatrix.unit(s21, s, t))
        for i in range(1, 4):
            for j in range(1, 4):
                e = s21.entry_parity(s, t) * (s21.entry_parity(i, j) + 1)
                want = H.u("y", i, s).scale(-1 if e % 2 else 1) if t == j else H.zero()
                assert nabla_L(M, H.u("y", i, j)) == want


def test_nabla_L_rejects_inhomogeneous(s21):
    H = hopf_algebra(s21, 3)
    M = _pair(s21, SuperMatrix.unit(s21, 1, 2))
    with pytest.raises(InhomogeneousOperand):
        nabla_L(M, H.gen("y", 1, 2) + H.gen("y", 1, 3))


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_closed_forms_match_coproduct(shape):
    H = hopf_algebra(shape, 3)
    gens = [H.gen(*g) for g in H.generators()]
    quads = [gens[0] * gens[4], gens[2] * gens[7], gens[5] * gens[11], gens[6] * gens[15]]
    for M in build_double_basis(shape).combined():
        for f in gens + quads:
            assert nabla_R(M, f) == nabla_R_via_coproduct(M, f)
            assert nabla_L(M, f) == nabla_L_via_coproduct(M, f)


def test_super_leibniz(s21):
    H = hopf_algebra(s21, 3)
    pairs = [(H.u("y", 1, 1), H.u("z", 2, 2)), (H.gen("y", 1, 3), H.gen("z", 3, 2)),
             (H.gen("y", 3, 1), H.u("y", 2, 2))]
    for M in build_double_basis(s21).combined():
        for side in "LR":
            for f, g in pairs:
                lhs = nabla(side, M, f * g)
                sign = -1 if M.bit * f.bit else 1
                rhs = nabla(side, M, f) * g + (f * nabla(side, M, g)).scale(sign)
                assert lhs == rhs


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_intertwining_with_coproduct(shape):
    H = hopf_algebra(shape, 3)
    for M in build_double_basis(shape).combined()[::3]:
        for g in H.generators():
            f = H.gen(*g)
            d = H.coproduct(f)
            assert H.coproduct(nabla("R", M, f)) == apply_in_slot("R", M, d, 0)
            assert H.coproduct(nabla("L", M, f)) == apply_in_slot("L", M, d, 1)


def test_eps_brackets_represent_the_double(s21):
    H = hopf_algebra(s21, 3)
    xs = build_double_basis(s21).combined()
    gens = [H.gen(*g) for g in H.generators()]
    for a in xs[::2]:
        for b in xs[1::3]:
            ab = double_bracket(a, b)
            for f in gens:
                assert eps_bracket_apply(a, b, f) == eps_apply(ab, f)


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_commutator_signs(shape):
    H = hopf_algebra(shape, 2)
    xs = build_double_basis(shape).combined()
    gens = [H.gen(*g) for g in H.generators()]
    assert commutator_sign("L", xs, gens) == 1
    assert commutator_sign("R", xs, gens) == -1


def test_phi_law_modulo_truncation(s21):
    D = 3
    H = hopf_algebra(s21, D)
    for M in build_double_basis(s21).combined():
        for g in H.generators():
            f = H.gen(*g)
            for side in "LR":
                lhs = nabla(side, M, H.star(f)).truncate(D - 1)
                rhs = H.star(nabla(side, phi_double(M), f)).truncate(D - 1)
                assert lhs == rhs


def test_tensor_eval_signs(s21):
    H = hopf_algebra(s21, 3)
    even = _pair(s21, SuperMatrix.unit(s21, 1, 1))
    odd = _pair(s21, SuperMatrix.unit(s21, 3, 1))
    a, b = H.u("y", 1, 2), H.u("y", 1, 1)
    t = TensorPoly.pure(a, b)
    assert tensor_eval([("R", even), ("R", even)], t) == nabla("R", even, a) * nabla("R", even, b)
    f = H.gen("y", 1, 3)  # odd first slot
    t3 = TensorPoly.pure(f, H.gen("y", 3, 2), H.u("y", 1, 1))
    got = tensor_eval([("R", even), ("R", odd), ("R", even)], t3)
    plain = nabla("R", even, f) * nabla("R", odd, H.gen("y", 3, 2)) * nabla("R", even, H.u("y", 1, 1))
    assert got == -plain and not plain.is_zero()
    one = H.one()
    assert tensor_eval([("L", even)] * 3, TensorPoly.pure(one, one, one)).is_zero()
    with pytest.raises(RankMismatch):
        tensor_eval([("L", even)], t)
