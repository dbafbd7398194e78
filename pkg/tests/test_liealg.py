from collections import Counter

import pytest

from superpl.errors import EqualDimensions
from superpl.liealg import (build_double_basis, build_sl_basis, check_real_structure, decompose, in_b, in_g,
                            k_twist, phi_double, phi_fixed_dimensions, r_operator, structure_constants,
                            verify_baxter, verify_manin, verify_real_form, verify_triangular, PHI)
from superpl.report import SuiteResult
from superpl.scalar import I, ONE, ZERO
from superpl.supermatrix import BlockShape, DoubleElement, SuperMatrix, double_bracket, sp_double, sp_sl

SHAPES = [BlockShape(2, 1), BlockShape(1, 2), BlockShape(3, 1), BlockShape(3, 2)]
E = SuperMatrix.unit


def test_sl_basis_family_counts(s21, s12):
    c = Counter(v.family for v in build_sl_basis(s21).vectors)
    assert c == {"E": 1, "E-": 1, "H": 1, "V": 2, "V-": 2, "H0": 1}
    c = Counter(v.family for v in build_sl_basis(s12).vectors)
    assert c == {"Et": 1, "Et-": 1, "Ht": 1, "V": 2, "V-": 2, "H0": 1}
    with pytest.raises(EqualDimensions):
        build_sl_basis(BlockShape(2, 2))


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_bases_are_dual(shape):
    sl = build_sl_basis(shape)
    for i, v in enumerate(sl.vectors):
        for j, w in enumerate(sl.duals):
            assert sp_sl(v.matrix, w) == (ONE if i == j else ZERO)
    d = build_double_basis(shape)
    assert len(d) == (shape.size ** 2 - 1)
    for i, T in enumerate(d.T):
        for j, t in enumerate(d.t):
            assert sp_double(T, t) == (ONE if i == j else ZERO)


def test_hat_of_t_is_signed_T(s21):
    d = build_double_basis(s21)
    for T, th, b in zip(d.T, d.t_hat, d.bits):
        assert th == (-T if b else T)


def test_matching_v_pair_cross_term_vanishes(s21):
    d = build_double_basis(s21)
    v = next(x for x in build_sl_basis(s21).vectors if x.family == "V")
    z = SuperMatrix.zero(s21, v.matrix.parity)
    y = DoubleElement(z, v.matrix * (I + I))
    assert sp_double(DoubleElement(v.matrix, v.matrix), y) == ZERO
    assert len(d.T) == 8


def test_decompose_examples(s21):
    z = SuperMatrix.zero(s21)
    e12 = E(s21, 1, 2)
    g, b = decompose(DoubleElement(e12, z))
    assert g == DoubleElement(e12, e12)
    assert b == DoubleElement(z, -e12)
    assert in_g(g) and in_b(b)
    g, b = decompose(DoubleElement(e12, e12))
    assert b.is_zero()
    h = E(s21, 1, 1) - E(s21, 2, 2)
    g, b = decompose(DoubleElement(h, -h))
    assert g.is_zero() and b == DoubleElement(h, -h)


def test_r_operator_examples(s21):
    z = SuperMatrix.zero(s21)
    e12 = E(s21, 1, 2)
    assert r_operator(DoubleElement(e12, z)) == DoubleElement(-e12, e12 * (-2 * ONE))
    x = DoubleElement(e12, e12)
    assert r_operator(x) == -x
    h = E(s21, 1, 1) - E(s21, 2, 2)
    assert r_operator(DoubleElement(h, -h)) == DoubleElement(h, -h)


def test_phi_examples(s21):
    M = E(s21, 1, 1) * I - E(s21, 2, 2) * I
    x = DoubleElement(M, M)
    assert phi_double(x) == x
    for T in build_double_basis(s21).T:
        y = phi_double(T)
        assert in_g(y)
        if T.bit:
            assert phi_double(y) == -T


def test_k_twist_equals_signed_phi(s21):
    for x in build_double_basis(s21).combined():
        assert k_twist(x) == (phi_double(x) * (-ONE if x.bit else ONE))


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_phi_is_a_graded_real_structure(shape):
    res = SuiteResult("phi")
    check_real_structure(PHI, build_double_basis(shape).combined(), res)
    assert res.ok, res.witness


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_baxter_manin_triangular(shape):
    report = verify_baxter(shape)
    assert report.ok, report.suites[0].witness
    assert verify_manin(shape).ok
    assert verify_triangular(shape).ok


def test_baxter_antisymmetry_on_first_pair(s21):
    d = build_double_basis(s21)
    T, t = d.T[0], d.t[0]
    assert sp_double(r_operator(T), t) + sp_double(T, r_operator(t)) == ZERO


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_real_form_dimensions(shape):
    even, odd = phi_fixed_dimensions(shape)
    assert even == shape.m ** 2 + shape.n ** 2 - 1
    assert odd == 0
    assert verify_real_form(shape).ok


def test_structure_constants_reassemble(s21):
    d = build_double_basis(s21)
    xs = d.combined()
    recs = structure_constants(s21)
    assert recs
    for i, j in [(1, 2), (4, 6), (3, 12)]:
        acc = None
        for r in recs:
            if (r["i"], r["j"]) == (i, j):
                term = xs[r["k"] - 1] * r["value"]
                acc = term if acc is None else acc + term
        want = double_bracket(xs[i - 1], xs[j - 1])
        assert (acc is None and want.is_zero()) or acc == want
