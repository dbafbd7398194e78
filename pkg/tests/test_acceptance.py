"""Acceptance criteria 1-12. Run directly for a one-line-per-criterion summary."""

import time

import pytest

from superpl.duality import duality_suite
from superpl.hopf import hopf_axioms_suite, star_axioms_suite
from superpl.liealg import (baxter_suite, build_double_basis, build_sl_basis, phi_fixed_dimensions, verify_manin)
from superpl.poisson import (c_operator_defect, coproduct_suite, cross_form_suite, ideals_suite, jacobi_suite,
                             star_compat_suite, wzw_defect)
from superpl.scalar import ONE, ZERO
from superpl.supermatrix import BlockShape, sp_double, sp_sl

FOUR = [BlockShape(2, 1), BlockShape(1, 2), BlockShape(3, 1), BlockShape(3, 2)]
TWO = [BlockShape(2, 1), BlockShape(1, 2)]


def _all_ok(results):
    bad = [(r.name, r.witness) for r in results if not r.ok]
    return not bad, bad


def criterion_1():
    details = []
    for shape in FOUR:
        build_double_basis.cache_clear()
        t0 = time.perf_counter()
        sl = build_sl_basis(shape)
        ok_sl = all(sp_sl(v.matrix, w) == (ONE if i == j else ZERO)
                    for i, v in enumerate(sl.vectors) for j, w in enumerate(sl.duals))
        db = build_double_basis(shape)
        ok_d = all(sp_double(Ti, tj) == (ONE if i == j else ZERO)
                   for i, Ti in enumerate(db.T) for j, tj in enumerate(db.t))
        dt = time.perf_counter() - t0
        if not (ok_sl and ok_d and dt < 5):
            details.append((shape, ok_sl, ok_d, dt))
    return not details, details


def criterion_2():
    results = []
    for shape in FOUR:
        t0 = time.perf_counter()
        res = baxter_suite(shape)
        if time.perf_counter() - t0 >= 60:
            res.check(False, {"runtime": time.perf_counter() - t0})
        results.append(res)
    return _all_ok(results)


def criterion_3():
    return _all_ok([verify_manin(shape) for shape in FOUR])


def criterion_4():
    results = []
    for shape in TWO:
        for D in (3, 4):
            results.append(hopf_axioms_suite(shape, D))
            star = star_axioms_suite(shape, D)
            if not star.notes.get("tensor_star"):
                star.check(False, {"tensor_star": "convention record empty"})
            results.append(star)
    return _all_ok(results)


def criterion_5():
    results = []
    for shape in TWO:
        t0 = time.perf_counter()
        res = jacobi_suite(shape, 3)
        if res.notes.get("triples") != "exhaustive" or time.perf_counter() - t0 >= 600:
            res.check(False, {"coverage_or_runtime": res.notes.get("triples")})
        results += [res, coproduct_suite(shape, 3)]
    return _all_ok(results)


def criterion_6():
    return _all_ok([ideals_suite(shape, D) for shape in TWO for D in (3, 4)])


def criterion_7():
    return _all_ok([star_compat_suite(shape, D) for shape in TWO for D in (3, 4)])


def criterion_8():
    return _all_ok([c_operator_defect(shape, 3, exhaustive=True) for shape in TWO + [BlockShape(3, 2)]])


def criterion_9():
    results = [wzw_defect(shape, 3) for shape in TWO]
    results.append(wzw_defect(BlockShape(3, 2), 3, seed=0, samples=50))
    return _all_ok(results)


def criterion_10():
    return _all_ok([duality_suite(shape) for shape in TWO])


def criterion_11():
    bad = []
    for shape in FOUR:
        even, odd = phi_fixed_dimensions(shape)
        if (even, odd) != (shape.m ** 2 + shape.n ** 2 - 1, 0):
            bad.append((shape, even, odd))
    return not bad, bad


def criterion_12():
    return _all_ok([cross_form_suite(shape, 3) for shape in TWO])


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


@pytest.mark.parametrize("k", range(1, 13))
def test_criterion(k):
    ok, details = CRITERIA[k - 1]()
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}" + ("" if ok else f" {details}"))
    assert ok, details


if __name__ == "__main__":
    for k, fn in enumerate(CRITERIA, 1):
        t0 = time.perf_counter()
        ok, details = fn()
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - t0:.1f}s)"
        print(line if ok else f"{line} {details}", flush=True)
