"""Exact Gaussian elimination over RadicalScalar (sparse rows)."""

from __future__ import annotations

from .scalar import ZERO, RadicalScalar, as_scalar


def _pick_pivot(rows, col):
    best = None
    for idx, row in enumerate(rows):
        v = row.get(col)
        if v:
            if v.is_single_term():
                return idx
            if best is None:
                best = idx
    return best


def row_reduce(rows: list[dict], columns: list) -> tuple[list[dict], list]:
    """Reduced row echelon form of sparse rows; returns (rows, pivot columns).

    Only single-term pivots are invertible; a column whose only candidates
    are multi-term raises MultiTermInverse.
    """
    work = [{k: as_scalar(v) for k, v in r.items() if v} for r in rows]
    work = [r for r in work if r]
    done: list[dict] = []
    pivots = []
    for col in columns:
        idx = _pick_pivot(work, col)
        if idx is None:
            continue
        prow = work.pop(idx)
        inv = prow[col].invert()
        prow = {k: v * inv for k, v in prow.items()}
        for group in (work, done):
            for r_i, r in enumerate(group):
                c = r.get(col)
                if c:
                    new = dict(r)
                    for k, v in prow.items():
                        w = new.get(k, ZERO) - c * v
                        if w:
                            new[k] = w
                        else:
                            new.pop(k, None)
                    group[r_i] = new
        work = [r for r in work if r]
        done.append(prow)
        pivots.append(col)
    return done, pivots


def rank(rows: list[dict], columns: list) -> int:
    return len(row_reduce(rows, columns)[1])


def solve(columns_of_a: list[dict], b: dict) -> list[RadicalScalar] | None:
    """Solve sum_k x_k * a_k = b for vectors given as sparse dicts.

    Returns one solution (free variables zero) or None if inconsistent.
    """
    keys = sorted({k for a in columns_of_a for k in a} | set(b), key=repr)
    nvar = len(columns_of_a)
    rows = []
    for key in keys:
        r = {j: a[key] for j, a in enumerate(columns_of_a) if key in a and a[key]}
        if key in b and b[key]:
            r["rhs"] = as_scalar(b[key])
        if r:
            rows.append(r)
    red, piv = row_reduce(rows, list(range(nvar)) + ["rhs"])
    if "rhs" in piv:
        return None
    x = [ZERO] * nvar
    for r, p in zip(red, piv):
        x[p] = r.get("rhs", ZERO)
    return x


def invert_matrix(mat: list[list[RadicalScalar]]) -> list[list[RadicalScalar]]:
    """Inverse of a square matrix (raises ValueError when singular)."""
    n = len(mat)
    rows = []
    for i in range(n):
        r = {j: mat[i][j] for j in range(n) if mat[i][j]}
        r[("id", i)] = RadicalScalar.rational(1)
        rows.append(r)
    red, piv = row_reduce(rows, list(range(n)))
    if len(piv) != n:
        raise ValueError("singular matrix")
    inv = [[ZERO] * n for _ in range(n)]
    for r, p in zip(red, piv):
        for k, v in r.items():
            if isinstance(k, tuple):
                inv[p][k[1]] = v
    return inv
