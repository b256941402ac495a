"""Exact dense linear algebra over GF(q).

Matrices are 2-D numpy int64 arrays of element codes for a FieldTower.
Elimination is deterministic: pivots are found by a first-nonzero scan,
left to right and top to bottom, so reduced forms, ranks and nullspace
bases are reproducible byte for byte.  No floating point anywhere.
"""

from __future__ import annotations

import numpy as np


def as_matrix(mat) -> np.ndarray:
    m = np.asarray(mat, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    return m


def rref(tw, mat):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    r = as_matrix(mat).copy()
    nrows, ncols = r.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = tw.mul_arr(r[row], tw.inv(int(r[row, col])))
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            factors = r[others, col][:, None]
            r[others] = tw.sub_arr(r[others], tw.mul_arr(factors, r[row][None, :]))
        pivots.append(col)
        row += 1
    return r, pivots


def rank(tw, mat) -> int:
    m = as_matrix(mat)
    if m.size == 0:
        return 0
    return len(rref(tw, m)[1])


def nullspace(tw, mat) -> np.ndarray:
    """Basis of the right nullspace, one vector per row (possibly empty)."""
    m = as_matrix(mat)
    ncols = m.shape[1]
    if m.size == 0:
        return np.eye(ncols, dtype=np.int64)
    r, pivots = rref(tw, m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row_idx, p in enumerate(pivots):
            basis[k, p] = tw.neg(int(r[row_idx, f]))
    return basis


def solve(tw, mat, rhs):
    """One exact solution of mat @ x = rhs, or None when inconsistent.

    rhs may be a vector or a matrix of stacked right-hand-side columns; the
    returned solution has matching shape.  Free variables are set to zero.
    """
    m = as_matrix(mat)
    b = np.asarray(rhs, dtype=np.int64)
    single = b.ndim == 1
    bm = b[:, None] if single else b
    if bm.shape[0] != m.shape[0]:
        raise ValueError("rhs has wrong length")
    aug = np.concatenate([m, bm], axis=1)
    r, pivots = rref(tw, aug)
    ncols = m.shape[1]
    if any(p >= ncols for p in pivots):
        return None
    x = np.zeros((ncols, bm.shape[1]), dtype=np.int64)
    for row_idx, p in enumerate(pivots):
        x[p] = r[row_idx, ncols:]
    return x[:, 0] if single else x


def matmul(tw, a, b):
    """Exact matrix product over the tower (row-by-row accumulation)."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError("shape mismatch")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = tw.add_arr(out, tw.mul_arr(a[:, k][:, None], b[k][None, :]))
    return out


def matvec(tw, a, v):
    return matmul(tw, a, np.asarray(v, dtype=np.int64)[:, None])[:, 0]


def rank_over_base(tw, codes) -> int:
    """GF(p)-dimension of the span of GF(q) elements.

    Flattens each element to its t base-p digits and row-reduces.  Digit
    codes live in the base subfield, which the tower's arithmetic keeps
    closed, so the generic elimination computes the subfield rank exactly.
    """
    codes = np.asarray(list(codes), dtype=np.int64)
    if codes.size == 0:
        return 0
    return rank(tw, tw.digits_arr(codes))
