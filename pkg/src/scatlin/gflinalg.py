"""Dense linear algebra over the prime field F_p, on int numpy arrays.

Matrices hold entries in 0..p-1.  Everything is exact; p is assumed prime
and small (3, 5, ...), so inverses come from a lookup table.
"""

from __future__ import annotations

import numpy as np


def inv_table(p: int) -> np.ndarray:
    """Multiplicative inverses mod p; slot 0 is unused (set to 0)."""
    t = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        t[x] = pow(x, p - 2, p)
    return t


def row_reduce(mat: np.ndarray, p: int):
    """Reduced row echelon form mod p.  Returns (rref, pivot_columns)."""
    a = np.array(mat, dtype=np.int64) % p
    inv = inv_table(p)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * inv[a[r, c]]) % p
        mask = np.ones(rows, dtype=bool)
        mask[r] = False
        factors = a[mask, c]
        a[mask] = (a[mask] - np.outer(factors, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(mat: np.ndarray, p: int) -> int:
    _, pivots = row_reduce(mat, p)
    return len(pivots)


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel, as columns of the returned (cols, k) array."""
    a, pivots = row_reduce(mat, p)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for r, pc in enumerate(pivots):
            basis[pc, j] = (-a[r, fc]) % p
    return basis


def solve_affine(mat: np.ndarray, rhs: np.ndarray, p: int):
    """All solutions of mat @ x = rhs mod p.

    Returns (particular, kernel_basis) or None when inconsistent.
    """
    a = np.array(mat, dtype=np.int64) % p
    b = np.array(rhs, dtype=np.int64).ravel() % p
    aug, pivots = row_reduce(np.hstack([a, b[:, None]]), p)
    cols = a.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = aug[r, cols]
    return x, nullspace(a, p)


def rank_batched(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a (B, r, c) stack of matrices mod p, vectorized over B."""
    a = np.array(mats, dtype=np.int64) % p
    inv = inv_table(p)
    bsz, rows, cols = a.shape
    ranks = np.zeros(bsz, dtype=np.int64)
    lead = np.zeros(bsz, dtype=np.int64)  # next pivot row per matrix
    bidx = np.arange(bsz)
    for c in range(cols):
        live = lead < rows
        if not live.any():
            break
        col = a[:, :, c]
        rowpos = np.arange(rows)[None, :]
        candidates = (col != 0) & (rowpos >= lead[:, None]) & live[:, None]
        has = candidates.any(axis=1)
        piv = np.argmax(candidates, axis=1)
        sel = has
        if not sel.any():
            continue
        bs = bidx[sel]
        pr = piv[sel]
        lr = lead[sel]
        # swap pivot row up
        tmp = a[bs, pr].copy()
        a[bs, pr] = a[bs, lr]
        a[bs, lr] = tmp
        # scale pivot row to 1
        a[bs, lr] = (a[bs, lr] * inv[a[bs, lr, c]][:, None]) % p
        # eliminate the column everywhere else
        factors = a[bs, :, c]
        factors[np.arange(len(bs)), lr] = 0
        a[bs] = (a[bs] - factors[:, :, None] * a[bs, lr][:, None, :]) % p
        lead[sel] += 1
        ranks[sel] += 1
    return ranks


def span_vectors(basis: np.ndarray, p: int) -> np.ndarray:
    """All p**k combinations of the k columns of basis, as rows of (p**k, dim)."""
    dim, k = basis.shape
    if k == 0:
        return np.zeros((1, dim), dtype=np.int64)
    coeffs = np.indices((p,) * k).reshape(k, -1).T  # (p**k, k)
    return (coeffs @ basis.T) % p
