"""Exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries in [0, p).  Vectors are columns.
All routines are pure; inputs are never modified.
"""

from __future__ import annotations

import numpy as np

DTYPE = np.int64


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=DTYPE)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def reduce(a, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=DTYPE), p)


def inv_scalar(x: int, p: int) -> int:
    return pow(int(x) % p, p - 2, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return np.mod(a @ b, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = np.mod(np.array(a, dtype=DTYPE, copy=True), p)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = np.mod(m[r] * inv_scalar(m[r, c], p), p)
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = np.mod(m[nzr] - np.outer(col[nzr], m[r]), p)
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of {x : a x = 0}."""
    rows, cols = a.shape
    if cols == 0:
        return zeros(0, 0)
    if rows == 0:
        return eye(cols)
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = zeros(cols, len(free))
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(piv):
            basis[pc, j] = (-r[i, f]) % p
    return basis


def colspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of the column space of a."""
    if a.shape[1] == 0 or a.shape[0] == 0:
        return zeros(a.shape[0], 0)
    _, piv = rref(a, p)
    return np.mod(a[:, piv], p)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a x = b (b may have several columns), or None."""
    rows, cols = a.shape
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    aug = np.hstack([a, b])
    r, piv = rref(aug, p)
    if any(c >= cols for c in piv):
        return None
    x = zeros(cols, b.shape[1])
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols:]
    return x


def inverse(a: np.ndarray, p: int) -> np.ndarray | None:
    n = a.shape[0]
    if a.shape != (n, n):
        return None
    if n == 0:
        return zeros(0, 0)
    r, piv = rref(np.hstack([a, eye(n)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] >= n:
        return None
    return r[:, n:]


def is_invertible(a: np.ndarray, p: int) -> bool:
    n = a.shape[0]
    return a.shape == (n, n) and rank(a, p) == n


def left_inverse(basis: np.ndarray, p: int) -> np.ndarray:
    """A matrix L with L @ basis = I, for a basis with independent columns."""
    n, k = basis.shape
    if k == 0:
        return zeros(0, n)
    full = np.hstack([basis, complement(basis, p)])
    finv = inverse(full, p)
    assert finv is not None, "columns are not independent"
    return finv[:k]


def complement(sub: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning a complement of colspace(sub) in F_p^n (standard vectors)."""
    n = sub.shape[0]
    if sub.shape[1] == 0:
        return eye(n)
    _, piv = rref(np.hstack([sub, eye(n)]), p)
    k = sub.shape[1]
    extra = [c - k for c in piv if c >= k]
    return eye(n)[:, extra]


def intersect(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Basis of colspace(a) ∩ colspace(b)."""
    n = a.shape[0]
    if a.shape[1] == 0 or b.shape[1] == 0:
        return zeros(n, 0)
    ns = nullspace(np.hstack([a, np.mod(-b, p)]), p)
    if ns.shape[1] == 0:
        return zeros(n, 0)
    return colspace(matmul(a, ns[: a.shape[1]], p), p)


def block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out
