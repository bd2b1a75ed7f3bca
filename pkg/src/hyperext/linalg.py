"""Dense exact linear algebra mod p on numpy integer arrays.

Everything here is deterministic: pivots are always the first nonzero entry
scanning down, so repeated runs produce identical echelon forms and bases.
Entries stay below p < 2**31, products below 2**62, so int64 never overflows
between reductions.
"""

from __future__ import annotations

import numpy as np


def as_matrix(a, rows=None, cols=None):
    m = np.array(a, dtype=np.int64)
    if m.ndim != 2:
        m = m.reshape((rows if rows is not None else 0, cols if cols is not None else 0))
    return m


def rref_mod(A, p):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    A = np.array(A, dtype=np.int64) % p
    if (p - 1) ** 2 * (max(A.shape) + 2) < 2**53:
        return _rref_float(A, p)
    return _rref_int(A, p)


def _rref_float(A, p):
    # float64 holds integers below 2**53 exactly; multipliers and pivot rows
    # are reduced before use, the trailing block only when the running bound
    # on entry growth approaches that limit
    F = A.astype(np.float64)
    rows, cols = F.shape
    piv_cols = []
    r = 0
    dirty = 0
    budget = max(1, (2**52) // ((p - 1) ** 2 or 1))
    for c in range(cols):
        if r == rows:
            break
        colv = F[r:, c] % p
        F[r:, c] = colv
        nz = np.nonzero(colv)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            F[[r, pr]] = F[[pr, r]]
        row = F[r, c:] % p
        inv = pow(int(row[0]), -1, p)
        row = (row * float(inv)) % p
        F[r, c:] = row
        if r + 1 < rows:
            m = F[r + 1:, c] % p
            F[r + 1:, c:] -= np.outer(m, row)
            dirty += 1
            if dirty >= budget:
                F %= p
                dirty = 0
        piv_cols.append(c)
        r += 1
    F %= p
    dirty = 0
    for j in range(len(piv_cols) - 1, 0, -1):
        c = piv_cols[j]
        row = F[j, c:] % p
        F[j, c:] = row
        m = F[:j, c] % p
        if m.any():
            F[:j, c:] -= np.outer(m, row)
            dirty += 1
            if dirty >= budget:
                F %= p
                dirty = 0
    F %= p
    return F.astype(np.int64), piv_cols


def _rref_int(A, p):
    rows, cols = A.shape
    piv_cols = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = (A[mask] - np.outer(col[mask], A[r])) % p
        piv_cols.append(c)
        r += 1
    return A, piv_cols


def rank_mod(A, p) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    if (p - 1) ** 2 * (max(A.shape) + 2) < 2**53:
        return _rank_float(np.array(A, dtype=np.int64) % p, p)
    return len(rref_mod(A, p)[1])


def _rank_float(A, p) -> int:
    # forward elimination only; same lazy-reduction budget as _rref_float
    F = A.astype(np.float64)
    rows, cols = F.shape
    rank = 0
    dirty = 0
    budget = max(1, (2**52) // ((p - 1) ** 2 or 1))
    for c in range(cols):
        if rank == rows:
            break
        colv = F[rank:, c] % p
        nz = np.nonzero(colv)[0]
        if nz.size == 0:
            continue
        pr = rank + int(nz[0])
        if pr != rank:
            F[[rank, pr]] = F[[pr, rank]]
        row = F[rank, c:] % p
        inv = pow(int(row[0]), -1, p)
        row = (row * float(inv)) % p
        if rank + 1 < rows:
            m = colv[nz[0] + 1 :] if pr == rank else F[rank + 1 :, c] % p
            F[rank + 1 :, c:] -= np.outer(m, row)
            dirty += 1
            if dirty >= budget:
                F %= p
                dirty = 0
        rank += 1
    return rank


def nullspace_mod(A, p):
    """Columns form a basis of {x : A x = 0}; deterministic echelon basis."""
    A = np.array(A, dtype=np.int64)
    rows, cols = A.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref_mod(A, p)
    in_piv = np.zeros(cols, dtype=bool)
    in_piv[piv] = True
    free = np.nonzero(~in_piv)[0]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    basis[free, np.arange(len(free))] = 1
    if piv:
        basis[np.array(piv, dtype=np.int64)] = (-R[: len(piv)][:, free]) % p
    return basis


def left_nullspace_mod(A, p):
    """Rows C with C A = 0 and rank = rows(A) - rank(A)."""
    return nullspace_mod(np.array(A, dtype=np.int64).T, p).T


def solve_mod(A, B, p):
    """One solution X of A X = B, or None if inconsistent. B may be 1-D."""
    A = np.array(A, dtype=np.int64) % p
    B = np.array(B, dtype=np.int64) % p
    vector = B.ndim == 1
    if vector:
        B = B.reshape(-1, 1)
    rows, cols = A.shape
    if B.shape[0] != rows:
        raise ValueError("shape mismatch")
    aug = np.concatenate([A, B], axis=1) if cols else B
    R, piv = rref_mod(aug, p)
    X = np.zeros((cols, B.shape[1]), dtype=np.int64)
    for j, pc in enumerate(piv):
        if pc >= cols:
            return None
        X[pc] = R[j, cols:]
    return X[:, 0] if vector else X


def invert_mod(A, p):
    """Inverse of a square matrix, or None if singular."""
    A = np.array(A, dtype=np.int64)
    n = A.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    X = solve_mod(A, np.eye(n, dtype=np.int64), p)
    return X


def matmul_mod(A, B, p):
    A = np.array(A, dtype=np.int64) % p
    B = np.array(B, dtype=np.int64) % p
    if A.shape[1] != B.shape[0]:
        raise ValueError("shape mismatch")
    if A.shape[0] == 0 or B.shape[1] == 0 or A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    # chunk the contraction so int64 cannot overflow: a chunk of k terms is
    # bounded by k*(p-1)**2 and must stay below 2**62
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    step = max(1, (2**62) // ((p - 1) ** 2 or 1))
    for k in range(0, A.shape[1], step):
        out = (out + A[:, k : k + step] @ B[k : k + step]) % p
    return out