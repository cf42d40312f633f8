"""Dense exact linear algebra over GF(p^e).

Matrices are 2-d ``numpy.int64`` arrays of field codes (see :mod:`field`).
Everything here is deterministic: pivots are the leftmost nonzero
columns and kernel bases come out in reduced echelon form.
"""

from __future__ import annotations

import numpy as np

from .field import FieldCtx


def asmatrix(M) -> np.ndarray:
    return np.array(M, dtype=np.int64, ndmin=2)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(ctx: FieldCtx, M):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    R = asmatrix(M).copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        piv = int(R[r, c])
        if piv != 1:
            R[r] = ctx.vmul(R[r], ctx.inv(piv))
        col = R[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            R[others] = ctx.vsub(R[others], ctx.vmul(col[others][:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(ctx: FieldCtx, M) -> int:
    M = asmatrix(M)
    if M.size == 0:
        return 0
    # eliminate on the shorter side
    if M.shape[0] > M.shape[1]:
        M = M.T
    return len(rref(ctx, M)[1])


def nullspace(ctx: FieldCtx, M) -> np.ndarray:
    """Basis of {v : M v = 0} as the rows of the returned array."""
    M = asmatrix(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return identity(cols)
    R, pivots = rref(ctx, M)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(len(free), cols)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            if R[r, f]:
                basis[i, pc] = ctx.neg(int(R[r, f]))
    if len(free):
        basis, _ = rref(ctx, basis)
    return basis


def solve(ctx: FieldCtx, A, b):
    """One solution x of A x = b, or None when the system is inconsistent."""
    A = asmatrix(A)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    rows, cols = A.shape
    R, pivots = rref(ctx, np.hstack([A, b]))
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = R[r, cols]
    return x


def matmul(ctx: FieldCtx, A, B) -> np.ndarray:
    A = asmatrix(A)
    B = asmatrix(B)
    if ctx.e == 1:
        # entries < p, so int64 sums cannot overflow at desk scale
        return (A @ B) % ctx.p
    out = zeros(A.shape[0], B.shape[1])
    for k in range(A.shape[1]):
        a = A[:, k]
        if not a.any():
            continue
        out = ctx.vadd(out, ctx.vmul(a[:, None], B[k][None, :]))
    return out


def matvec(ctx: FieldCtx, A, v) -> np.ndarray:
    return matmul(ctx, A, np.asarray(v, dtype=np.int64).reshape(-1, 1)).ravel()


def matpow(ctx: FieldCtx, A, n: int) -> np.ndarray:
    A = asmatrix(A)
    result = identity(A.shape[0])
    base = A
    while n:
        if n & 1:
            result = matmul(ctx, result, base)
        base = matmul(ctx, base, base)
        n >>= 1
    return result


def inverse(ctx: FieldCtx, A) -> np.ndarray:
    A = asmatrix(A)
    n = A.shape[0]
    R, pivots = rref(ctx, np.hstack([A, identity(n)]))
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] >= n:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def kron(ctx: FieldCtx, A, B) -> np.ndarray:
    A = asmatrix(A)
    B = asmatrix(B)
    out = ctx.vmul(A[:, None, :, None], B[None, :, None, :])
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def trace(ctx: FieldCtx, A) -> int:
    t = 0
    for x in np.diagonal(A):
        t = ctx.add(t, int(x))
    return t


class Span:
    """Incrementally maintained echelon basis of a subspace of GF(q)^n."""

    def __init__(self, ctx: FieldCtx, n: int):
        self.ctx = ctx
        self.n = n
        self.rows = zeros(0, n)
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        ctx = self.ctx
        v = np.asarray(v, dtype=np.int64).copy()
        if not self.pivots:
            return v
        coeffs = v[self.pivots]
        # one pass suffices: rows are fully reduced against each other
        nz = np.nonzero(coeffs)[0]
        if nz.size:
            contrib = ctx.vmul(coeffs[nz][:, None], self.rows[nz])
            total = contrib[0]
            for row in contrib[1:]:
                total = ctx.vadd(total, row)
            v = ctx.vsub(v, total)
        return v

    def add(self, v) -> bool:
        """Insert v; returns True if it enlarged the span."""
        ctx = self.ctx
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = ctx.vmul(v, ctx.inv(int(v[c])))
        if self.pivots:
            col = self.rows[:, c].copy()
            hit = np.nonzero(col)[0]
            if hit.size:
                self.rows[hit] = ctx.vsub(self.rows[hit], ctx.vmul(col[hit][:, None], v[None, :]))
        self.rows = np.vstack([self.rows, v[None, :]])
        self.pivots.append(c)
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def coordinates(self, v):
        """Coefficients of v on the stored rows, or None if v is outside."""
        ctx = self.ctx
        v = np.asarray(v, dtype=np.int64)
        if self.reduce(v).any():
            return None
        return v[self.pivots].copy() if self.pivots else np.zeros(0, dtype=np.int64)
