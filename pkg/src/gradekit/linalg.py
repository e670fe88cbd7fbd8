"""Dense exact linear algebra over GF(q).

Matrices are lists of rows of packed field ints (see fields.py).  Prime
fields take a vectorized numpy path (int64 arithmetic mod p); extension
fields fall back to a generic pure-Python elimination.  Both paths are
exact.
"""

from __future__ import annotations

import numpy as np

from . import fields as ff


def _as_np(A) -> np.ndarray:
    return np.array(A, dtype=np.int64)


def _rref_prime(p: int, A: np.ndarray):
    A = A % p
    rows, cols = A.shape
    invtab = [0] + [pow(x, p - 2, p) for x in range(1, p)]
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = (A[r] * invtab[int(A[r, c])]) % p
        other = np.nonzero(A[:, c])[0]
        other = other[other != r]
        if other.size:
            A[other] = (A[other] - np.outer(A[other, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def _rref_generic(F, A):
    A = [list(row) for row in A]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pr = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        s = ff.inv(F, A[r][c])
        A[r] = [ff.mul(F, s, x) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [ff.sub(F, x, ff.mul(F, f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rref(F, A):
    """Reduced row echelon form; returns (list-of-rows, pivot columns)."""
    if not len(A):
        return [], []
    if F.k == 1:
        R, piv = _rref_prime(F.p, _as_np(A))
        return [[int(x) for x in row] for row in R], piv
    return _rref_generic(F, A)


def rank(F, A) -> int:
    return len(rref(F, A)[1])


def nullspace(F, A, ncols: int | None = None):
    """Basis of {x : A x = 0}, rows of length ncols."""
    if not len(A):
        assert ncols is not None
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    ncols = len(A[0])
    R, piv = rref(F, A)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for r, pcol in enumerate(piv):
            v[pcol] = ff.neg(F, R[r][fcol])
        basis.append(v)
    return basis


def solve(F, A, b):
    """One solution of A x = b, or None when inconsistent."""
    if not len(A):
        return [] if not any(b) else None
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    ncols = len(A[0])
    R, piv = rref(F, aug)
    if ncols in piv:
        return None
    x = [0] * ncols
    for r, pcol in enumerate(piv):
        x[pcol] = R[r][ncols]
    return x


def matmul(F, A, B):
    if F.k == 1:
        return [[int(x) for x in row] for row in (_as_np(A) @ _as_np(B)) % F.p]
    n, m = len(A), len(B[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for k, aik in enumerate(A[i]):
            if aik:
                Bk = B[k]
                row = out[i]
                for j in range(m):
                    if Bk[j]:
                        row[j] = ff.add(F, row[j], ff.mul(F, aik, Bk[j]))
    return out


def mat_vec(F, A, v):
    return [row[0] for row in matmul(F, A, [[x] for x in v])]


def vec_mat(F, v, A):
    return matmul(F, [list(v)], A)[0]


def identity_matrix(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def is_identity(M) -> bool:
    n = len(M)
    return all(M[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def inv_matrix(F, A):
    """Inverse matrix, or None when singular."""
    n = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        return None
    return [row[n:] for row in R[:n]]


def scale_vec(F, c, v):
    return [ff.mul(F, c, x) for x in v]


def add_vec(F, u, v):
    return [ff.add(F, a, b) for a, b in zip(u, v)]


def sub_vec(F, u, v):
    return [ff.sub(F, a, b) for a, b in zip(u, v)]


def row_space_echelon(F, vectors):
    """Echelonized spanning set (zero rows dropped); canonical for a subspace."""
    if not vectors:
        return []
    R, piv = rref(F, vectors)
    return [R[i] for i in range(len(piv))]


def in_row_space(F, vectors, v) -> bool:
    if not vectors:
        return not any(v)
    return rank(F, list(vectors) + [list(v)]) == rank(F, vectors)


def same_row_space(F, A, B) -> bool:
    return row_space_echelon(F, A) == row_space_echelon(F, B)


def coords_in_basis(F, basis_rows, v):
    """Coordinates of v in a row basis (None if v is outside the span)."""
    if not basis_rows:
        return None if any(v) else []
    # solve c . basis = v  <=>  basis^T c = v
    At = [[basis_rows[i][j] for i in range(len(basis_rows))] for j in range(len(basis_rows[0]))]
    return solve(F, At, list(v))


class Projector:
    """Projection onto the quotient by a row space, in free-column coordinates.

    Built from an echelonized relation set; project(v) subtracts the pivot
    components and returns the free-column coordinates of the class of v.
    """

    def __init__(self, F, ech_rows, ncols):
        self.F = F
        self.ncols = ncols
        self.ech = [list(r) for r in ech_rows]
        self.piv = [next(t for t, x in enumerate(r) if x) for r in self.ech]
        pivset = set(self.piv)
        self.free = [t for t in range(ncols) if t not in pivset]
        self._np = None
        # float64 matmul is BLAS-backed and exact while p^2 * rank < 2^52
        if F.k == 1 and self.ech and F.p * F.p * len(self.ech) < (1 << 52):
            self._np = (np.array(self.ech, dtype=np.float64), np.array(self.piv))

    def project(self, vec):
        if self._np is not None:
            return self.project_many([vec])[0]
        local = list(vec)
        for r, p in zip(self.ech, self.piv):
            c = local[p]
            if c:
                local = [ff.sub(self.F, x, ff.mul(self.F, c, y)) for x, y in zip(local, r)]
        return [local[t] for t in self.free]

    def project_many(self, rows):
        if self._np is not None and rows:
            E, piv = self._np
            V = np.array(rows, dtype=np.float64)
            red = (V - V[:, piv] @ E).astype(np.int64) % self.F.p
            return [[int(x) for x in row] for row in red[:, self.free]]
        return [self.project(v) for v in rows]


def make_projector(F, relation_rows, ncols) -> Projector:
    ech = echelon_stream(F, dedupe_rows(relation_rows)) if relation_rows else []
    return Projector(F, ech, ncols)


def sparse_rref(F, rows, ncols):
    """RREF of sparse rows (dicts col -> value); returns dense echelon rows.

    Near-linear for relation sets whose rows touch few columns, as the
    balancing relations of monomial modules do.
    """
    pivots: dict[int, dict] = {}

    def combine(r, c, prow):
        f = r[c]
        for col, v in prow.items():
            x = ff.sub(F, r.get(col, 0), ff.mul(F, f, v))
            if x:
                r[col] = x
            else:
                r.pop(col, None)

    for row in rows:
        r = {c: v for c, v in row.items() if v}
        # existing pivot rows contain no other pivot columns, so one sweep
        # over the original support clears every pivot column from r
        for c in sorted(row):
            if c in r and c in pivots:
                combine(r, c, pivots[c])
        if not r:
            continue
        c = min(r)
        s = ff.inv(F, r[c])
        r = {col: ff.mul(F, s, v) for col, v in r.items()}
        for prow in pivots.values():
            if c in prow:
                f = prow[c]
                for col, v in r.items():
                    x = ff.sub(F, prow.get(col, 0), ff.mul(F, f, v))
                    if x:
                        prow[col] = x
                    else:
                        prow.pop(col, None)
        pivots[c] = r
    out = []
    for c in sorted(pivots):
        dense = [0] * ncols
        for col, v in pivots[c].items():
            dense[col] = v
        out.append(dense)
    return out


def make_projector_sparse(F, sparse_rows, ncols) -> Projector:
    return Projector(F, sparse_rref(F, sparse_rows, ncols), ncols)


def echelon_stream(F, rows, chunk: int = 2048):
    """Echelonized spanning set computed in chunks (memory-friendly)."""
    ech: list = []
    buf: list = []

    def flush():
        nonlocal ech, buf
        if buf:
            ech = row_space_echelon(F, ech + buf)
            buf = []

    for r in rows:
        buf.append(list(r))
        if len(buf) >= chunk:
            flush()
    flush()
    return ech


def dedupe_rows(rows):
    """Drop zero rows and duplicates (kept in first-seen order)."""
    seen = set()
    out = []
    for r in rows:
        t = tuple(r)
        if not any(t) or t in seen:
            continue
        seen.add(t)
        out.append(list(r))
    return out
