"""Integer lattice computations backed by Smith normal form.

Everything here works with plain Python ints (exact, arbitrary precision).
Lattices in Z^D are represented by row matrices (rows = generators).  The
one SNF kernel serves all of: solving linear systems mod m, kernels of
maps into (Z_m)^R, lattice bases, and quotient structure of nested
lattices — which is exactly what the cohomology solver needs.

The SNF itself is delegated to sympy's sparse ZZ implementation.
"""

from __future__ import annotations

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_decomp


def _tolists(M: Matrix) -> list[list[int]]:
    return [[int(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def snf(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith decomposition D = S * M * T with S, T unimodular."""
    M = Matrix(rows)
    D, S, T = smith_normal_decomp(M, domain=ZZ)
    return _tolists(D), _tolists(S), _tolists(T)


def snf_diagonal(rows: list[list[int]]) -> list[int]:
    D, _, _ = snf(rows)
    r = min(len(D), len(D[0]) if D else 0)
    return [D[i][i] for i in range(r)]


def row_lattice_basis(gens: list[list[int]], dim: int, modulus: int | None = None) -> list[list[int]]:
    """Basis (as rows) of the lattice spanned by `gens` (+ modulus*I if given).

    When the lattice has full rank `dim` the result is a dim x dim matrix;
    lower-rank lattices return fewer rows.
    """
    rows = [list(r) for r in gens]
    if modulus is not None:
        rows += [[modulus if i == j else 0 for j in range(dim)] for i in range(dim)]
    if not rows:
        return []
    D, _, T = snf(rows)
    # M = S^-1 D T^-1 with S unimodular, so row_lat(M) = row_lat(D * T^-1)
    Tinv = _tolists(Matrix(T).inv())
    out = []
    for i in range(min(len(rows), dim)):
        d = D[i][i] if i < len(D) and i < len(D[0]) else 0
        if d:
            out.append([d * Tinv[i][j] for j in range(dim)])
    return out


def kernel_mod(A: list[list[int]], m: int, ncols: int) -> list[list[int]]:
    """Generators (rows) of the lattice {x in Z^ncols : A x == 0 (mod m)}.

    Computed as the projection of the integer kernel of [A | m*I]; the
    result always contains m*Z^ncols, hence has full rank ncols.
    """
    R = len(A)
    if R == 0:
        return [[m if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    lifted = [list(A[i]) + [m if j == i else 0 for j in range(R)] for i in range(R)]
    D, _, T = snf(lifted)
    ncols_total = ncols + R
    rank = 0
    for i in range(min(R, ncols_total)):
        if i < len(D) and i < len(D[0]) and D[i][i] != 0:
            rank += 1
    gens = []
    for j in range(rank, ncols_total):
        gens.append([T[i][j] for i in range(ncols)])
    return gens


def solve_mod(A: list[list[int]], b: list[int], m: int) -> list[int] | None:
    """One solution x (mod m) of A x == b (mod m), or None if inconsistent."""
    R = len(A)
    if R == 0:
        return []
    ncols = len(A[0])
    lifted = [list(A[i]) + [m if j == i else 0 for j in range(R)] for i in range(R)]
    D, S, T = snf(lifted)
    # A' = S^-1 D T^-1; solve D w = S b then x = (T w)[:ncols]
    sb = [sum(S[i][k] * b[k] for k in range(R)) for i in range(R)]
    ntot = ncols + R
    w = [0] * ntot
    for i in range(R):
        d = D[i][i] if i < len(D[0]) else 0
        if d == 0:
            if sb[i] != 0:
                return None
        else:
            if sb[i] % d != 0:
                return None
            w[i] = sb[i] // d
    x = [sum(T[i][k] * w[k] for k in range(ntot)) % m for i in range(ncols)]
    return x


def express_in_basis(basis_rows: list[list[int]], vec: list[int]) -> list[int] | None:
    """Integer coordinates c with c . basis = vec, or None if not in the lattice."""
    B = Matrix(basis_rows).T  # columns = basis vectors
    v = Matrix(vec)
    try:
        sol = B.solve(v)
    except (ValueError, Exception):
        return None
    coords = []
    for x in sol:
        if x.q != 1:  # not an integer
            return None
        coords.append(int(x))
    return coords


def integral_change_of_basis(from_rows: list[list[int]], to_rows: list[list[int]]) -> list[list[int]] | None:
    """Matrix X with X * to_rows == from_rows over Z, or None."""
    out = []
    for r in from_rows:
        c = express_in_basis(to_rows, r)
        if c is None:
            return None
        out.append(c)
    return out


def quotient_structure(amb_rows: list[list[int]], sub_rows: list[list[int]]):
    """Structure of (lattice A)/(lattice B) for nested full-rank lattices.

    Returns (diag, new_basis_rows): a new basis k'_1..k'_D of A and the full
    diagonal d_1 | d_2 | ... with B = span{d_i * k'_i}; the quotient is the
    direct sum of Z/d_i generated by the classes of the k'_i.
    """
    X = integral_change_of_basis(sub_rows, amb_rows)
    assert X is not None, "second lattice is not contained in the first"
    D, S, T = snf(X)
    # X = S^-1 D T^-1, so row_lat(sub) = row_lat(X*amb) = row_lat(D * (T^-1 * amb))
    Tinv = _tolists(Matrix(T).inv())
    dim = len(amb_rows)
    new_basis = [
        [sum(Tinv[i][k] * amb_rows[k][j] for k in range(dim)) for j in range(len(amb_rows[0]))]
        for i in range(dim)
    ]
    diag = [D[i][i] for i in range(dim)]
    return diag, new_basis
