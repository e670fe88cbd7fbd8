"""Graded algebras and graded modules as degree-tagged structure constants.

A GradedAlgebra stores a basis-indexed multiplication table sc[i][j] (a
coefficient vector over the basis) plus a group-element tag deg[i] per
basis index.  Modules store an action table act[i][j] over the module
basis with a tag mdeg[j].  Constructors validate the grading law, full
associativity / module law and the unit exhaustively over basis tuples;
the dimension cap keeps that affordable.

Vectors are tuples of packed field ints.  The scan order used by every
"search for an element" operation is the packed little-endian base-q
integer order on coefficient vectors, which makes all witnesses
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cohomology as coh
from . import fields as ff
from . import linalg as la
from .errors import (
    AlgebraMismatch,
    CapExceededUndetermined,
    GradingError,
    GroupOrFieldMismatch,
    ModuleLawError,
    NotNormalized,
    NotStronglyGraded,
    UnitError,
)
from .groups import FiniteGroup, GroupHom, direct_product, quotient

DIM_CAP = 256
SCAN_CAP = 1 << 20


@dataclass(frozen=True)
class GradedAlgebra:
    field: "ff.FieldSpec"
    group: FiniteGroup
    dim: int
    deg: tuple[int, ...]
    sc: tuple[tuple[tuple[int, ...], ...], ...]
    unit: tuple[int, ...]

    def component(self, g: int) -> list[int]:
        return [i for i in range(self.dim) if self.deg[i] == g]

    def __repr__(self):
        return f"GradedAlgebra(dim={self.dim}, group_n={self.group.n})"


@dataclass(frozen=True)
class GradedModule:
    algebra: GradedAlgebra
    mdim: int
    mdeg: tuple[int, ...]
    act: tuple[tuple[tuple[int, ...], ...], ...]

    def component(self, g: int) -> list[int]:
        return [j for j in range(self.mdim) if self.mdeg[j] == g]

    def __repr__(self):
        return f"GradedModule(mdim={self.mdim})"


@dataclass(frozen=True)
class UngradedModule:
    algebra: GradedAlgebra
    mdim: int
    act: tuple[tuple[tuple[int, ...], ...], ...]

    def __repr__(self):
        return f"UngradedModule(mdim={self.mdim})"


# -- elementwise helpers ----------------------------------------------------

def mul_vec(A: GradedAlgebra, u, v):
    """Product of two coefficient vectors in A."""
    F = A.field
    out = [0] * A.dim
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    c = ff.mul(F, ui, vj)
                    row = A.sc[i][j]
                    for t, s in enumerate(row):
                        if s:
                            out[t] = ff.add(F, out[t], ff.mul(F, c, s))
    return out


def act_vec(W, avec, wvec):
    """Action of an algebra coefficient vector on a module vector."""
    F = W.algebra.field
    out = [0] * W.mdim
    for i, ai in enumerate(avec):
        if ai:
            for j, wj in enumerate(wvec):
                if wj:
                    c = ff.mul(F, ai, wj)
                    row = W.act[i][j]
                    for t, s in enumerate(row):
                        if s:
                            out[t] = ff.add(F, out[t], ff.mul(F, c, s))
    return out


def left_mult_matrix(A: GradedAlgebra, u):
    """L[j] = coordinates of u * e_j; then (x . L) represents u * x."""
    basis = [0] * A.dim
    L = []
    for j in range(A.dim):
        vj = [0] * A.dim
        vj[j] = 1
        L.append(mul_vec(A, u, vj))
    return L


def right_mult_matrix(A: GradedAlgebra, u):
    R = []
    for j in range(A.dim):
        vj = [0] * A.dim
        vj[j] = 1
        R.append(mul_vec(A, vj, u))
    return R


def act_matrix(W, avec):
    """M[j] = coordinates of avec . w_j; then (c . M) represents avec . w."""
    M = []
    for j in range(W.mdim):
        wj = [0] * W.mdim
        wj[j] = 1
        M.append(act_vec(W, avec, wj))
    return M


def basis_act_matrix(W, i):
    """Action matrix of the i-th algebra basis element (rows from act)."""
    return [list(W.act[i][j]) for j in range(W.mdim)]


def is_invertible_element(A: GradedAlgebra, u):
    """Two-sided inverse of u, or None.  L_u nonsingular iff u is a unit."""
    L = left_mult_matrix(A, u)
    Li = la.inv_matrix(A.field, L)
    if Li is None:
        return None
    v = la.vec_mat(A.field, A.unit, Li)  # u * v = 1
    if mul_vec(A, v, u) != list(A.unit):
        return None
    return v


# -- constructors with validation -------------------------------------------

def _monomial_tables(table):
    """(targets, coeffs) when every entry vector has at most one nonzero."""
    import numpy as np

    n1 = len(table)
    n2 = len(table[0]) if n1 else 0
    T = [[0] * n2 for _ in range(n1)]
    C = [[0] * n2 for _ in range(n1)]
    for i in range(n1):
        for j in range(n2):
            nz = [(t, c) for t, c in enumerate(table[i][j]) if c]
            if len(nz) > 1:
                return None
            if nz:
                T[i][j], C[i][j] = nz[0]
    return np.array(T, dtype=np.int64), np.array(C, dtype=np.int64)


def _assoc_monomial(F, sc_T, sc_C, act_T, act_C, p):
    """Vectorized law check: (e_i e_j) x_k == e_i (e_j x_k).

    For an algebra pass act_* = sc_*; for a module pass its action tables.
    Returns a violating triple or None.  Only valid for prime fields.
    """
    import numpy as np

    d = sc_T.shape[0]
    m = act_T.shape[1]
    I = np.arange(d)
    chunk = max(1, (1 << 22) // max(1, d * d))
    for k0 in range(0, m, chunk):
        ks = np.arange(k0, min(m, k0 + chunk))
        # lhs: product entry (i,j) acting on k
        lt = act_T[sc_T[:, :, None], ks[None, None, :]]
        lc = (sc_C[:, :, None] * act_C[sc_T[:, :, None], ks[None, None, :]]) % p
        # rhs: i acting on the entry (j,k)
        jt = act_T[:, ks]  # (d, chunk)
        jc = act_C[:, ks]
        rt = act_T[I[:, None, None], jt[None, :, :]]
        rc = (jc[None, :, :] * act_C[I[:, None, None], jt[None, :, :]]) % p
        lt = np.where(lc == 0, -1, lt)
        rt = np.where(rc == 0, -1, rt)
        bad = (lt != rt) | (lc != rc)
        if bad.any():
            i, j, k = np.argwhere(bad)[0]
            return int(i), int(j), int(k0 + k)
    return None


def _validate_algebra(A: GradedAlgebra):
    G, F = A.group, A.field
    if A.dim > DIM_CAP:
        raise GradingError(f"dimension {A.dim} exceeds the cap {DIM_CAP}")
    for i in range(A.dim):
        for j in range(A.dim):
            gij = G.mul(A.deg[i], A.deg[j])
            for t, c in enumerate(A.sc[i][j]):
                if c and A.deg[t] != gij:
                    raise GradingError(
                        f"product of basis {i} (deg {A.deg[i]}) and {j} (deg {A.deg[j]}) "
                        f"hits degree {A.deg[t]}"
                    )
    for t, c in enumerate(A.unit):
        if c and A.deg[t] != G.e:
            raise UnitError("unit has support outside the identity degree")
    for i in range(A.dim):
        ei = [0] * A.dim
        ei[i] = 1
        if mul_vec(A, list(A.unit), ei) != ei or mul_vec(A, ei, list(A.unit)) != ei:
            raise UnitError(f"unit is not two-sided at basis {i}")
    if F.k == 1:
        mono = _monomial_tables(A.sc)
        if mono is not None:
            T, C = mono
            bad = _assoc_monomial(F, T, C, T, C, F.p)
            if bad is not None:
                raise GradingError(f"associativity fails at basis triple {bad}")
            return
    for i in range(A.dim):
        ei = [0] * A.dim
        ei[i] = 1
        for j in range(A.dim):
            ij = A.sc[i][j]
            for k in range(A.dim):
                ek = [0] * A.dim
                ek[k] = 1
                lhs = mul_vec(A, list(ij), ek)
                rhs = mul_vec(A, ei, list(A.sc[j][k]))
                if lhs != rhs:
                    raise GradingError(f"associativity fails at basis triple ({i}, {j}, {k})")


def make_graded_algebra(F, G: FiniteGroup, deg, sc, unit) -> GradedAlgebra:
    A = GradedAlgebra(
        field=F,
        group=G,
        dim=len(deg),
        deg=tuple(int(g) for g in deg),
        sc=tuple(tuple(tuple(v) for v in row) for row in sc),
        unit=tuple(unit),
    )
    _validate_algebra(A)
    return A


def _validate_module(W: GradedModule | UngradedModule, graded: bool):
    A = W.algebra
    F, G = A.field, A.group
    if W.mdim > DIM_CAP:
        raise ModuleLawError(f"module dimension {W.mdim} exceeds the cap {DIM_CAP}")
    if graded:
        for i in range(A.dim):
            for j in range(W.mdim):
                gij = G.mul(A.deg[i], W.mdeg[j])
                for t, c in enumerate(W.act[i][j]):
                    if c and W.mdeg[t] != gij:
                        raise GradingError(
                            f"action of basis {i} on module basis {j} leaves degree {gij}"
                        )
    for j in range(W.mdim):
        wj = [0] * W.mdim
        wj[j] = 1
        if act_vec(W, list(A.unit), wj) != wj:
            raise ModuleLawError(f"unit does not act as identity on module basis {j}")
    if F.k == 1 and W.mdim:
        mono_sc = _monomial_tables(A.sc)
        mono_act = _monomial_tables(W.act)
        if mono_sc is not None and mono_act is not None:
            bad = _assoc_monomial(F, mono_sc[0], mono_sc[1], mono_act[0], mono_act[1], F.p)
            if bad is not None:
                raise ModuleLawError(f"module law fails at triple {bad}")
            return
    for i in range(A.dim):
        ei = [0] * A.dim
        ei[i] = 1
        for j in range(A.dim):
            prod = A.sc[i][j]
            for k in range(W.mdim):
                wk = [0] * W.mdim
                wk[k] = 1
                lhs = act_vec(W, list(prod), wk)
                rhs = act_vec(W, ei, list(W.act[j][k]))
                if lhs != rhs:
                    raise ModuleLawError(f"module law fails at triple ({i}, {j}, {k})")


def make_graded_module(A: GradedAlgebra, mdeg, act) -> GradedModule:
    W = GradedModule(
        algebra=A,
        mdim=len(mdeg),
        mdeg=tuple(int(g) for g in mdeg),
        act=tuple(tuple(tuple(v) for v in row) for row in act),
    )
    _validate_module(W, graded=True)
    return W


def make_ungraded_module(A: GradedAlgebra, act) -> UngradedModule:
    act = tuple(tuple(tuple(v) for v in row) for row in act)
    mdim = len(act[0]) if act else 0
    W = UngradedModule(algebra=A, mdim=mdim, act=act)
    _validate_module(W, graded=False)
    return W


# -- basic constructions ------------------------------------------------------

def group_algebra(G: FiniteGroup, F) -> GradedAlgebra:
    dim = G.n
    sc = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            sc[i][j][G.mul(i, j)] = 1
    unit = [0] * dim
    unit[G.e] = 1
    return make_graded_algebra(F, G, list(G.elements()), sc, unit)


def twisted_group_algebra(alpha: coh.Cocycle2) -> GradedAlgebra:
    """v_g v_h = alpha(g, h) v_{gh}; basis indexed by group elements."""
    G, F = alpha.group, alpha.field
    if not coh.is_normalized(G, alpha.table):
        raise NotNormalized("twisting cocycle must be normalized")
    dim = G.n
    sc = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            sc[i][j][G.mul(i, j)] = alpha.table[i][j]
    unit = [0] * dim
    unit[G.e] = 1
    return make_graded_algebra(F, G, list(G.elements()), sc, unit)


def elementary_matrix_algebra(n: int, F, G: FiniteGroup, degrees) -> GradedAlgebra:
    """Full matrix algebra M_n(F) with deg(E_ij) = g_i * g_j^-1."""
    if n > 8:
        raise GradingError(f"matrix size {n} exceeds the cap 8")
    degrees = [int(g) for g in degrees]
    dim = n * n
    pos = lambda i, j: i * n + j
    deg = [G.mul(degrees[i], G.inv[degrees[j]]) for i in range(n) for j in range(n)]
    sc = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        sc[pos(i, j)][pos(k, l)][pos(i, l)] = 1
    unit = [0] * dim
    for i in range(n):
        unit[pos(i, i)] = 1
    return make_graded_algebra(F, G, deg, sc, unit)


def base_algebra(A: GradedAlgebra) -> tuple[GradedAlgebra, tuple[int, ...]]:
    """The identity component as an algebra over the trivial group.

    Returns (algebra, indices): indices[t] is the A-basis index of the t-th
    base basis element.
    """
    from .groups import group_from_table

    idx = tuple(A.component(A.group.e))
    pos = {b: t for t, b in enumerate(idx)}
    triv = group_from_table(["e"], [[0]])
    d = len(idx)
    sc = [[[0] * d for _ in range(d)] for _ in range(d)]
    for a in range(d):
        for b in range(d):
            full = A.sc[idx[a]][idx[b]]
            for t, c in enumerate(full):
                if c:
                    sc[a][b][pos[t]] = c
    unit = [A.unit[i] for i in idx]
    return make_graded_algebra(A.field, triv, [0] * d, sc, unit), idx


def quotient_grading(A: GradedAlgebra, normal_elems) -> tuple[GradedAlgebra, GroupHom]:
    """Same algebra, degrees pushed through G -> G/N."""
    Q, proj = quotient(A.group, normal_elems)
    B = make_graded_algebra(
        A.field, Q, [proj(g) for g in A.deg], [[list(v) for v in row] for row in A.sc], list(A.unit)
    )
    return B, proj


def transport_grading(A: GradedAlgebra, iso: GroupHom) -> GradedAlgebra:
    """Relabel degrees along a group isomorphism (same structure constants)."""
    if iso.source != A.group or not (iso.is_injective() and iso.is_surjective()):
        raise GroupOrFieldMismatch("transport needs an isomorphism from the grading group")
    return make_graded_algebra(
        A.field,
        iso.target,
        [iso(g) for g in A.deg],
        [[list(v) for v in row] for row in A.sc],
        list(A.unit),
    )


def _matched_pairs(A: GradedAlgebra, B: GradedAlgebra):
    return [(i, j) for i in range(A.dim) for j in range(B.dim) if A.deg[i] == B.deg[j]]


def matched_pairs(A: GradedAlgebra, B: GradedAlgebra):
    """Basis of the graded product: degree-matched pairs in lex order."""
    return _matched_pairs(A, B)


def module_pairs(W: GradedModule, W2: GradedModule):
    """Basis of the graded module product: degree-matched pairs in lex order."""
    return [(u, v) for u in range(W.mdim) for v in range(W2.mdim) if W.mdeg[u] == W2.mdeg[v]]


def graded_product(A: GradedAlgebra, B: GradedAlgebra) -> GradedAlgebra:
    """Degreewise tensor product: basis = degree-matched pairs, lex order."""
    if A.group != B.group or A.field != B.field:
        raise GroupOrFieldMismatch("graded product needs a common group and field")
    F = A.field
    pairs = _matched_pairs(A, B)
    pos = {p: t for t, p in enumerate(pairs)}
    dim = len(pairs)
    deg = [A.deg[i] for (i, j) in pairs]
    sc = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for t1, (i1, j1) in enumerate(pairs):
        for t2, (i2, j2) in enumerate(pairs):
            va = A.sc[i1][i2]
            vb = B.sc[j1][j2]
            for ta, ca in enumerate(va):
                if ca:
                    for tb, cb in enumerate(vb):
                        if cb:
                            # both coefficients live in matching degrees
                            sc[t1][t2][pos[(ta, tb)]] = ff.mul(F, ca, cb)
    unit = [0] * dim
    for t, (i, j) in enumerate(pairs):
        c = ff.mul(F, A.unit[i], B.unit[j])
        if c:
            unit[t] = c
    return make_graded_algebra(F, A.group, deg, sc, unit)


def twist_algebra(alpha: coh.Cocycle2, A: GradedAlgebra) -> GradedAlgebra:
    """Graded product with the twisted group algebra of alpha, relabelled.

    The product basis (v_deg(a) x a) is relabelled by a itself, so the
    twisted algebra shares A's basis; only the structure constants pick up
    the factor alpha(deg a, deg b).  The base algebra is then literally
    equal to A's.
    """
    if alpha.group != A.group or alpha.field != A.field:
        raise GroupOrFieldMismatch("twisting cocycle must match the algebra")
    F = A.field
    sc = [
        [
            [ff.mul(F, alpha.table[A.deg[i]][A.deg[j]], c) for c in A.sc[i][j]]
            for j in range(A.dim)
        ]
        for i in range(A.dim)
    ]
    return make_graded_algebra(F, A.group, list(A.deg), sc, list(A.unit))


def free_module(A: GradedAlgebra) -> GradedModule:
    """A as a graded left module over itself (free of rank one)."""
    return make_graded_module(A, list(A.deg), [[list(v) for v in row] for row in A.sc])


def regular_ungraded_module(A: GradedAlgebra) -> UngradedModule:
    return make_ungraded_module(A, [[list(v) for v in row] for row in A.sc])


def module_product(W: GradedModule, W2: GradedModule) -> GradedModule:
    """Graded product of graded modules over the graded product algebra."""
    A, B = W.algebra, W2.algebra
    P = graded_product(A, B)
    apairs = _matched_pairs(A, B)
    mpairs = module_pairs(W, W2)
    mpos = {p: t for t, p in enumerate(mpairs)}
    F = A.field
    mdeg = [W.mdeg[u] for (u, v) in mpairs]
    act = [[[0] * len(mpairs) for _ in mpairs] for _ in apairs]
    for t, (i, j) in enumerate(apairs):
        for s, (u, v) in enumerate(mpairs):
            va = W.act[i][u]
            vb = W2.act[j][v]
            for ta, ca in enumerate(va):
                if ca:
                    for tb, cb in enumerate(vb):
                        if cb:
                            act[t][s][mpos[(ta, tb)]] = ff.mul(F, ca, cb)
    return make_graded_module(P, mdeg, act)


def twist_module(alpha: coh.Cocycle2, W: GradedModule) -> GradedModule:
    """Module product with the rank-one free module over F^alpha G, relabelled
    by W's basis; actions pick up the factor alpha(deg a, mdeg w)."""
    A = W.algebra
    if alpha.group != A.group or alpha.field != A.field:
        raise GroupOrFieldMismatch("twisting cocycle must match the module")
    F = A.field
    TA = twist_algebra(alpha, A)
    act = [
        [
            [ff.mul(F, alpha.table[A.deg[i]][W.mdeg[j]], c) for c in W.act[i][j]]
            for j in range(W.mdim)
        ]
        for i in range(A.dim)
    ]
    return make_graded_module(TA, list(W.mdeg), act)


def suspend(W: GradedModule, h: int) -> GradedModule:
    """Relabel components so the new g-component is the old gh-component."""
    G = W.algebra.group
    hi = G.inv[h]
    return make_graded_module(
        W.algebra,
        [G.mul(W.mdeg[j], hi) for j in range(W.mdim)],
        [[list(v) for v in row] for row in W.act],
    )


def direct_sum(W: GradedModule, W2: GradedModule) -> GradedModule:
    if W.algebra != W2.algebra:
        raise AlgebraMismatch("direct sum needs a common algebra")
    A = W.algebra
    m = W.mdim + W2.mdim
    mdeg = list(W.mdeg) + list(W2.mdeg)
    act = []
    for i in range(A.dim):
        rows = []
        for j in range(W.mdim):
            rows.append(list(W.act[i][j]) + [0] * W2.mdim)
        for j in range(W2.mdim):
            rows.append([0] * W.mdim + list(W2.act[i][j]))
        act.append(rows)
    return make_graded_module(A, mdeg, act)


# -- submodules and quotients -------------------------------------------------

def submodule_from_vectors(W: GradedModule, homogeneous_vectors):
    """Graded submodule spanned by homogeneous vectors (closed under action).

    Returns (module, inclusion_rows); inclusion_rows[t] expresses the t-th
    new basis vector in W's coordinates.  Input vectors must each be
    homogeneous; their action-closure is taken automatically.
    """
    A = W.algebra
    F = A.field
    G = A.group
    # close under the action, keeping homogeneity
    vectors = []
    for v in homogeneous_vectors:
        degs = {W.mdeg[t] for t, c in enumerate(v) if c}
        if len(degs) > 1:
            raise GradingError("submodule generators must be homogeneous")
        if degs:
            vectors.append(list(v))
    closed = list(vectors)
    for v in vectors:
        for i in range(A.dim):
            ei = [0] * A.dim
            ei[i] = 1
            closed.append(act_vec(W, ei, v))
    # echelonize per degree so the sub-basis is homogeneous and canonical
    rows_by_deg: dict[int, list] = {}
    for v in closed:
        degs = {W.mdeg[t] for t, c in enumerate(v) if c}
        if not degs:
            continue
        (d,) = degs
        rows_by_deg.setdefault(d, []).append(v)
    incl = []
    mdeg = []
    for g in G.elements():
        if g in rows_by_deg:
            for r in la.row_space_echelon(F, rows_by_deg[g]):
                incl.append(r)
                mdeg.append(g)
    # action in sub coordinates
    act = []
    for i in range(A.dim):
        ei = [0] * A.dim
        ei[i] = 1
        rows = []
        for v in incl:
            img = act_vec(W, ei, v)
            c = la.coords_in_basis(F, incl, img)
            assert c is not None, "span is not action-closed"
            rows.append(c)
        act.append(rows)
    sub = make_graded_module(A, mdeg, act)
    return sub, [tuple(r) for r in incl]


def quotient_module(W: GradedModule, relation_vectors):
    """Quotient of W by the graded submodule spanned by relation_vectors.

    Returns (module, proj_rows, lift_rows): proj_rows[t] is the image of
    W's t-th basis vector in quotient coordinates; lift_rows[s] is a
    representative in W of the s-th quotient basis vector.
    """
    A = W.algebra
    F = A.field
    G = A.group
    rel_by_deg: dict[int, list] = {}
    for v in relation_vectors:
        degs = {W.mdeg[t] for t, c in enumerate(v) if c}
        if len(degs) > 1:
            raise GradingError("relations must be homogeneous")
        if degs:
            (d,) = degs
            rel_by_deg.setdefault(d, []).append(list(v))

    blocks = {g: W.component(g) for g in G.elements()}
    # per-degree projector for the relations, restricted to the block columns
    new_basis = []  # (degree, W-basis index of the free column)
    projs: dict[int, tuple] = {}
    for g in G.elements():
        cols = blocks[g]
        rows = [[v[c] for c in cols] for v in rel_by_deg.get(g, [])]
        pr = la.make_projector(F, rows, len(cols))
        projs[g] = (cols, pr, len(new_basis))
        for t in pr.free:
            new_basis.append((g, cols[t]))

    def project(vec):
        out = [0] * len(new_basis)
        for g in G.elements():
            cols, pr, offset = projs[g]
            local = pr.project([vec[c] for c in cols])
            for s, x in enumerate(local):
                out[offset + s] = x
        return out

    mdeg = [g for (g, _) in new_basis]
    act = []
    for i in range(A.dim):
        rows = []
        for (g, b) in new_basis:
            ei = [0] * A.dim
            ei[i] = 1
            raw = [0] * W.mdim
            raw[b] = 1
            rows.append(project(act_vec(W, ei, raw)))
        act.append(rows)
    Wq = make_graded_module(A, mdeg, act)
    proj_rows = []
    for b in range(W.mdim):
        raw = [0] * W.mdim
        raw[b] = 1
        proj_rows.append(tuple(project(raw)))
    lift_rows = []
    for (g, b) in new_basis:
        raw = [0] * W.mdim
        raw[b] = 1
        lift_rows.append(tuple(raw))
    return Wq, proj_rows, lift_rows


# -- full tensor products and induction --------------------------------------

def tensor_algebra(A: GradedAlgebra, B: GradedAlgebra) -> GradedAlgebra:
    """Full tensor product, graded by the direct product group."""
    if A.field != B.field:
        raise GroupOrFieldMismatch("tensor product needs a common field")
    F = A.field
    GG = direct_product(A.group, B.group)
    # element (g, h) has index g * B.group.n + h by the direct_product order
    pos_g = lambda g, h: g * B.group.n + h
    dim = A.dim * B.dim
    pos = lambda i, j: i * B.dim + j
    deg = [pos_g(A.deg[i], B.deg[j]) for i in range(A.dim) for j in range(B.dim)]
    sc = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i1 in range(A.dim):
        for j1 in range(B.dim):
            for i2 in range(A.dim):
                for j2 in range(B.dim):
                    va, vb = A.sc[i1][i2], B.sc[j1][j2]
                    row = sc[pos(i1, j1)][pos(i2, j2)]
                    for ta, ca in enumerate(va):
                        if ca:
                            for tb, cb in enumerate(vb):
                                if cb:
                                    row[pos(ta, tb)] = ff.mul(F, ca, cb)
    unit = [0] * dim
    for i in range(A.dim):
        if A.unit[i]:
            for j in range(B.dim):
                if B.unit[j]:
                    unit[pos(i, j)] = ff.mul(F, A.unit[i], B.unit[j])
    return make_graded_algebra(F, GG, deg, sc, unit)


def full_tensor(W: GradedModule, W2: GradedModule) -> UngradedModule:
    """W (x) W' over the full tensor algebra, gradings forgotten."""
    A, B = W.algebra, W2.algebra
    T = tensor_algebra(A, B)
    F = A.field
    m = W.mdim * W2.mdim
    mpos = lambda u, v: u * W2.mdim + v
    act = [[[0] * m for _ in range(m)] for _ in range(T.dim)]
    for i in range(A.dim):
        for j in range(B.dim):
            ti = i * B.dim + j
            for u in range(W.mdim):
                for v in range(W2.mdim):
                    va, vb = W.act[i][u], W2.act[j][v]
                    row = act[ti][mpos(u, v)]
                    for ta, ca in enumerate(va):
                        if ca:
                            for tb, cb in enumerate(vb):
                                if cb:
                                    row[mpos(ta, tb)] = ff.mul(F, ca, cb)
    return make_ungraded_module(T, act)


def graded_product_embedding(A: GradedAlgebra, B: GradedAlgebra):
    """Indices of the degree-matched pairs inside the full tensor basis."""
    return [i * B.dim + j for (i, j) in _matched_pairs(A, B)]


def induce_to_tensor(W: GradedModule, W2: GradedModule, Wprod: GradedModule) -> tuple[UngradedModule, list]:
    """(A (x) B) tensor_{A (x)^G B} (W (x)^G W'), as an ungraded module.

    Wprod must be module_product(W, W2).  Returns the induced module and the
    list of raw-generator coordinates (pairs of tensor-basis and product-
    module-basis indices) retained as its basis, for building comparison
    maps.
    """
    A, B = W.algebra, W2.algebra
    T = tensor_algebra(A, B)
    F = A.field
    emb = graded_product_embedding(A, B)  # product basis index -> tensor index
    P = Wprod.algebra
    m = Wprod.mdim
    dim_raw = T.dim * m
    rpos = lambda t, s: t * m + s
    # relations: (b * emb(c)) (x) w - b (x) (c . w); sparse rows
    rels = []
    for b in range(T.dim):
        eb = [0] * T.dim
        eb[b] = 1
        for c in range(P.dim):
            ec = [0] * T.dim
            ec[emb[c]] = 1
            prod = mul_vec(T, eb, ec)
            for wj in range(m):
                rel: dict[int, int] = {}
                for t, coeff in enumerate(prod):
                    if coeff:
                        rel[rpos(t, wj)] = coeff
                for s, coeff in enumerate(Wprod.act[c][wj]):
                    if coeff:
                        k = rpos(b, s)
                        x = ff.sub(F, rel.get(k, 0), coeff)
                        if x:
                            rel[k] = x
                        else:
                            rel.pop(k, None)
                if rel:
                    rels.append(rel)
    proj = la.make_projector_sparse(F, rels, dim_raw)
    free = proj.free
    act = []
    for i in range(T.dim):
        ei = [0] * T.dim
        ei[i] = 1
        raws = []
        for fidx in free:
            t, s = divmod(fidx, m)
            et = [0] * T.dim
            et[t] = 1
            prod = mul_vec(T, ei, et)
            raw = [0] * dim_raw
            for tt, coeff in enumerate(prod):
                if coeff:
                    raw[rpos(tt, s)] = coeff
            raws.append(raw)
        act.append(proj.project_many(raws))
    U = make_ungraded_module(T, act)
    return U, [divmod(fidx, m) for fidx in free]


# -- classification -----------------------------------------------------------

def support(A: GradedAlgebra) -> list[int]:
    return sorted({A.deg[i] for i in range(A.dim)})


def _component_products_span(A: GradedAlgebra, g: int):
    """Vectors spanning A_{g^-1} A_g inside A_e."""
    G = A.group
    gi = G.inv[g]
    left = A.component(gi)
    right = A.component(g)
    vecs = []
    for i in left:
        for j in right:
            vecs.append(list(A.sc[i][j]))
    return vecs


def strong_component(A: GradedAlgebra, g: int):
    """Is A_{g^-1} A_g = A_e?  Returns (bool, unit decomposition or None).

    The witness is a list of (a_vec, b_vec) pairs with sum(a*b) = 1, a in
    A_{g^-1} and b in A_g.
    """
    F = A.field
    G = A.group
    e_idx = A.component(G.e)
    vecs = _component_products_span(A, g)
    base_cols = e_idx
    rows = [[v[c] for c in base_cols] for v in vecs]
    target = [A.unit[c] for c in base_cols]
    if not rows or la.rank(F, rows) != len(e_idx):
        return False, None
    # unit decomposition: solve sum c_k (a_k b_k) = 1
    coeffs = la.coords_in_basis(F, rows, target)
    assert coeffs is not None
    gi = G.inv[g]
    left = A.component(gi)
    right = A.component(g)
    pairs = [(i, j) for i in left for j in right]
    witness = []
    for c, (i, j) in zip(coeffs, pairs):
        if c:
            av = [0] * A.dim
            av[i] = c
            bv = [0] * A.dim
            bv[j] = 1
            witness.append((tuple(av), tuple(bv)))
    return True, witness


def _enumerate_vectors(F, length: int):
    """All nonzero coefficient vectors, packed little-endian base-q order."""
    total = F.q**length
    for packed in range(1, total):
        v = []
        x = packed
        for _ in range(length):
            x, r = divmod(x, F.q)
            v.append(r)
        yield v


def invertible_in_component(A: GradedAlgebra, g: int, rng=None, tries: int = 2048):
    """Deterministic scan for an invertible element of A_g.

    Below the q^dim <= SCAN_CAP cap the scan is exhaustive (lexicographic,
    so the witness is canonical); above it a seeded random search is used
    and exhaustion is refused with Undetermined.
    """
    F = A.field
    comp = A.component(g)
    if not comp:
        return None
    if F.q ** len(comp) <= SCAN_CAP:
        for v in _enumerate_vectors(F, len(comp)):
            u = [0] * A.dim
            for c, i in zip(v, comp):
                u[i] = c
            if is_invertible_element(A, u) is not None:
                return tuple(u)
        return None
    import random

    rng = rng or random.Random(0)
    for _ in range(tries):
        u = [0] * A.dim
        for i in comp:
            u[i] = rng.randrange(F.q)
        if any(u) and is_invertible_element(A, u) is not None:
            return tuple(u)
    raise CapExceededUndetermined(
        f"component dim {len(comp)} over q={F.q} exceeds the exhaustive scan cap"
    )


@dataclass(frozen=True)
class ClassifyReport:
    support: tuple[int, ...]
    strong: tuple[int, ...]
    invertible: tuple[int, ...]
    is_strongly_graded: bool
    is_crossed_product: bool
    is_twisted_group_algebra: bool
    is_graded_division: bool
    unit_decompositions: dict
    unit_witnesses: dict


def classify(A: GradedAlgebra) -> ClassifyReport:
    G = A.group
    F = A.field
    supp = support(A)
    strong = []
    decomps = {}
    for g in G.elements():
        ok, w = strong_component(A, g)
        if ok:
            strong.append(g)
            decomps[g] = w
    invertible = []
    witnesses = {}
    for g in G.elements():
        u = invertible_in_component(A, g)
        if u is not None:
            invertible.append(g)
            witnesses[g] = u
    is_strong = all(g in strong for g in G.elements())
    is_cp = all(g in invertible for g in G.elements())
    is_tga = is_cp and all(len(A.component(g)) == 1 for g in G.elements())
    # graded division: every nonzero homogeneous element invertible
    is_gd = True
    for g in supp:
        comp = A.component(g)
        if F.q ** len(comp) > SCAN_CAP:
            raise CapExceededUndetermined("graded-division scan cap exceeded")
        for v in _enumerate_vectors(F, len(comp)):
            u = [0] * A.dim
            for c, i in zip(v, comp):
                u[i] = c
            if is_invertible_element(A, u) is None:
                is_gd = False
                break
        if not is_gd:
            break
    return ClassifyReport(
        support=tuple(supp),
        strong=tuple(strong),
        invertible=tuple(invertible),
        is_strongly_graded=is_strong,
        is_crossed_product=is_cp,
        is_twisted_group_algebra=is_tga,
        is_graded_division=is_gd,
        unit_decompositions=decomps,
        unit_witnesses=witnesses,
    )


def graded_simple_algebra(A: GradedAlgebra):
    """Scan for a proper nonzero two-sided graded ideal.

    Returns (True, None) when graded simple, else (False, witness vectors
    spanning a proper graded ideal).  Exhaustive over homogeneous elements
    per component under the scan cap.
    """
    F = A.field
    G = A.group
    for g in support(A):
        comp = A.component(g)
        if F.q ** len(comp) > SCAN_CAP:
            raise CapExceededUndetermined("graded ideal scan cap exceeded")
        for v in _enumerate_vectors(F, len(comp)):
            x = [0] * A.dim
            for c, i in zip(v, comp):
                x[i] = c
            # two-sided ideal generated by homogeneous x: span of a * x * b
            vecs = []
            for i in range(A.dim):
                ei = [0] * A.dim
                ei[i] = 1
                ax = mul_vec(A, ei, x)
                for j in range(A.dim):
                    ej = [0] * A.dim
                    ej[j] = 1
                    vecs.append(mul_vec(A, ax, ej))
            r = la.rank(F, vecs)
            if r < A.dim:
                return False, la.row_space_echelon(F, vecs)
    return True, None
