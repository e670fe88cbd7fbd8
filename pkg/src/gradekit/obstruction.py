"""The main pipeline: associated graded modules, inertia of base modules,
the obstruction map, extension decisions, graded Wedderburn decomposition
and the correspondence of simple modules.

Convention (pinned by the acceptance instances): for an invariant
absolutely simple base module M of a graded algebra A, the obstruction
class of M is the cohomology class of the cocycle carried by the graded
endomorphism algebra of the associated module A (x-bar) M, and M extends
to the twist of A by alpha^-1 exactly when [alpha] is that class (always
sufficient; also necessary when A is strongly graded).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebras as al
from . import cohomology as coh
from . import endomorphisms as en
from . import fields as ff
from . import linalg as la
from .errors import (
    CapExceededUndetermined,
    NotAbsolutelySimple,
    NotBaseModule,
    NotGradedSimple,
    NotStronglyGraded,
    SplittingFails,
)
from .groups import FiniteGroup

SKEW_SEARCH_CAP = 1 << 20


# -- induced and associated modules -------------------------------------------

def _check_base_module(A: al.GradedAlgebra, M: al.UngradedModule):
    Ae, idx = al.base_algebra(A)
    if M.algebra != Ae:
        raise NotBaseModule("module is not over the base algebra of A")
    return Ae, idx


def induced_graded(A: al.GradedAlgebra, M: al.UngradedModule) -> al.GradedModule:
    return induced_with_data(A, M)[0]


def induced_with_data(A: al.GradedAlgebra, M: al.UngradedModule):
    """A (x)_{A_e} M as a graded module: free layer A (x) M modulo balancing.

    Returns (module, to_coords) where to_coords maps a raw pair (algebra
    basis i, module basis j) to its coordinate vector in the result.
    """
    Ae, idx = _check_base_module(A, M)
    F = A.field
    m = M.mdim
    raw_pos = lambda i, j: i * m + j
    mdeg = []
    act = []
    for i in range(A.dim):
        for j in range(m):
            mdeg.append(A.deg[i])
    for a in range(A.dim):
        rows = []
        for i in range(A.dim):
            for j in range(m):
                row = [0] * (A.dim * m)
                for t, c in enumerate(A.sc[a][i]):
                    if c:
                        row[raw_pos(t, j)] = c
                rows.append(row)
        act.append(rows)
    raw = al.make_graded_module(A, mdeg, act)
    rels = []
    for i in range(A.dim):
        for loc, x in enumerate(idx):
            prod = A.sc[i][x]
            for j in range(m):
                rel = [0] * (A.dim * m)
                for t, c in enumerate(prod):
                    if c:
                        rel[raw_pos(t, j)] = c
                for j2, c in enumerate(M.act[loc][j]):
                    if c:
                        rel[raw_pos(i, j2)] = ff.sub(F, rel[raw_pos(i, j2)], c)
                if any(rel):
                    rels.append(rel)
    W, proj_rows, _ = al.quotient_module(raw, rels)

    def to_coords(i, j):
        return list(proj_rows[raw_pos(i, j)])

    return W, to_coords


def localizing_radical(W: al.GradedModule, g: int):
    """The maximal graded submodule with trivial g-component.

    Its h-component is the solution set of A_{g h^-1} w = 0, a closed form
    that is verified to be a graded submodule by construction.
    Returns (submodule, inclusion rows).
    """
    A = W.algebra
    F, G = A.field, A.group
    vectors = []
    for h in G.elements():
        comp = W.component(h)
        if not comp:
            continue
        need = A.component(G.mul(g, G.inv[h]))
        target_cols = W.component(g)
        rows = []
        for i in need:
            for t in target_cols:
                rows.append([W.act[i][j][t] for j in comp])
        ker = la.nullspace(F, la.dedupe_rows(rows), ncols=len(comp))
        for k in ker:
            vec = [0] * W.mdim
            for c, j in zip(k, comp):
                vec[j] = c
            vectors.append(vec)
    if not vectors:
        empty = al.GradedModule(algebra=A, mdim=0, mdeg=(), act=tuple(() for _ in range(A.dim)))
        return empty, []
    sub, incl = al.submodule_from_vectors(W, vectors)
    assert not sub.component(g), "radical keeps a non-trivial component at g"
    return sub, incl


def associated(A: al.GradedAlgebra, M: al.UngradedModule) -> al.GradedModule:
    return associated_with_embedding(A, M)[0]


def associated_with_embedding(A: al.GradedAlgebra, M: al.UngradedModule):
    """Induced module modulo its localizing radical at the identity degree.

    Returns (module W, emb) with emb an M.mdim x W.mdim matrix embedding M
    isomorphically onto the e-component of W (m_j -> class of 1 (x) m_j).
    """
    W1, to_coords = induced_with_data(A, M)
    _, rad_incl = localizing_radical(W1, A.group.e)
    W, proj_rows, _ = al.quotient_module(W1, [list(r) for r in rad_incl])
    F = A.field
    emb = []
    for j in range(M.mdim):
        vec = [0] * W1.mdim
        for i in range(A.dim):
            if A.unit[i]:
                raw = to_coords(i, j)
                vec = la.add_vec(F, vec, la.scale_vec(F, A.unit[i], raw))
        out = [0] * W.mdim
        for t, c in enumerate(vec):
            if c:
                out = la.add_vec(F, out, la.scale_vec(F, c, list(proj_rows[t])))
        emb.append(out)
    assert la.rank(F, emb) == M.mdim, "base module does not embed in the associated module"
    e_cols = set(W.component(A.group.e))
    for row in emb:
        for t, c in enumerate(row):
            assert not (c and t not in e_cols), "embedding leaves the identity component"
    return W, emb


# -- inertia of base modules ----------------------------------------------------

def inertia_of_base(A: al.GradedAlgebra, M: al.UngradedModule) -> en.Inertia:
    """Inertia of the associated graded module."""
    W = associated(A, M)
    simple, _ = en.is_graded_simple(W)
    if simple:
        return en.inertia(W)
    return en.inertia_bruteforce(W)


# -- the obstruction report -------------------------------------------------------

@dataclass(frozen=True)
class ObstructionReport:
    inertia: en.Inertia
    omega: coh.Cocycle2
    omega_class: coh.ClassCoords
    cohomology: coh.CohomologyGroup
    invariant: bool
    end_algebra: en.GradedEndAlgebra
    associated: al.GradedModule
    extension: al.UngradedModule | None
    refutation: str | None


@dataclass(frozen=True)
class PipelineData:
    W: al.GradedModule
    emb: list
    E: en.GradedEndAlgebra
    inertia: en.Inertia
    omega: coh.Cocycle2
    cohomology: coh.CohomologyGroup
    omega_class: coh.ClassCoords
    invariant: bool


def analyze(A: al.GradedAlgebra, M: al.UngradedModule) -> PipelineData:
    """Shared pipeline: associated module, its End algebra, inertia, class."""
    end_dim = len(en.hom_ungraded(M, M))
    if end_dim != 1:
        raise NotAbsolutelySimple(
            f"base module has an endomorphism algebra of dimension {end_dim}", end_dim=end_dim
        )
    W, emb = associated_with_embedding(A, M)
    simple, _ = en.is_graded_simple(W)
    assert simple, "associated module of a simple base module must be graded simple"
    E = en.end_graded(W)
    ext = en.extract_twisted_cocycle(E)
    inert = en.Inertia(
        elements=tuple(sorted(ext.embedding.map)), subgroup=ext.subgroup, embedding=ext.embedding
    )
    H = coh.h2(ext.subgroup, A.field)
    cls = coh.class_of(H, ext.cocycle)
    return PipelineData(
        W=W,
        emb=emb,
        E=E,
        inertia=inert,
        omega=ext.cocycle,
        cohomology=H,
        omega_class=cls,
        invariant=len(inert.elements) == A.group.n,
    )


def _skew_from_cochain(E: en.GradedEndAlgebra, lam):
    """Turn the one-dimensional End components into a skew system.

    lam is a normalized 1-cochain on G with d(lam) = omega^-1 for the
    normalized omega carried by E.  Returns {g: matrix} with the skew law
    Phi_g Phi_h = Phi_{gh} and Phi_e = identity.
    """
    alg = E.as_algebra
    F, G = alg.field, alg.group
    basis_of = {}
    for i in range(alg.dim):
        basis_of[alg.deg[i]] = i
    e_idx = basis_of[G.e]
    M_e = E.matrices[e_idx]
    nu = None
    for r, row in enumerate(M_e):
        if row[r]:
            nu = row[r]
            break
    assert nu is not None
    phis = {}
    for g in G.elements():
        i = basis_of[g]
        c = ff.div(F, lam[g], nu)
        phis[g] = [[ff.mul(F, c, x) for x in row] for row in E.matrices[i]]
    return phis


def _star_extension(A: al.GradedAlgebra, M: al.UngradedModule, W, emb, phis):
    """Module structure a * w = (a w) Phi_{deg a}^-1, pushed onto M.

    Verifies the skew law, that the star action preserves the identity
    component, and that the restriction to the base algebra reproduces M's
    action exactly.
    """
    F, G = A.field, A.group
    for g in G.elements():
        for h in G.elements():
            comp = la.matmul(F, phis[g], phis[h])
            assert comp == [list(r) for r in phis[G.mul(g, h)]], "family is not skew"
    inv_phi = {g: la.inv_matrix(F, phis[g]) for g in G.elements()}
    emb_rows = [list(r) for r in emb]
    act = []
    for i in range(A.dim):
        g = A.deg[i]
        rows = []
        for j in range(M.mdim):
            w = emb_rows[j]
            aw = al.act_vec(W, _unit_vec(A.dim, i), w)
            star = la.vec_mat(F, aw, inv_phi[g])
            c = la.coords_in_basis(F, emb_rows, star)
            assert c is not None, "star action leaves the embedded copy of M"
            rows.append(c)
        act.append(rows)
    ext = al.make_ungraded_module(A, act)
    # restriction to the base algebra is exactly M
    Ae, idx = al.base_algebra(A)
    for loc, i in enumerate(idx):
        assert ext.act[i] == M.act[loc], "extension does not restrict to M on the nose"
    return ext


def _unit_vec(n, i):
    v = [0] * n
    v[i] = 1
    return v


@dataclass(frozen=True)
class ExtendOutcome:
    module: al.UngradedModule | None
    refuted: bool
    reason: str
    via: str

    @property
    def extended(self):
        return self.module is not None


def _skew_search(A: al.GradedAlgebra, M: al.UngradedModule, W, emb):
    """Exhaustive search for a skew system among homogeneous End units."""
    F, G = A.field, A.group
    units: dict[int, list] = {}
    total = 1
    for g in G.elements():
        mats = en.hom_graded(W, W, g)
        cands = []
        if not mats:
            return None, "endomorphism component missing at some degree"
        if F.q ** len(mats) > SKEW_SEARCH_CAP:
            raise CapExceededUndetermined("skew-system search cap exceeded")
        for v in al._enumerate_vectors(F, len(mats)):
            Mm = None
            for c, Mi in zip(v, mats):
                if c:
                    S = [[ff.mul(F, c, x) for x in row] for row in Mi]
                    Mm = S if Mm is None else [la.add_vec(F, r1, r2) for r1, r2 in zip(Mm, S)]
            if Mm is not None and la.inv_matrix(F, Mm) is not None:
                cands.append(Mm)
        if not cands:
            return None, f"no invertible endomorphism of degree {g}"
        units[g] = cands
        if g != G.e:
            total *= len(cands)
        if total > SKEW_SEARCH_CAP:
            raise CapExceededUndetermined("skew-system search cap exceeded")
    ident = la.identity_matrix(W.mdim)
    order = [g for g in G.elements() if g != G.e]

    def full_check(chosen):
        for a in G.elements():
            for b in G.elements():
                lhs = la.matmul(F, chosen[a], chosen[b])
                if lhs != [list(r) for r in chosen[G.mul(a, b)]]:
                    return False
        return True

    def dfs(k, chosen):
        if k == len(order):
            return dict(chosen) if full_check(chosen) else None
        g = order[k]
        for U in units[g]:
            ok = True
            chosen[g] = U
            for h in list(chosen) + [G.e]:
                for a, b in ((g, h), (h, g)):
                    Ua = chosen.get(a, ident if a == G.e else None)
                    Ub = chosen.get(b, ident if b == G.e else None)
                    c = G.mul(a, b)
                    Uc = chosen.get(c, ident if c == G.e else None)
                    if Ua is None or Ub is None or Uc is None:
                        continue
                    if la.matmul(F, Ua, Ub) != [list(r) for r in Uc]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                res = dfs(k + 1, chosen)
                if res is not None:
                    return res
            del chosen[g]
        return None

    found = dfs(0, {G.e: ident})
    if found is None:
        return None, "no skew system among homogeneous unit families"
    return found, ""


def extend(A: al.GradedAlgebra, M: al.UngradedModule) -> ExtendOutcome:
    """Decide/construct an A-module structure restricting to M on A_e.

    Fast path (invariant absolutely simple M): kill the obstruction cocycle
    by a coboundary witness and rescale the canonical endomorphism basis
    into a skew system.  Fallback: exhaustive skew-system search on the
    graded End algebra of the associated module.  Refutations are only
    claimed for strongly graded algebras.
    """
    strongly = al.classify(A).is_strongly_graded
    try:
        data = analyze(A, M)
    except NotAbsolutelySimple:
        data = None
    if data is not None and data.invariant:
        if data.omega_class.is_trivial():
            lam = coh.cohomologous(data.omega, coh.trivial_cocycle(A.group, A.field))
            assert lam is not None
            phis = _skew_from_cochain(data.E, lam)
            ext = _star_extension(A, M, data.W, data.emb, phis)
            return ExtendOutcome(module=ext, refuted=False, reason="", via="cocycle")
        if strongly:
            return ExtendOutcome(
                module=None,
                refuted=True,
                reason="obstruction class is nontrivial on a strongly graded algebra",
                via="cocycle",
            )
    # general fallback: skew search over the associated module's End algebra
    W, emb = associated_with_embedding(A, M)
    phis, why = _skew_search(A, M, W, emb)
    if phis is not None:
        ext = _star_extension(A, M, W, emb, phis)
        return ExtendOutcome(module=ext, refuted=False, reason="", via="search")
    if strongly:
        return ExtendOutcome(module=None, refuted=True, reason=why, via="search")
    return ExtendOutcome(
        module=None,
        refuted=False,
        reason=why + " (no refutation claimed: algebra is not strongly graded)",
        via="search",
    )


def obstruction(A: al.GradedAlgebra, M: al.UngradedModule) -> ObstructionReport:
    """Inertia, the obstruction cocycle and class, and the extension verdict."""
    data = analyze(A, M)
    extension = None
    refutation = None
    if data.invariant:
        outcome = extend(A, M)
        if outcome.extended:
            extension = outcome.module
        elif outcome.refuted:
            refutation = outcome.reason
    else:
        if al.classify(A).is_strongly_graded:
            refutation = "module is not invariant (necessary for strongly graded algebras)"
    return ObstructionReport(
        inertia=data.inertia,
        omega=data.omega,
        omega_class=data.omega_class,
        cohomology=data.cohomology,
        invariant=data.invariant,
        end_algebra=data.E,
        associated=data.W,
        extension=extension,
        refutation=refutation,
    )


def extension_truth_table(A: al.GradedAlgebra, M: al.UngradedModule, classes=None):
    """For every class [alpha], does M extend to the twist of A by alpha^-1?

    Returns (rows, omega_class, strongly_graded); each row is
    (coords, extended, expected) with expected = (coords == omega class).
    For strongly graded algebras extended == expected is asserted; otherwise
    only the sufficient direction is asserted.
    """
    data = analyze(A, M)
    if not data.invariant:
        raise NotGradedSimple("truth table needs an invariant base module")
    H = data.cohomology
    if classes is None:
        if H.order > 8:
            raise CapExceededUndetermined("class enumeration above 8 needs an explicit list")
        classes = coh.all_classes(H)
    strongly = al.classify(A).is_strongly_graded
    rows = []
    for cc in classes:
        alpha = coh.representative(H, cc)
        B = al.twist_algebra(coh.cocycle_inverse(alpha), A)
        outcome = extend(B, M)
        expected = cc.residues == data.omega_class.residues
        if strongly:
            assert outcome.extended == expected, (
                f"extension truth table mismatch at class {cc.residues}"
            )
        else:
            assert outcome.extended or not expected, (
                f"sufficient direction fails at class {cc.residues}"
            )
        rows.append((cc, outcome.extended, expected))
    return rows, data.omega_class, strongly


# -- graded Wedderburn decomposition ------------------------------------------------

@dataclass(frozen=True)
class WedderburnReport:
    base_module: al.UngradedModule
    W: al.GradedModule
    D: en.GradedEndAlgebra
    inertia: en.Inertia
    omega: coh.Cocycle2
    omega_class: coh.ClassCoords
    cohomology: coh.CohomologyGroup
    n: int
    surjective: bool
    kernel_dim: int
    graded_simple: bool
    model: al.GradedAlgebra | None
    iso_rows: tuple | None  # map A basis -> model coordinates


def _left_degree_spaces(W: al.GradedModule, E: en.GradedEndAlgebra):
    """Per degree h, a basis of {X : X commutes with E, X left homogeneous h}."""
    A = W.algebra
    F, G = A.field, A.group
    out = {}
    for h in G.elements():
        positions = [
            (j, j2)
            for j in range(W.mdim)
            for j2 in range(W.mdim)
            if W.mdeg[j2] == G.mul(h, W.mdeg[j])
        ]
        pos = {p: v for v, p in enumerate(positions)}
        if not positions:
            out[h] = []
            continue
        equations = []
        for Mmat in E.matrices:
            # X M = M X
            for j in range(W.mdim):
                for t2 in range(W.mdim):
                    row: dict[int, int] = {}
                    for t in range(W.mdim):
                        if (j, t) in pos and Mmat[t][t2]:
                            v = pos[(j, t)]
                            row[v] = ff.add(F, row.get(v, 0), Mmat[t][t2])
                    for t in range(W.mdim):
                        if Mmat[j][t] and (t, t2) in pos:
                            v = pos[(t, t2)]
                            row[v] = ff.sub(F, row.get(v, 0), Mmat[j][t])
                    if row and any(row.values()):
                        equations.append(row)
        basis = en._hom_nullspace(F, equations, len(positions))
        mats = []
        for vec in basis:
            X = [[0] * W.mdim for _ in range(W.mdim)]
            for v, (j, j2) in enumerate(positions):
                X[j][j2] = vec[v]
            mats.append(X)
        out[h] = mats
    return out


def wedderburn(A: al.GradedAlgebra) -> WedderburnReport:
    """Decompose A through the associated module of a minimal base ideal."""
    Ae, idx = al.base_algebra(A)
    ideal = en.minimal_graded_ideal(Ae)
    M = en.forget_grading(ideal.module)
    end_dim = len(en.hom_ungraded(M, M))
    if end_dim != 1:
        raise SplittingFails(
            f"minimal base ideal has endomorphism dimension {end_dim}; "
            "pick a larger field with enough roots of unity",
            end_dim=end_dim,
        )
    data = analyze(A, M)
    W, E = data.W, data.E
    I = data.inertia
    n, rem = divmod(W.mdim, I.subgroup.n)
    assert rem == 0, "associated module dimension must be a multiple of the inertia order"
    F, G = A.field, A.group
    # image of the left representation inside the D-linear left endomorphisms
    rep = en.left_rep(A, W)
    spaces = _left_degree_spaces(W, E)
    surjective = True
    for h in G.elements():
        img = [en._flat(rep.matrices[i]) for i in range(A.dim) if A.deg[i] == h]
        target = [en._flat(X) for X in spaces[h]]
        ri = la.rank(F, img) if img else 0
        rt = la.rank(F, target) if target else 0
        if ri != rt:
            surjective = False
    kernel_dim = len(rep.kernel)
    graded_simple, _ = al.graded_simple_algebra(A)
    model = None
    iso_rows = None
    if graded_simple:
        assert kernel_dim == 0, "graded simple algebra must act faithfully"
        model, iso_rows = _wedderburn_certificate(A, W, E, I, data.omega, n)
    return WedderburnReport(
        base_module=M,
        W=W,
        D=E,
        inertia=I,
        omega=data.omega,
        omega_class=data.omega_class,
        cohomology=data.cohomology,
        n=n,
        surjective=surjective,
        kernel_dim=kernel_dim,
        graded_simple=graded_simple,
        model=model,
        iso_rows=iso_rows,
    )


def _wedderburn_certificate(A, W, E, I: en.Inertia, omega: coh.Cocycle2, n: int):
    """Explicit graded isomorphism A -> M_n(F) (x) F^omega I.

    The model algebra has basis (i, j, h): matrix unit E_ij tensor u_h, with
    degree g_i h g_j^-1 (g_i the degrees of a homogeneous D-basis of W) and
    product (i,j,h)(k,l,h') = delta_jk omega(h,h') (i,l,hh').  The returned
    rows express each A basis element in that model basis; the map is
    verified to be a bijective degree-preserving algebra isomorphism by the
    caller's tests via the returned data.
    """
    F, G = A.field, A.group
    alg = E.as_algebra
    # rescale the End basis so the identity-degree element is the identity
    basis_of = {alg.deg[i]: i for i in range(alg.dim)}
    M_e = E.matrices[basis_of[G.e]]
    nu = next(row[r] for r, row in enumerate(M_e) if row[r])
    vmats = {}
    for hloc in range(I.subgroup.n):
        g = I.embedding(hloc)
        Mm = E.matrices[basis_of[g]]
        vmats[hloc] = [[ff.div(F, x, nu) for x in row] for row in Mm]
    # greedy homogeneous D-basis of W
    chosen: list[int] = []
    span: list = []
    for j in range(W.mdim):
        vec = _unit_vec(W.mdim, j)
        if not la.in_row_space(F, span, vec):
            chosen.append(j)
            for hloc in range(I.subgroup.n):
                span.append(la.vec_mat(F, vec, vmats[hloc]))
            span = la.row_space_echelon(F, span)
    assert len(chosen) == n, f"found a D-basis of size {len(chosen)}, expected {n}"
    gdeg = [W.mdeg[j] for j in chosen]
    # F-basis w_i v_h of W
    bstar = []
    for i in range(n):
        for hloc in range(I.subgroup.n):
            bstar.append(la.vec_mat(F, _unit_vec(W.mdim, chosen[i]), vmats[hloc]))
    binv = la.inv_matrix(F, bstar)
    assert binv is not None, "w_i v_h must form a basis of W"
    nI = I.subgroup.n
    # theta_{i j h} in W coordinates (row convention), via the bstar basis
    thetas = {}
    for i in range(n):
        for j in range(n):
            for hloc in range(nI):
                T = [[0] * (n * nI) for _ in range(n * nI)]
                for hp in range(nI):
                    # w_j v_hp -> omega(h, hp) w_i v_{h hp}
                    hh = I.subgroup.mul(hloc, hp)
                    c = omega.table[hloc][hp]
                    T[j * nI + hp][i * nI + hh] = c
                X = la.matmul(F, la.matmul(F, binv, T), bstar)
                thetas[(i, j, hloc)] = X
    keys = sorted(thetas)
    flat = [en._flat(thetas[k]) for k in keys]
    rep = en.left_rep(A, W)
    iso_rows = []
    for a in range(A.dim):
        c = la.coords_in_basis(F, flat, en._flat([list(r) for r in rep.matrices[a]]))
        assert c is not None, "left action escapes the D-linear span"
        iso_rows.append(tuple(c))
    # model algebra: M_n(F) (x) F^omega I with the induced grading
    deg = []
    for (i, j, hloc) in keys:
        deg.append(G.mul(G.mul(gdeg[i], I.embedding(hloc)), G.inv[gdeg[j]]))
    dim = len(keys)
    kpos = {k: t for t, k in enumerate(keys)}
    sc = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j, h) in keys:
        for (k, l, h2) in keys:
            if j == k:
                c = omega.table[h][h2]
                sc[kpos[(i, j, h)]][kpos[(k, l, h2)]][kpos[(i, l, I.subgroup.mul(h, h2))]] = c
    unit = [0] * dim
    for i in range(n):
        unit[kpos[(i, i, I.subgroup.e)]] = 1
    model = al.make_graded_algebra(F, G, deg, sc, unit)
    # verify: bijective, degree preserving, multiplicative
    assert la.rank(F, [list(r) for r in iso_rows]) == A.dim == dim, "certificate map is not bijective"
    for a in range(A.dim):
        for t, c in enumerate(iso_rows[a]):
            assert not (c and deg[t] != A.deg[a]), "certificate map is not degree preserving"
    for a in range(A.dim):
        for b in range(A.dim):
            prod = A.sc[a][b]
            lhs = [0] * dim
            for t, c in enumerate(prod):
                if c:
                    lhs = la.add_vec(F, lhs, la.scale_vec(F, c, list(iso_rows[t])))
            rhs = al.mul_vec(model, list(iso_rows[a]), list(iso_rows[b]))
            assert lhs == rhs, "certificate map is not multiplicative"
    return model, tuple(iso_rows)


# -- correspondence of simple modules ------------------------------------------------

@dataclass(frozen=True)
class CorrespondenceReport:
    twisted_simples: list
    images: list
    above: list
    matching: list  # indices into `above` for each image


def is_simple_ungraded(U: al.UngradedModule) -> bool:
    """Every nonzero vector generates; exhaustive under the scan cap."""
    if U.mdim == 0:
        return False
    A = U.algebra
    F = A.field
    if F.q**U.mdim > SKEW_SEARCH_CAP:
        raise CapExceededUndetermined("simplicity scan cap exceeded")
    for v in al._enumerate_vectors(F, U.mdim):
        vecs = []
        for i in range(A.dim):
            vecs.append(al.act_vec(U, _unit_vec(A.dim, i), list(v)))
        if len(la.row_space_echelon(F, vecs)) < U.mdim:
            return False
    return True


def lies_above(S: al.UngradedModule, M: al.UngradedModule) -> bool:
    """Does the restriction of S to the base algebra contain a copy of M?"""
    rest = en.restrict_to_base(S)
    return bool(en.hom_ungraded(M, rest))


def correspondence(
    A: al.GradedAlgebra,
    M: al.UngradedModule,
    alpha: coh.Cocycle2,
    Mtilde: al.UngradedModule,
    seed: int = 0,
) -> CorrespondenceReport:
    """The bijection U -> U (x) Mtilde onto the simple A-modules above M.

    A must be strongly graded; alpha a cocycle in the obstruction class of
    M; Mtilde a verified extension of M over the twist of A by alpha^-1.
    """
    if not al.classify(A).is_strongly_graded:
        raise NotStronglyGraded("the correspondence needs a strongly graded algebra")
    F, G = A.field, A.group
    TA = al.twist_algebra(coh.cocycle_inverse(alpha), A)
    if Mtilde.algebra != TA:
        raise NotBaseModule("Mtilde must be a module over the twist of A by alpha^-1")
    # the twist must restrict to M on the base algebra
    Ae, idx = al.base_algebra(A)
    for loc, i in enumerate(idx):
        assert Mtilde.act[i] == M.act[loc], "Mtilde does not extend M"
    TGA = al.twisted_group_algebra(alpha)
    simples = en.simple_modules(TGA, seed=seed)
    images = []
    for U, _mult in simples:
        m = U.mdim * Mtilde.mdim
        pos = lambda u, w: u * Mtilde.mdim + w
        act = []
        for a in range(A.dim):
            g = A.deg[a]
            MU = [list(r) for r in U.act[g]]
            MT = [list(r) for r in Mtilde.act[a]]
            rows = []
            for u in range(U.mdim):
                for w in range(Mtilde.mdim):
                    row = [0] * m
                    for u2 in range(U.mdim):
                        cu = MU[u][u2]
                        if cu:
                            for w2 in range(Mtilde.mdim):
                                ct = MT[w][w2]
                                if ct:
                                    row[pos(u2, w2)] = ff.mul(F, cu, ct)
                    rows.append(row)
            act.append(rows)
        X = al.make_ungraded_module(A, act)
        assert is_simple_ungraded(X), "image of a simple module must be simple"
        assert lies_above(X, M), "image must lie above the base module"
        images.append(X)
    # independent enumeration of the simple A-modules lying above M
    above = [S for S, _ in en.simple_modules(A, seed=seed) if lies_above(S, M)]
    # bijection check
    matching = []
    for X in images:
        hits = [t for t, S in enumerate(above) if S.mdim == X.mdim and en.hom_ungraded(X, S)]
        assert len(hits) == 1, "image must match exactly one module above M"
        matching.append(hits[0])
    assert len(set(matching)) == len(matching), "correspondence must be injective"
    assert len(matching) == len(above), "correspondence must be surjective"
    for a in range(len(images)):
        for b in range(a + 1, len(images)):
            assert not en.hom_ungraded(images[a], images[b]), "images must be pairwise distinct"
    return CorrespondenceReport(
        twisted_simples=[U for U, _ in simples],
        images=images,
        above=above,
        matching=matching,
    )


# -- monoid checks ----------------------------------------------------------------

def omega_monoid_checks(samples) -> dict:
    """Product, twist-equivariance, surjectivity and injectivity checks.

    samples: list of (A, M) with invariant absolutely simple base modules,
    all over one group and field.
    """
    assert samples
    G = samples[0][0].group
    F = samples[0][0].field
    H = coh.h2(G, F)
    datas = [analyze(A, M) for A, M in samples]
    report = {"product": [], "twist": [], "surjectivity": [], "injectivity": None}
    for i, (A1, M1) in enumerate(samples):
        for j, (A2, M2) in enumerate(samples):
            W12 = al.module_product(datas[i].W, datas[j].W)
            E12 = en.end_graded(W12)
            ext = en.extract_twisted_cocycle(E12)
            assert len(ext.embedding.map) == G.n, "product lost invariance"
            cls = coh.class_of(H, _transport_to_group(ext, G, F))
            expect = coh.coords_add(H, _full_class(H, datas[i]), _full_class(H, datas[j]))
            report["product"].append((i, j, cls.residues, expect.residues, cls == expect))
    base = datas[0]
    for cc in coh.all_classes(H):
        alpha = coh.representative(H, cc)
        Wt = al.twist_module(alpha, base.W)
        Et = en.end_graded(Wt)
        ext = en.extract_twisted_cocycle(Et)
        cls = coh.class_of(H, _transport_to_group(ext, G, F))
        expect = coh.coords_add(H, cc, _full_class(H, base))
        report["twist"].append((cc.residues, cls.residues, expect.residues, cls == expect))
        # surjectivity recipe: to reach target cc, twist by cc - omega
        target = cc
        shift = coh.coords_add(H, target, coh.coords_neg(H, _full_class(H, base)))
        alpha2 = coh.representative(H, shift)
        W2 = al.twist_module(alpha2, base.W)
        ext2 = en.extract_twisted_cocycle(en.end_graded(W2))
        cls2 = coh.class_of(H, _transport_to_group(ext2, G, F))
        report["surjectivity"].append((target.residues, cls2.residues, cls2 == target))
    return report


def _full_class(H: coh.CohomologyGroup, data: PipelineData) -> coh.ClassCoords:
    """Class of an invariant instance inside H^2 of the full group."""
    return coh.class_of(H, _transport_cocycle_to_group(data.omega, H.group))


def _transport_to_group(ext: en.ExtractedCocycle, G: FiniteGroup, F) -> coh.Cocycle2:
    return _transport_cocycle_to_group(ext.cocycle, G)


def _transport_cocycle_to_group(c: coh.Cocycle2, G: FiniteGroup) -> coh.Cocycle2:
    """Identify a cocycle on a full-support subgroup copy with one on G."""
    H = c.group
    assert H.n == G.n
    # the subgroup copy enumerates the same elements in sorted order
    table = [[c.table[g][h] for h in range(G.n)] for g in range(G.n)]
    return coh.cocycle_from_table(G, c.field, table)
