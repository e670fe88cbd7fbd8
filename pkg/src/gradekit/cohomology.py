"""Normalized 2-cocycles with values in GF(q)* and the group H^2(G, F*).

The unit group of a finite field is cyclic of order m = q-1, so a cocycle
table transports through dlog to a vector over Z_m indexed by the pairs
(g, h) with g, h != e (normalization pins the rest to 1).  The cocycle
identity and the coboundary map are then linear over Z_m, and everything
— Z^2, B^2, the quotient structure, class coordinates, witness solves —
reduces to integer Smith normal form of the lifted systems augmented with
m * identity (see intlin.py).

All cocycles are stored normalized: alpha(e, .) = alpha(., e) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fields as ff
from . import intlin
from .errors import (
    GroupOrFieldMismatch,
    IncompatiblePullback,
    NotACocycle,
    NotSurjective,
    ZeroEntry,
    ZeroValue,
)
from .groups import FiniteGroup, GroupHom, klein4


@dataclass(frozen=True)
class Cocycle2:
    """A normalized 2-cocycle table: table[g][h] = alpha(g, h) in F*."""

    group: FiniteGroup
    field: "ff.FieldSpec"
    table: tuple[tuple[int, ...], ...]

    def __call__(self, g: int, h: int) -> int:
        return self.table[g][h]


@dataclass(frozen=True)
class ClassCoords:
    """Coordinates of a cohomology class w.r.t. the computed generators."""

    residues: tuple[int, ...]

    def is_trivial(self) -> bool:
        return not any(self.residues)


@dataclass(frozen=True)
class CohomologyGroup:
    group: FiniteGroup
    field: "ff.FieldSpec"
    invariant_factors: tuple[int, ...]
    generator_cocycles: tuple[Cocycle2, ...]
    order: int
    # solve context: full new basis of the cocycle lattice (rows), full
    # diagonal (d_i for every basis row), and the positions of the rows
    # whose d_i > 1 (those are the generator classes).
    _basis: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    _diag: tuple[int, ...] = field(repr=False, default=())
    _positions: tuple[int, ...] = field(repr=False, default=())


# -- raw table checks -----------------------------------------------------

def is_cocycle(G: FiniteGroup, F, table):
    """Exhaustive triple check; returns (ok, first violating triple or None)."""
    for g in G.elements():
        for h in G.elements():
            if table[g][h] == 0:
                raise ZeroEntry(f"zero entry at ({g}, {h})")
    for g in G.elements():
        for h in G.elements():
            gh = G.mul(g, h)
            for k in G.elements():
                lhs = ff.mul(F, table[g][h], table[gh][k])
                rhs = ff.mul(F, table[h][k], table[g][G.mul(h, k)])
                if lhs != rhs:
                    return False, (g, h, k)
    return True, None


def is_normalized(G: FiniteGroup, table) -> bool:
    e = G.e
    return all(table[e][g] == 1 and table[g][e] == 1 for g in G.elements())


def normalize(G: FiniteGroup, F, table):
    """Cohomologous normalized cocycle plus the 1-cochain used.

    Any cocycle has alpha(e, .) = alpha(., e) = alpha(e, e) = mu; dividing
    by the coboundary of the constant cochain lambda = mu^-1 normalizes it.
    Returns (Cocycle2, lambda) with new = old * d(lambda).
    """
    ok, bad = is_cocycle(G, F, table)
    if not ok:
        raise NotACocycle(f"cocycle identity fails at triple {bad}")
    mu = table[G.e][G.e]
    lam = tuple(ff.inv(F, mu) for _ in G.elements())
    new = tuple(
        tuple(ff.mul(F, table[g][h], ff.inv(F, mu)) for h in G.elements()) for g in G.elements()
    )
    return Cocycle2(group=G, field=F, table=new), lam


def cocycle_from_table(G: FiniteGroup, F, table) -> Cocycle2:
    """Validated, auto-normalized cocycle from a raw table."""
    c, _ = normalize(G, F, table)
    return c


def trivial_cocycle(G: FiniteGroup, F) -> Cocycle2:
    one = tuple(tuple(1 for _ in G.elements()) for _ in G.elements())
    return Cocycle2(group=G, field=F, table=one)


def coboundary(G: FiniteGroup, F, lam) -> Cocycle2:
    """(g, h) -> lambda(g) lambda(h) lambda(gh)^-1 for lambda with lambda(e)=1."""
    lam = list(lam)
    if any(v == 0 for v in lam):
        raise ZeroValue("1-cochain takes the value zero")
    if lam[G.e] != 1:
        raise ZeroValue("1-cochain must send the identity to 1")
    table = tuple(
        tuple(
            ff.mul(F, ff.mul(F, lam[g], lam[h]), ff.inv(F, lam[G.mul(g, h)]))
            for h in G.elements()
        )
        for g in G.elements()
    )
    return Cocycle2(group=G, field=F, table=table)


def _same_context(a: Cocycle2, b: Cocycle2):
    if a.group != b.group or a.field != b.field:
        raise GroupOrFieldMismatch("cocycles live over different groups or fields")


def cocycle_product(a: Cocycle2, b: Cocycle2) -> Cocycle2:
    _same_context(a, b)
    G, F = a.group, a.field
    table = tuple(
        tuple(ff.mul(F, a.table[g][h], b.table[g][h]) for h in G.elements()) for g in G.elements()
    )
    return Cocycle2(group=G, field=F, table=table)


def cocycle_inverse(a: Cocycle2) -> Cocycle2:
    G, F = a.group, a.field
    table = tuple(tuple(ff.inv(F, a.table[g][h]) for h in G.elements()) for g in G.elements())
    return Cocycle2(group=G, field=F, table=table)


def cocycle_power(a: Cocycle2, e: int) -> Cocycle2:
    out = trivial_cocycle(a.group, a.field)
    step = a if e >= 0 else cocycle_inverse(a)
    for _ in range(abs(e)):
        out = cocycle_product(out, step)
    return out


def inflate(a: Cocycle2, proj: GroupHom) -> Cocycle2:
    """Inflation along a surjection proj: Gamma -> G; result lives on Gamma."""
    if proj.target != a.group:
        raise GroupOrFieldMismatch("projection target differs from the cocycle's group")
    if not proj.is_surjective():
        raise NotSurjective("inflation needs a surjective projection")
    Gamma = proj.source
    table = tuple(
        tuple(a.table[proj(x)][proj(y)] for y in Gamma.elements()) for x in Gamma.elements()
    )
    return Cocycle2(group=Gamma, field=a.field, table=table)


def restrict(a: Cocycle2, emb: GroupHom) -> Cocycle2:
    """Restriction along an embedding emb: N -> Gamma; result lives on N."""
    if emb.target != a.group:
        raise GroupOrFieldMismatch("embedding target differs from the cocycle's group")
    N = emb.source
    table = tuple(tuple(a.table[emb(x)][emb(y)] for y in N.elements()) for x in N.elements())
    return Cocycle2(group=N, field=a.field, table=table)


def transport(a: Cocycle2, iso: GroupHom) -> Cocycle2:
    """Push a cocycle along a group isomorphism."""
    if iso.source != a.group or not (iso.is_injective() and iso.is_surjective()):
        raise GroupOrFieldMismatch("transport needs an isomorphism from the cocycle's group")
    H = iso.target
    inv = [0] * H.n
    for g in range(H.n):
        inv[iso(g)] = g
    table = tuple(
        tuple(a.table[inv[x]][inv[y]] for y in H.elements()) for x in H.elements()
    )
    return Cocycle2(group=H, field=a.field, table=table)


def pullback_cocycle(c: Cocycle2, c2: Cocycle2, P: FiniteGroup, pr1: GroupHom, pr2: GroupHom) -> Cocycle2:
    """(c x c')((x1,y1),(x2,y2)) = c(x1,x2) c'(y1,y2) on the fiber product."""
    if c.field != c2.field:
        raise GroupOrFieldMismatch("cocycles over different fields")
    if pr1.source != P or pr2.source != P or pr1.target != c.group or pr2.target != c2.group:
        raise IncompatiblePullback("projections do not match the cocycles")
    F = c.field
    table = tuple(
        tuple(
            ff.mul(F, c.table[pr1(x)][pr1(y)], c2.table[pr2(x)][pr2(y)])
            for y in P.elements()
        )
        for x in P.elements()
    )
    return Cocycle2(group=P, field=F, table=table)


# -- dlog transport --------------------------------------------------------

def _nz(G: FiniteGroup):
    return [g for g in G.elements() if g != G.e]


def _pair_index(G: FiniteGroup):
    nz = _nz(G)
    pairs = [(g, h) for g in nz for h in nz]
    return nz, {p: i for i, p in enumerate(pairs)}, pairs


def _to_vector(a: Cocycle2):
    """Dlog exponent vector of the free (non-identity) entries."""
    G, F = a.group, a.field
    _, pos, pairs = _pair_index(G)
    return [ff.dlog(F, a.table[g][h]) for (g, h) in pairs]


def _from_vector(G: FiniteGroup, F, vec) -> Cocycle2:
    _, pos, pairs = _pair_index(G)
    m = F.q - 1
    table = [[1] * G.n for _ in range(G.n)]
    for (g, h), i in pos.items():
        table[g][h] = ff.from_dlog(F, vec[i] % m) if m else 1
    return cocycle_from_table(G, F, table)


def _condition_rows(G: FiniteGroup):
    """Sparse rows of the linearized cocycle identity over the free entries."""
    nz, pos, _ = _pair_index(G)
    rows = []
    for g in nz:
        for h in nz:
            gh = G.mul(g, h)
            for k in nz:
                hk = G.mul(h, k)
                row: dict[int, int] = {}

                def bump(a, b, s):
                    if a != G.e and b != G.e:
                        i = pos[(a, b)]
                        row[i] = row.get(i, 0) + s

                bump(g, h, 1)
                bump(gh, k, 1)
                bump(h, k, -1)
                bump(g, hk, -1)
                if row and any(row.values()):
                    rows.append(row)
    # dedupe sparse rows
    seen = set()
    out = []
    for row in rows:
        key = tuple(sorted((k, v) for k, v in row.items() if v))
        if key and key not in seen:
            seen.add(key)
            out.append(dict(key))
    return out


def _coboundary_matrix(G: FiniteGroup):
    """Dense matrix (rows = pairs, cols = lambda entries) of the coboundary map."""
    nz, pos, pairs = _pair_index(G)
    lpos = {g: i for i, g in enumerate(nz)}
    A = [[0] * len(nz) for _ in pairs]
    for (g, h), i in pos.items():
        A[i][lpos[g]] += 1
        A[i][lpos[h]] += 1
        gh = G.mul(g, h)
        if gh != G.e:
            A[i][lpos[gh]] -= 1
    return A


def h2(G: FiniteGroup, F) -> CohomologyGroup:
    """H^2(G, F*) with trivial action: invariant factors plus generators."""
    m = F.q - 1
    if m == 1:
        return CohomologyGroup(
            group=G, field=F, invariant_factors=(), generator_cocycles=(), order=1
        )
    nz, pos, pairs = _pair_index(G)
    D = len(pairs)
    if D == 0:  # trivial group
        return CohomologyGroup(
            group=G, field=F, invariant_factors=(), generator_cocycles=(), order=1
        )
    # constraint rows -> reduced row lattice (with m*I) -> kernel lattice Z^2
    sparse = _condition_rows(G)
    dense = []
    for row in sparse:
        r = [0] * D
        for i, v in row.items():
            r[i] = v
        dense.append(r)
    H = intlin.row_lattice_basis(dense, D, modulus=m)
    kgens = intlin.kernel_mod(H, m, D)
    kbasis = intlin.row_lattice_basis(kgens, D)
    assert len(kbasis) == D, "cocycle lattice must have full rank (contains m*I)"
    # coboundary lattice B^2 (+ m*I)
    cb = _coboundary_matrix(G)
    bgens = [[cb[i][j] for i in range(D)] for j in range(len(nz))]  # rows = images of e_g
    bbasis = intlin.row_lattice_basis(bgens, D, modulus=m)
    assert len(bbasis) == D
    diag, newbasis = intlin.quotient_structure(kbasis, bbasis)
    positions = [i for i, d in enumerate(diag) if d > 1]
    factors = tuple(diag[i] for i in positions)
    gens = tuple(_from_vector(G, F, newbasis[i]) for i in positions)
    order = 1
    for d in factors:
        order *= d
    return CohomologyGroup(
        group=G,
        field=F,
        invariant_factors=factors,
        generator_cocycles=gens,
        order=order,
        _basis=tuple(tuple(r) for r in newbasis),
        _diag=tuple(diag),
        _positions=tuple(positions),
    )


def class_of(H: CohomologyGroup, a: Cocycle2) -> ClassCoords:
    """Coordinates of [a] w.r.t. the generator classes of H."""
    if a.group != H.group or a.field != H.field:
        raise GroupOrFieldMismatch("cocycle does not match the cohomology group")
    ok, bad = is_cocycle(a.group, a.field, a.table)
    if not ok:
        raise NotACocycle(f"cocycle identity fails at triple {bad}")
    if not H.invariant_factors:
        return ClassCoords(residues=())
    vec = _to_vector(a)
    coords = intlin.express_in_basis([list(r) for r in H._basis], vec)
    assert coords is not None, "a valid cocycle lies in the cocycle lattice"
    res = tuple(coords[i] % H._diag[i] for i in H._positions)
    return ClassCoords(residues=res)


def coords_add(H: CohomologyGroup, a: ClassCoords, b: ClassCoords) -> ClassCoords:
    return ClassCoords(
        residues=tuple(
            (x + y) % d for x, y, d in zip(a.residues, b.residues, H.invariant_factors)
        )
    )


def coords_neg(H: CohomologyGroup, a: ClassCoords) -> ClassCoords:
    return ClassCoords(
        residues=tuple((-x) % d for x, d in zip(a.residues, H.invariant_factors))
    )


def coords_order(H: CohomologyGroup, a: ClassCoords) -> int:
    from math import gcd

    o = 1
    for x, d in zip(a.residues, H.invariant_factors):
        o_i = d // gcd(x, d) if x else 1
        o = o * o_i // gcd(o, o_i)
    return o


def representative(H: CohomologyGroup, coords: ClassCoords) -> Cocycle2:
    """Deterministic cocycle representative: product of generator powers."""
    out = trivial_cocycle(H.group, H.field)
    for gen, r in zip(H.generator_cocycles, coords.residues):
        out = cocycle_product(out, cocycle_power(gen, r))
    return out


def all_classes(H: CohomologyGroup) -> list[ClassCoords]:
    from itertools import product as iproduct

    return [ClassCoords(residues=t) for t in iproduct(*(range(d) for d in H.invariant_factors))]


def cohomologous(a: Cocycle2, b: Cocycle2):
    """A 1-cochain witness lambda with b = a * d(lambda), or None."""
    _same_context(a, b)
    G, F = a.group, a.field
    m = F.q - 1
    if m == 1:
        return tuple(1 for _ in G.elements())
    nz, pos, pairs = _pair_index(G)
    t = [
        (ff.dlog(F, b.table[g][h]) - ff.dlog(F, a.table[g][h])) % m for (g, h) in pairs
    ]
    A = _coboundary_matrix(G)
    sol = intlin.solve_mod(A, t, m)
    if sol is None:
        return None
    lam = [1] * G.n
    for i, g in enumerate(nz):
        lam[g] = ff.from_dlog(F, sol[i])
    witness = tuple(lam)
    assert cocycle_product(a, coboundary(G, F, witness)).table == b.table
    return witness


# -- builtins ---------------------------------------------------------------

def klein4_pauli(F) -> Cocycle2:
    """alpha(a^i b^j, a^k b^l) = (-1)^(j*k) on klein4 (element index = i + 2j)."""
    G = klein4()
    minus = ff.neg(F, 1)
    table = [
        [minus if ((g >> 1) & 1) * (h & 1) else 1 for h in G.elements()]
        for g in G.elements()
    ]
    return cocycle_from_table(G, F, table)


def builtin_cocycle(name: str, F) -> Cocycle2:
    if name == "klein4-pauli":
        return klein4_pauli(F)
    raise ZeroValue(f"unknown builtin cocycle {name!r}")
