"""Finite groups as explicit multiplication tables.

Elements are indices 0..n-1 into a label list; `table[i][j]` is the index
of the product.  Constructors validate everything exhaustively (the order
cap 64 keeps the O(n^3) associativity scan trivial).  All values are
immutable and all operations pure.

Canonical element orderings of the builtin groups:
  cyclic(n)        0, 1, ..., n-1 (residues)
  klein4           e, a, b, ab
  dihedral(n)      r^0..r^(n-1), s, sr, ..., sr^(n-1)   (order 2n)
  quaternion8      1, -1, i, -i, j, -j, k, -k
  symmetric(3)     permutations of (0,1,2) in lexicographic one-line order
  direct products  lexicographic pairs (left index major)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .errors import (
    NoIdentity,
    NotAHomomorphism,
    NotAssociative,
    NotLatinSquare,
    NotNormal,
    NotSurjective,
    OrderTooLarge,
    OrderTooLargeForIsoSearch,
    TargetMismatch,
)

ORDER_CAP = 64
ISO_CAP = 16


@dataclass(frozen=True)
class FiniteGroup:
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    e: int
    inv: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self):
        return range(self.n)

    def __repr__(self):
        return f"FiniteGroup(n={self.n}, labels={self.labels})"


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.map[g]

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.n

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.n


def make_hom(source: FiniteGroup, target: FiniteGroup, mapping) -> GroupHom:
    mapping = tuple(mapping)
    if mapping[source.e] != target.e:
        raise NotAHomomorphism("identity not sent to identity")
    for a in source.elements():
        for b in source.elements():
            if mapping[source.mul(a, b)] != target.mul(mapping[a], mapping[b]):
                raise NotAHomomorphism(f"fails at pair ({a}, {b})")
    return GroupHom(source, target, mapping)


def group_from_table(labels, table) -> FiniteGroup:
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    if n > ORDER_CAP:
        raise OrderTooLarge(f"order {n} exceeds the cap {ORDER_CAP}")
    try:
        t = np.asarray(table, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise NotLatinSquare(f"table is not rectangular: {exc}") from None
    if t.shape != (n, n) or (n and (t.min() < 0 or t.max() >= n)):
        raise NotLatinSquare("table is not an n x n array over element indices")
    for i in range(n):
        if len(set(t[i])) != n or len(set(t[:, i])) != n:
            raise NotLatinSquare(f"row or column {i} repeats an element")
    # two-sided identity
    e = None
    for i in range(n):
        if all(t[i][j] == j for j in range(n)) and all(t[j][i] == j for j in range(n)):
            e = i
            break
    if e is None:
        raise NoIdentity("no two-sided identity")
    # (gh)k == g(hk) for all triples, via fancy indexing
    lhs = t[t, :]  # lhs[g,h,k] = t[t[g,h],k]
    rhs = t[:, t]  # rhs[g,h,k] = t[g,t[h,k]]
    if not np.array_equal(lhs, rhs):
        g, h, k = np.argwhere(lhs != rhs)[0]
        raise NotAssociative(f"associativity fails at triple ({g}, {h}, {k})")
    inv = [None] * n
    for g in range(n):
        for h in range(n):
            if t[g][h] == e and t[h][g] == e:
                inv[g] = h
                break
    assert all(v is not None for v in inv)  # Latin square + identity force inverses
    return FiniteGroup(labels=labels, table=tuple(tuple(int(x) for x in row) for row in t), e=e, inv=tuple(inv))


# -- builtin constructors ----------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    if n > ORDER_CAP:
        raise OrderTooLarge(f"order {n} exceeds the cap {ORDER_CAP}")
    labels = [str(i) for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_from_table(labels, table)


def klein4() -> FiniteGroup:
    labels = ["e", "a", "b", "ab"]
    # indices as bit pairs: e=00, a=01, b=10, ab=11; product = xor
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return group_from_table(labels, table)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: rotations r^i then reflections s r^i."""
    if 2 * n > ORDER_CAP:
        raise OrderTooLarge(f"order {2 * n} exceeds the cap {ORDER_CAP}")
    labels = [f"r^{i}" if i else "e" for i in range(n)] + [f"sr^{i}" if i else "s" for i in range(n)]

    def mul(a, b):
        fa, ia = divmod(a, n)
        fb, ib = divmod(b, n)
        # s r^i s = r^-i
        if fa == 0:
            return fb * n + ((ib + ia) % n if fb == 0 else (ib - ia) % n)
        return (1 - fb) * n + ((ib - ia) % n if fb == 1 else (ia + ib) % n)

    # mul above: (s^fa r^ia)(s^fb r^ib) = s^(fa+fb) r^(±ia+ib)
    table = [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)]
    return group_from_table(labels, table)


def quaternion8() -> FiniteGroup:
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # signed units: value = (symbol, sign); symbols 1,i,j,k multiply by the
    # quaternion rules i^2=j^2=k^2=ijk=-1.
    sym = {0: "1", 2: "i", 4: "j", 6: "k"}
    rules = {
        ("1", "1"): ("1", 1), ("1", "i"): ("i", 1), ("1", "j"): ("j", 1), ("1", "k"): ("k", 1),
        ("i", "1"): ("i", 1), ("j", "1"): ("j", 1), ("k", "1"): ("k", 1),
        ("i", "i"): ("1", -1), ("j", "j"): ("1", -1), ("k", "k"): ("1", -1),
        ("i", "j"): ("k", 1), ("j", "i"): ("k", -1),
        ("j", "k"): ("i", 1), ("k", "j"): ("i", -1),
        ("k", "i"): ("j", 1), ("i", "k"): ("j", -1),
    }
    base = {"1": 0, "i": 2, "j": 4, "k": 6}

    def mul(a, b):
        sa, pa = sym[a & ~1], 1 - 2 * (a & 1)
        sb, pb = sym[b & ~1], 1 - 2 * (b & 1)
        s, p = rules[(sa, sb)]
        return base[s] + (0 if pa * pb * p == 1 else 1)

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return group_from_table(labels, table)


def symmetric3() -> FiniteGroup:
    perms = sorted(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    labels = ["".join(str(x) for x in p) for p in perms]

    def mul(a, b):
        pa, pb = perms[a], perms[b]
        return idx[tuple(pa[pb[i]] for i in range(3))]

    table = [[mul(a, b) for b in range(6)] for a in range(6)]
    return group_from_table(labels, table)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n = G.n * H.n
    if n > ORDER_CAP:
        raise OrderTooLarge(f"order {n} exceeds the cap {ORDER_CAP}")
    labels = []
    table = []
    pairs = [(g, h) for g in G.elements() for h in H.elements()]
    for g, h in pairs:
        labels.append(f"({G.labels[g]},{H.labels[h]})")
    pos = {p: i for i, p in enumerate(pairs)}
    for g, h in pairs:
        table.append([pos[(G.mul(g, g2), H.mul(h, h2))] for g2, h2 in pairs])
    return group_from_table(labels, table)


def builtin(kind: str, **params) -> FiniteGroup:
    if kind == "cyclic":
        return cyclic(int(params["n"]))
    if kind == "klein4":
        return klein4()
    if kind == "dihedral":
        return dihedral(int(params["n"]))
    if kind == "quaternion8":
        return quaternion8()
    if kind in ("symmetric", "symmetric3"):
        if kind == "symmetric" and int(params.get("n", 3)) != 3:
            raise OrderTooLarge("only symmetric(3) is built in")
        return symmetric3()
    if kind == "direct_product":
        factors = params["factors"]
        G = factors[0]
        for H in factors[1:]:
            G = direct_product(G, H)
        return G
    raise NoIdentity(f"unknown builtin group kind {kind!r}")


# -- constructions -------------------------------------------------------

def subgroup(G: FiniteGroup, generators) -> tuple[FiniteGroup, GroupHom]:
    """Closure of a generator set; returns the subgroup and its embedding."""
    elems = {G.e}
    frontier = [G.e]
    gens = sorted(set(int(g) for g in generators))
    while frontier:
        x = frontier.pop()
        for g in gens:
            for y in (G.mul(x, g), G.mul(g, x)):
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
    order = sorted(elems)
    pos = {g: i for i, g in enumerate(order)}
    labels = [G.labels[g] for g in order]
    table = [[pos[G.mul(a, b)] for b in order] for a in order]
    H = group_from_table(labels, table)
    return H, make_hom(H, G, tuple(order))


def is_subgroup_set(G: FiniteGroup, elems) -> bool:
    s = set(elems)
    if G.e not in s:
        return False
    return all(G.mul(a, b) in s for a in s for b in s)


def is_normal(G: FiniteGroup, elems) -> bool:
    s = set(elems)
    return all(G.mul(G.mul(g, x), G.inv[g]) in s for g in G.elements() for x in s)


def quotient(G: FiniteGroup, normal_elems) -> tuple[FiniteGroup, GroupHom]:
    """Coset group G/N and the projection; N given by its element indices."""
    N = sorted(set(int(x) for x in normal_elems))
    if not is_subgroup_set(G, N):
        raise NotNormal("given set is not a subgroup")
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    # coset representative = smallest element index
    cosets = []
    seen = set()
    for g in G.elements():
        if g in seen:
            continue
        coset = sorted(G.mul(g, x) for x in N)
        cosets.append(coset)
        seen.update(coset)
    cosets.sort(key=lambda c: c[0])
    rep_of = {}
    for i, coset in enumerate(cosets):
        for x in coset:
            rep_of[x] = i
    labels = [f"[{G.labels[c[0]]}]" for c in cosets]
    table = [[rep_of[G.mul(cosets[i][0], cosets[j][0])] for j in range(len(cosets))] for i in range(len(cosets))]
    Q = group_from_table(labels, table)
    proj = make_hom(G, Q, tuple(rep_of[g] for g in G.elements()))
    return Q, proj


def pullback(pi: GroupHom, pi2: GroupHom) -> tuple[FiniteGroup, GroupHom, GroupHom]:
    """Fiber product {(x, y) : pi(x) = pi2(y)} with its two projections."""
    if pi.target is not pi2.target and pi.target != pi2.target:
        raise TargetMismatch("projections must share a target")
    if not pi.is_surjective() or not pi2.is_surjective():
        raise NotSurjective("pullback requires surjective projections")
    A, B = pi.source, pi2.source
    pairs = [(a, b) for a in A.elements() for b in B.elements() if pi(a) == pi2(b)]
    pos = {p: i for i, p in enumerate(pairs)}
    labels = [f"({A.labels[a]},{B.labels[b]})" for a, b in pairs]
    table = [[pos[(A.mul(a, a2), B.mul(b, b2))] for a2, b2 in pairs] for a, b in pairs]
    P = group_from_table(labels, table)
    pr1 = make_hom(P, A, tuple(a for a, _ in pairs))
    pr2 = make_hom(P, B, tuple(b for _, b in pairs))
    return P, pr1, pr2


def inner_aut(G: FiniteGroup, g: int) -> tuple[int, ...]:
    """The permutation x -> g x g^-1 of element indices."""
    gi = G.inv[g]
    return tuple(G.mul(G.mul(g, x), gi) for x in G.elements())


def element_order(G: FiniteGroup, g: int) -> int:
    n, x = 1, g
    while x != G.e:
        x = G.mul(x, g)
        n += 1
    return n


def center(G: FiniteGroup) -> list[int]:
    return [g for g in G.elements() if all(G.mul(g, h) == G.mul(h, g) for h in G.elements())]


def is_abelian(G: FiniteGroup) -> bool:
    return all(G.mul(a, b) == G.mul(b, a) for a in G.elements() for b in G.elements())


def generating_set(G: FiniteGroup) -> list[int]:
    """A small generating set found greedily (deterministic)."""
    gens: list[int] = []
    got = set(subgroup(G, gens)[1].map)
    for g in G.elements():
        if g not in got:
            gens.append(g)
            got = set(subgroup(G, gens)[1].map)
            if len(got) == G.n:
                break
    return gens


def iso_search(G: FiniteGroup, H: FiniteGroup):
    """Backtracking isomorphism search; None when no isomorphism exists."""
    if G.n != H.n:
        return None
    if G.n > ISO_CAP:
        raise OrderTooLargeForIsoSearch(f"order {G.n} exceeds the cap {ISO_CAP}")
    gens = generating_set(G)
    if not gens:  # trivial group
        return make_hom(G, H, (H.e,))

    orders_G = [element_order(G, g) for g in G.elements()]
    orders_H = [element_order(H, h) for h in H.elements()]
    if sorted(orders_G) != sorted(orders_H):
        return None

    def close(images):
        # extend gen -> image to the full map, or None on clash
        mapping = {G.e: H.e}
        frontier = [G.e]
        while frontier:
            x = frontier.pop()
            for g, hg in zip(gens, images):
                y = G.mul(x, g)
                hy = H.mul(mapping[x], hg)
                if y in mapping:
                    if mapping[y] != hy:
                        return None
                else:
                    mapping[y] = hy
                    frontier.append(y)
        if len(mapping) != G.n or len(set(mapping.values())) != G.n:
            return None
        full = tuple(mapping[g] for g in G.elements())
        for a in G.elements():
            for b in G.elements():
                if full[G.mul(a, b)] != H.mul(full[a], full[b]):
                    return None
        return full

    def backtrack(i, images):
        if i == len(gens):
            full = close(images)
            return None if full is None else make_hom(G, H, full)
        for h in H.elements():
            if orders_H[h] != orders_G[gens[i]]:
                continue
            res = backtrack(i + 1, images + [h])
            if res is not None:
                return res
        return None

    return backtrack(0, [])
