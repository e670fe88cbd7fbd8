"""Independent brute-force oracles used by the test suite.

These deliberately re-derive everything from first principles (exhaustive
enumeration, backtracking, direct homomorphism scans) so they share no
solver code with the package paths they check.
"""

from __future__ import annotations

from itertools import product as iproduct

import numpy as np

import gradekit.fields as ff


def _nonidentity(G):
    return [g for g in G.elements() if g != G.e]


def _pairs(G):
    nz = _nonidentity(G)
    pairs = [(g, h) for g in nz for h in nz]
    return nz, pairs, {p: i for i, p in enumerate(pairs)}


def _condition_rows(G):
    """Linearized cocycle identity over the free entries (additive form)."""
    nz, pairs, pos = _pairs(G)
    rows = []
    for g in nz:
        for h in nz:
            gh = G.mul(g, h)
            for k in nz:
                hk = G.mul(h, k)
                row = {}
                for (a, b), s in (((g, h), 1), ((gh, k), 1), ((h, k), -1), ((g, hk), -1)):
                    if a != G.e and b != G.e:
                        i = pos[(a, b)]
                        row[i] = row.get(i, 0) + s
                row = {i: v for i, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


def coboundary_exponents(G, m):
    """All distinct coboundary exponent vectors (as a set of tuples)."""
    nz, pairs, pos = _pairs(G)
    out = set()
    for lam in iproduct(range(m), repeat=len(nz)):
        lam_of = dict(zip(nz, lam))
        lam_of[G.e] = 0
        vec = tuple(
            (lam_of[g] + lam_of[h] - lam_of[G.mul(g, h)]) % m for (g, h) in pairs
        )
        out.add(vec)
    return out


def cocycle_exponents_full_enum(G, m):
    """All cocycle exponent vectors by scanning every normalized table."""
    nz, pairs, pos = _pairs(G)
    D = len(pairs)
    rows = _condition_rows(G)
    C = np.zeros((len(rows), D), dtype=np.int64)
    for r, row in enumerate(rows):
        for i, v in row.items():
            C[r, i] = v
    total = m**D
    grids = np.indices((m,) * D).reshape(D, total).T  # every table, one per row
    resid = (grids.astype(np.float64) @ C.T.astype(np.float64)).astype(np.int64) % m
    good = np.all(resid == 0, axis=1)
    return [tuple(int(x) for x in v) for v in grids[good]]


def cocycle_exponents_backtracking(G, m):
    """All cocycle exponent vectors by exhaustive assignment with pruning.

    Logically the same enumeration as the full scan: branches are cut only
    when an already-violated condition proves every completion invalid, and
    unit-coefficient conditions force unique values.
    """
    nz, pairs, pos = _pairs(G)
    D = len(pairs)
    rows = _condition_rows(G)
    by_var = [[] for _ in range(D)]
    for row in rows:
        for i in row:
            by_var[i].append(row)
    out = []
    assign = [None] * D

    def propagate(queue):
        forced = []
        while queue:
            row = queue.pop()
            unknown = [i for i in row if assign[i] is None]
            s = sum(row[i] * assign[i] for i in row if assign[i] is not None)
            if not unknown:
                if s % m != 0:
                    for i in forced:
                        assign[i] = None
                    return None
                continue
            if len(unknown) == 1:
                (i,) = unknown
                c = row[i]
                # solve c * x = -s (mod m); propagate only unit coefficients
                if c % m in (1, m - 1):
                    x = (-s * (1 if c % m == 1 else -1)) % m
                    assign[i] = x
                    forced.append(i)
                    queue.extend(by_var[i])
        return forced

    def dfs(i0):
        while i0 < D and assign[i0] is not None:
            i0 += 1
        if i0 == D:
            for row in rows:
                if sum(row[i] * assign[i] for i in row) % m != 0:
                    return
            out.append(tuple(assign))
            return
        for val in range(m):
            assign[i0] = val
            forced = propagate(list(by_var[i0]))
            if forced is not None:
                dfs(i0 + 1)
                for i in forced:
                    assign[i] = None
            assign[i0] = None

    dfs(0)
    return out


def abelian_invariants_from_census(order, census):
    """The invariant factors of the abelian group with this order census."""
    if order == 1:
        return ()

    def chains(o, cap):
        # all divisor chains d_1 | d_2 | ... | d_r (each > 1) with product o
        if o == 1:
            yield ()
            return
        for d in range(2, min(o, cap) + 1):
            if o % d == 0:
                for rest in chains(o // d, d):
                    yield rest + (d,)

    from math import gcd

    def census_of(factors):
        out = {}
        for elem in iproduct(*(range(d) for d in factors)):
            o = 1
            for x, d in zip(elem, factors):
                oi = d // gcd(x, d) if x else 1
                o = o * oi // gcd(o, oi)
            out[o] = out.get(o, 0) + 1
        return out

    for factors in chains(order, order):
        if census_of(factors) == census:
            return factors
    raise AssertionError(f"no abelian group of order {order} matches census {census}")


def h2_oracle(G, F, force_backtracking=False):
    """(order, invariant_factors) of H^2(G, F*) by exhaustive enumeration."""
    m = F.q - 1
    if m == 1 or G.n == 1:
        return 1, ()
    nz, pairs, pos = _pairs(G)
    D = len(pairs)
    if not force_backtracking and m**D <= 1 << 21:
        z2 = cocycle_exponents_full_enum(G, m)
    else:
        z2 = cocycle_exponents_backtracking(G, m)
    b2 = coboundary_exponents(G, m)
    assert len(z2) % len(b2) == 0
    order = len(z2) // len(b2)
    census = {}
    for z in z2:
        t = 1
        while tuple((t * x) % m for x in z) not in b2:
            t += 1
        census[t] = census.get(t, 0) + 1
    for o in census:
        assert census[o] % len(b2) == 0
    census = {o: c // len(b2) for o, c in census.items()}
    return order, abelian_invariants_from_census(order, census)


def cohomologous_oracle(alpha, beta):
    """Exhaustive 1-cochain scan; returns a witness or None."""
    G, F = alpha.group, alpha.field
    nz = _nonidentity(G)
    for vals in iproduct(range(1, F.q), repeat=len(nz)):
        lam = [1] * G.n
        for g, v in zip(nz, vals):
            lam[g] = v
        ok = True
        for g in G.elements():
            for h in G.elements():
                d = ff.mul(F, ff.mul(F, lam[g], lam[h]), ff.inv(F, lam[G.mul(g, h)]))
                if ff.mul(F, alpha.table[g][h], d) != beta.table[g][h]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(lam)
    return None


def one_dim_extension_oracle(A, base_scalars):
    """All algebra maps rho: A -> F extending the scalars on the base basis.

    A one-dimensional module structure on F extending the given base action
    is exactly such a map; this enumerates every candidate directly.
    """
    from gradekit.algebras import base_algebra

    F = A.field
    _, idx = base_algebra(A)
    fixed = dict(zip(idx, base_scalars))
    free = [i for i in range(A.dim) if i not in fixed]
    found = []
    for vals in iproduct(range(F.q), repeat=len(free)):
        rho = [0] * A.dim
        for i, s in fixed.items():
            rho[i] = s
        for i, v in zip(free, vals):
            rho[i] = v
        ok = True
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = ff.mul(F, rho[i], rho[j])
                rhs = 0
                for t, c in enumerate(A.sc[i][j]):
                    if c:
                        rhs = ff.add(F, rhs, ff.mul(F, c, rho[t]))
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(tuple(rho))
    return found
