import pytest

import gradekit.groups as gr
from gradekit.errors import (
    NotAssociative,
    NotLatinSquare,
    NotNormal,
    NotSurjective,
    OrderTooLarge,
    OrderTooLargeForIsoSearch,
    TargetMismatch,
)


def test_table_validation(Z2):
    assert Z2.n == 2 and Z2.e == 0 and Z2.inv == (0, 1)
    with pytest.raises(NotLatinSquare):
        gr.group_from_table(["a", "b"], [[0, 0], [1, 1]])
    # associative magma without identity is rejected
    with pytest.raises(NotLatinSquare):
        gr.group_from_table(["a", "b"], [[1, 0], [1, 0]])
    # Latin square that is not associative (order-5 loop)
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative):
        gr.group_from_table(list("abcde"), loop)


def test_builtin_q8(Q8):
    assert Q8.labels == ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    i, j, k, m1 = 2, 4, 6, 1
    # i^2 = j^2 = k^2 = ijk = -1
    assert Q8.mul(i, i) == m1 and Q8.mul(j, j) == m1 and Q8.mul(k, k) == m1
    assert Q8.mul(Q8.mul(i, j), k) == m1
    assert [Q8.labels[g] for g in gr.center(Q8)] == ["1", "-1"]


def test_builtin_misc(Z4, K4, S3):
    assert Z4.n == 4 and gr.element_order(Z4, 1) == 4
    assert gr.iso_search(gr.direct_product(gr.cyclic(2), gr.cyclic(2)), K4) is not None
    assert not gr.is_abelian(S3)
    D4 = gr.dihedral(4)
    assert D4.n == 8
    # s r s^-1 = r^-1
    s, r = 4, 1
    assert D4.mul(D4.mul(s, r), D4.inv[s]) == D4.inv[r]
    with pytest.raises(OrderTooLarge):
        gr.cyclic(65)


def test_subgroup_closure(Q8, K4):
    C, emb = gr.subgroup(Q8, [1])  # generated by -1
    assert C.n == 2 and sorted(emb.map) == [0, 1]
    T, _ = gr.subgroup(K4, [])
    assert T.n == 1
    H, embH = gr.subgroup(K4, [1])
    assert H.n == 2


def test_quotients(Z4, Q8, K4):
    Q, proj = gr.quotient(Z4, [0, 2])
    assert Q.n == 2
    # projection is a surjective hom with kernel exactly N
    assert proj.is_surjective()
    assert sorted(g for g in Z4.elements() if proj(g) == Q.e) == [0, 2]
    Qt, projq = gr.quotient(Q8, [0, 1])
    assert Qt.n == 4
    assert all(gr.element_order(Qt, g) <= 2 for g in Qt.elements())
    assert gr.iso_search(Qt, K4) is not None
    T, _ = gr.quotient(K4, list(K4.elements()))
    assert T.n == 1
    with pytest.raises(NotNormal):
        gr.quotient(Q8, [0, 2])  # {1, i} is not a subgroup


def test_s3_nonnormal_subgroup(S3):
    # the subgroup generated by one transposition is not normal in S3
    order2 = [g for g in S3.elements() if gr.element_order(S3, g) == 2][0]
    H, emb = gr.subgroup(S3, [order2])
    assert H.n == 2
    with pytest.raises(NotNormal):
        gr.quotient(S3, emb.map)


def test_pullback(Z4, Z2):
    ident = gr.make_hom(Z2, Z2, [0, 1])
    P, a, b = gr.pullback(ident, ident)
    assert P.n == 2  # the diagonal
    p1 = gr.make_hom(Z4, Z2, [0, 1, 0, 1])
    P8, pr1, pr2 = gr.pullback(p1, p1)
    assert P8.n == 4 * 4 // 2
    assert sorted(gr.element_order(P8, g) for g in P8.elements()) == [1, 2, 2, 2, 4, 4, 4, 4]
    # projections agree after composing with the maps to Z2
    for x in P8.elements():
        assert p1(pr1(x)) == p1(pr2(x))
    # graph device: pullback along the identity is the graph of p1
    Pg, g1, g2 = gr.pullback(p1, ident)
    assert Pg.n == Z4.n
    assert gr.iso_search(Pg, Z4) is not None
    with pytest.raises(TargetMismatch):
        gr.pullback(p1, gr.make_hom(Z4, Z4, [0, 1, 2, 3]))
    with pytest.raises(NotSurjective):
        gr.pullback(p1, gr.make_hom(Z2, Z2, [0, 0]))


def test_inner_aut(Q8, K4):
    for g in K4.elements():
        assert gr.inner_aut(K4, g) == tuple(K4.elements())
    pi = gr.inner_aut(Q8, 2)  # conjugation by i swaps j <-> -j and k <-> -k
    assert pi[4] == 5 and pi[5] == 4 and pi[6] == 7 and pi[7] == 6
    assert gr.inner_aut(Q8, Q8.e) == tuple(Q8.elements())
    # composition law
    for a in Q8.elements():
        for b in Q8.elements():
            pa, pb = gr.inner_aut(Q8, a), gr.inner_aut(Q8, b)
            assert tuple(pa[pb[x]] for x in Q8.elements()) == gr.inner_aut(Q8, Q8.mul(a, b))


def test_iso_search(Z4, K4, Q8):
    assert gr.iso_search(Z4, K4) is None  # element-order multisets differ
    Qt, _ = gr.quotient(Q8, [0, 1])
    w = gr.iso_search(Qt, K4)
    assert w is not None and w.is_injective() and w.is_surjective()
    ident = gr.iso_search(K4, K4)
    assert ident is not None
    with pytest.raises(OrderTooLargeForIsoSearch):
        big = gr.direct_product(gr.cyclic(5), gr.cyclic(5))
        gr.iso_search(big, big)
