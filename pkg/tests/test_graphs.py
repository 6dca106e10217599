import itertools
import math

import pytest

from gcjohnson.graphs import (Alphabet, Graph, automorphisms, act_symmetric_group, canonical_form,
                              connected_cores, decode, encode, enumerate_basis, grading, make_graph,
                              naive_basis, relabel)
from gcjohnson.partitions import perm_sign

A2 = Alphabet.symplectic(2)
A3 = Alphabet.symplectic(3)


def _shuffle_sign(order):
    return perm_sign(tuple(order))


def _scramble(G, alphabet, rng):
    """Random vertex relabeling plus reordering of edges and decorations; returns (H, sign)."""
    perm = list(range(G.n)); rng.shuffle(perm)
    H = relabel(G, perm)
    eo = list(range(len(H.edges))); rng.shuffle(eo)
    do = list(range(len(H.decos))); rng.shuffle(do)
    edges = tuple(H.edges[i] for i in eo)
    # flip some edge endpoints too: only the ordering of edges carries a sign
    edges = tuple((v, u) if rng.random() < 0.5 else (u, v) for u, v in edges)
    decos = tuple(H.decos[i] for i in do)
    odd = [i for i in do if alphabet.is_odd(H.decos[i][1])]
    rank = {i: j for j, i in enumerate(sorted(odd))}
    sign = _shuffle_sign(eo) * _shuffle_sign([rank[i] for i in odd])
    return Graph(H.n, tuple((min(u, v), max(u, v)) for u, v in edges), decos), sign


def _pool():
    pool = []
    for W in range(1, 5):
        for l in range(0, W // 2 + 2):
            pool += [(G, A2, "plain") for G in enumerate_basis("plain", A2, W, l)]
    for W in range(1, 4):
        for l in range(0, 3):
            pool += [(G, A2, "tadpole") for G in enumerate_basis("tadpole", A2, W, l)]
    E = Alphabet.extended(2)
    for W in range(1, 4):
        for l in range(0, 3):
            pool += [(G, E, "extended") for G in enumerate_basis("extended", E, W, l)]
    for l, r in ((1, 3), (1, 4), (2, 2), (0, 5)):
        H = Alphabet.hairy(r)
        pool += [(G, H, "hairy") for G in enumerate_basis("hairy", H, 2 * l + r - 2, l)]
    return pool


def test_relabeling_invariance_randomized(rng):
    pool = _pool()
    assert len(pool) > 200
    for _ in range(1000):
        G, A, fam = rng.choice(pool)
        cf = canonical_form(G, A, fam)
        assert not cf.is_zero and cf.graph == G and cf.sign == 1
        H, s = _scramble(G, A, rng)
        cf2 = canonical_form(H, A, fam)
        assert cf2.encoding == cf.encoding
        assert cf2.sign == s


def test_identity_and_transposition():
    G = make_graph(3, [(0, 1), (1, 2), (0, 2)], [(0, 0), (1, 2), (2, 4)])
    cf = canonical_form(G, A3)
    H = Graph(3, (G.edges[1], G.edges[0], G.edges[2]), G.decos)
    cf2 = canonical_form(H, A3)
    assert cf.encoding == cf2.encoding and cf.sign == -cf2.sign


def test_zero_graphs():
    # parallel edges: swapping them is an odd automorphism
    G = make_graph(2, [(0, 1), (0, 1)], [(0, 0), (1, 1)])
    assert canonical_form(G, A2).is_zero
    assert automorphisms(G, A2).odd
    # two equal odd decorations on one vertex
    assert canonical_form(make_graph(1, [], [(0, 0), (0, 0), (0, 1)]), A2).is_zero


def test_automorphism_orders():
    tri = [(0, 1), (1, 2), (0, 2)]
    assert automorphisms(make_graph(3, tri, [(0, 0), (1, 2), (2, 4)]), A3).order == 1
    assert automorphisms(make_graph(3, tri, [(0, 0), (1, 0), (2, 0)]), A3).order == 6


def test_encode_decode_roundtrip():
    for G, A, fam in _pool()[:300]:
        data = encode(G, fam)
        assert decode(data) == (G, fam)
    # little-endian, length prefixed: first bytes are stable
    assert encode(make_graph(1, [], [(0, 0)]), "plain")[:4] == encode(make_graph(1, [], [(0, 1)]), "plain")[:4]


def test_weight_one_trees():
    # one vertex with three decorations: dim Lambda^3 of the 2g-dim space
    for g, A in ((2, A2), (3, A3)):
        basis = enumerate_basis("plain", A, 1, 0)
        assert all(G.n == 1 and len(G.decos) == 3 for G in basis)
        assert len(basis) == math.comb(2 * g, 3)


@pytest.mark.parametrize("W", range(1, 5))
def test_enumeration_matches_brute_force(W):
    for l in range(0, W // 2 + 2):
        fast = {encode(G) for G in enumerate_basis("plain", A2, W, l)}
        slow = {encode(G) for G in naive_basis("plain", A2, W, l)}
        assert fast == slow


def test_enumeration_tadpole_brute_force():
    for W in (1, 2, 3):
        for l in (0, 1, 2):
            fast = {encode(G, "tadpole") for G in enumerate_basis("tadpole", A2, W, l)}
            slow = {encode(G, "tadpole") for G in naive_basis("tadpole", A2, W, l)}
            assert fast == slow


def test_hairy_one_loop_three_hairs():
    H = Alphabet.hairy(3)
    basis = enumerate_basis("hairy", H, 3, 1)
    tri = canonical_form(make_graph(3, [(0, 1), (1, 2), (0, 2)], [(0, 0), (1, 1), (2, 2)]), H, "hairy")
    assert tri.graph in basis
    assert grading(tri.graph, H).k == 1
    assert {encode(G) for G in basis} == {encode(G) for G in naive_basis("hairy", H, 3, 1)}


def test_infeasible_slice_is_empty():
    assert enumerate_basis("plain", Alphabet.symplectic(1), 2, 2, k=-5) == []


def test_connected_cores_counts():
    # connected simple graphs on 4 vertices: 6 in total, by edge count 2, 2, 1, 1
    assert [len(connected_cores(4, e)) for e in range(3, 7)] == [2, 2, 1, 1]


def test_symmetric_group_action():
    H = Alphabet.hairy(3)
    basis = enumerate_basis("hairy", H, 3, 1)
    perms = list(itertools.permutations(range(3)))
    for G in basis:
        assert act_symmetric_group(G, (0, 1, 2), H) == canonical_form(G, H, "hairy")
        for s in perms:
            for t in perms:
                st = tuple(s[t[i]] for i in range(3))
                a = act_symmetric_group(G, st, H)
                b1 = act_symmetric_group(G, t, H)
                b = act_symmetric_group(b1.graph, s, H)
                assert a.encoding == b.encoding and a.sign == b.sign * b1.sign
    # two hairs on the same vertex of a symmetric graph
    G = canonical_form(make_graph(2, [(0, 1)], [(0, 0), (0, 1), (1, 2), (1, 3)]), Alphabet.hairy(4), "hairy")
    sw = act_symmetric_group(G.graph, (1, 0, 2, 3), Alphabet.hairy(4))
    assert sw.encoding == G.encoding and sw.sign == -1
