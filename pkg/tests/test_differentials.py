import itertools

import pytest

from gcjohnson.differentials import (C_Z, Chain, ExtendedElement, _z_terms, build_slice, delta, glue_graph, lie_bracket, split_graph, z_graph)
from gcjohnson.graphs import Alphabet, enumerate_basis, grading, make_graph

A2 = Alphabet.symplectic(2)
E2 = Alphabet.extended(2)


def test_split_small_vertices():
    G = make_graph(1, [], [(0, 0), (0, 1), (0, 2)])
    assert not split_graph(G, A2, "plain")
    H = make_graph(1, [], [(0, 0), (0, 1), (0, 2), (0, 3)])
    out = split_graph(H, A2, "plain")
    assert len(out.terms) == 3
    assert all(K.n == 2 and K.e == 1 for K in out.terms)
    # independent splitter: 2+2 partitions of the four decorations
    assert len({frozenset(p) for p in itertools.combinations(range(4), 2)}) // 2 == 3


def test_glue_examples():
    # a1 a2 | b1 b2: the two pairings both give parallel edges, hence zero
    G = make_graph(2, [(0, 1)], [(0, 0), (0, 2), (1, 1), (1, 3)])
    assert not glue_graph(G, A2, "plain")
    # only a1's: pairing vanishes
    T = make_graph(2, [(0, 1)], [(0, 0), (0, 0), (1, 0), (1, 0)])
    assert not glue_graph(T, A2, "tadpole")
    # same-vertex pair: tadpole term survives only in the tadpole family
    V = make_graph(1, [], [(0, 0), (0, 1), (0, 2)])
    tp = glue_graph(V, A2, "tadpole")
    assert tp and all(K.tadpoles() == 1 for K in tp.terms)
    assert not glue_graph(V, A2, "plain")


def test_z_examples():
    G = make_graph(1, [], [(0, 0), (0, 1), (0, 2)])
    assert not z_graph(G, E2, "extended")
    w = E2.omega
    H = make_graph(1, [], [(0, w), (0, 0), (0, 2)])
    raw = list(_z_terms(H, E2))
    assert len(raw) == 2 * E2.g
    out = z_graph(H, E2, "extended")
    assert len(out.terms) == E2.g
    assert all(K.n == 2 for K in out.terms)
    assert C_Z == 0.5


@pytest.mark.parametrize("family", ["plain", "tadpole"])
@pytest.mark.parametrize("W", [1, 2, 3, 4])
def test_d_squared_small(family, W):
    assert build_slice(family, A2, W).d_squared_zero()


def test_split_squared_per_loop():
    for W in range(1, 5):
        for l in range(0, W // 2 + 2):
            assert build_slice("plain", A2, W, f"={l}").d_squared_zero()


@pytest.mark.parametrize("W", [1, 2, 3])
def test_d_squared_extended(W):
    assert build_slice("extended", E2, W).d_squared_zero()


def test_tree_slice_weight_one():
    S = build_slice("plain", Alphabet.symplectic(3), 1, "<=0")
    assert S.degrees == [0] and S.dim(0) == 20
    assert S.matrix(0).is_zero()


def test_loop_specs():
    S = build_slice("plain", A2, 4, ">=1")
    assert set(G.loop_order for k in S.bases for G in S.bases[k]) <= {1, 2, 3}
    assert S.d_squared_zero()
    S = build_slice("plain", A2, 4, "<=1")
    assert S.d_squared_zero()


def _basis_chains(A, family, maxW):
    out = []
    for W in range(1, maxW + 1):
        for l in range(0, 2):
            out += [Chain.of(G, A, family) for G in enumerate_basis(family, A, W, l)]
    return out


def _deg(x):
    (k,) = x.degrees()
    return k


def _sign(n):
    return -1 if n % 2 else 1


@pytest.mark.parametrize("family", ["plain", "tadpole"])
def test_bracket_antisymmetry(family, rng):
    basis = _basis_chains(A2, family, 3)
    pairs = [(rng.choice(basis), rng.choice(basis)) for _ in range(150)]
    for x, y in pairs:
        lhs = lie_bracket(x, y) + lie_bracket(y, x) * _sign(_deg(x) * _deg(y))
        assert not lhs


@pytest.mark.parametrize("family", ["plain", "tadpole"])
def test_bracket_is_a_derivation(family, rng):
    basis = _basis_chains(A2, family, 2)
    for _ in range(60):
        x, y = rng.choice(basis), rng.choice(basis)
        lhs = delta(lie_bracket(x, y))
        rhs = lie_bracket(delta(x), y) + lie_bracket(x, delta(y)) * _sign(_deg(x))
        assert not (lhs - rhs)


def test_jacobi_random_triples(rng):
    basis = _basis_chains(A2, "plain", 3)
    basis = [b for b in basis if grading(next(iter(b.terms)), A2).W <= 2]
    for _ in range(50):
        a, b, c = (rng.choice(basis) for _ in range(3))
        ka, kb, kc = _deg(a), _deg(b), _deg(c)
        s = (lie_bracket(a, lie_bracket(b, c)) * _sign(ka * kc)
             + lie_bracket(b, lie_bracket(c, a)) * _sign(kb * ka)
             + lie_bracket(c, lie_bracket(a, b)) * _sign(kc * kb))
        assert not s


def test_bracket_of_tripods():
    x = Chain.of(make_graph(1, [], [(0, 0), (0, 2), (0, 3)]), A2, "plain")
    y = Chain.of(make_graph(1, [], [(0, 1), (0, 2), (0, 3)]), A2, "plain")
    z = lie_bracket(x, y)
    # pairings across: (a1,b1), (a2,b2), (b2,a2); the three resulting trees are distinct
    assert all(G.n == 2 and G.e == 1 and len(G.decos) == 4 for G in z.terms)
    assert len(z.terms) == 3
    assert all(abs(c) == 1 for c in z.terms.values())


def test_osp_action():
    w = E2.omega
    x = Chain.of(make_graph(1, [], [(0, w), (0, 0), (0, 2)]), E2, "extended")
    el = ExtendedElement(Chain(E2, "extended"), {1: 1})
    y = el.act(x)
    assert len(y.terms) == 1
    (G,) = y.terms
    assert sorted(s for _, s in G.decos) == [0, 1, 2]
