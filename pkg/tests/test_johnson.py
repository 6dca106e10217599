import math

import pytest

import gcjohnson.johnson as jn
from gcjohnson.differentials import Chain, build_slice, delta_split, lie_bracket
from gcjohnson.graphs import Alphabet, make_graph
from gcjohnson.linalg import class_is_zero, cohomology
from gcjohnson.partitions import MultiplicityVector, Partition, dim_sp
from gcjohnson.tables import COKERNEL, PRESENTATION, table

A2 = Alphabet.symplectic(2)
A3 = Alphabet.symplectic(3)


def tripod(A, syms):
    return Chain.of(make_graph(1, [], [(0, s) for s in syms]), A, "plain")


def test_pattern_counts_cover_all_contents():
    for g in (1, 2, 3, 5):
        for D in range(0, 7):
            total = sum(c for _, c in jn._patterns(D, 2 * g))
            assert total == math.comb(2 * g + D - 1, D)


@pytest.mark.parametrize("W,l", [(2, 1), (3, 1), (3, 0), (4, 1), (4, 2), (2, 0)])
def test_pattern_cohomology_matches_full_slice(W, l):
    direct = cohomology(build_slice("plain", A2, W, f"={l}")).nonzero()
    assert jn.pattern_cohomology("plain", 2, W, l).nonzero() == direct


@pytest.mark.parametrize("family,W", [("plain", 2), ("plain", 3), ("tadpole", 3), ("extended", 2)])
def test_weight_blocks_match_full_slice(family, W):
    A = Alphabet.extended(2) if family == "extended" else A2
    assert jn.weight_block_cohomology(family, 2, W).nonzero() == cohomology(build_slice(family, A, W)).nonzero()


def test_tree_cohomology_small():
    assert jn.tree_cohomology(3, 1).dims == {0: 20}
    h0 = jn.tree_cohomology(3, 2).dims[0]
    assert h0 == table(PRESENTATION[2]).total(lambda p: dim_sp(p, 3))
    for W in range(1, 5):
        rep = jn.tree_cohomology(2, W)
        assert all(v == 0 for k, v in rep.dims.items() if k < 0)


def test_tree_representatives():
    rep = jn.tree_cohomology(2, 3, representatives=True)
    assert len(rep.representatives[0]) == rep.dims[0]
    assert all(not delta_split(x) for x in rep.representatives[0])


def test_t_presentation_and_variants():
    assert jn.t_graded(1) == table(PRESENTATION[1])
    assert jn.t_graded(2) == table(PRESENTATION[2])
    assert jn.t_graded_formula(1) == jn.t_graded(1)
    assert jn.t_graded_formula(2) == jn.t_graded(2)
    assert jn.t_graded(1, "closed") == table("[1^3]") == jn.t_graded(1, "tp")
    assert jn.t_graded(2, "closed") == table("[2^2]")
    assert jn.t_graded(2, "tp") == jn.t_graded(2)
    assert jn.t_graded(5, "tp") == jn.t_graded(5)
    with pytest.raises(NotImplementedError):
        jn.t_graded(3, "closed")


def test_derivations_split_as_t_plus_cokernel():
    for W in range(2, 6):
        assert jn.derivations_stable(W) == jn.t_graded(W) + jn.coker_formula(W)


def test_es_weight_one_vanishes():
    x = tripod(A3, (0, 2, 4))
    res = jn.es_trace(3, x)
    assert res.vanishes and res.trace is None


def test_es_weight_three_trace_nonzero():
    rep = jn.tree_cohomology(2, 3, representatives=True)
    res = jn.es_trace(2, rep.representatives[0][0])
    assert not res.vanishes and res.level == 0
    (w,) = jn._weights_of(res.trace)
    S = build_slice("plain", A2, 3, "=1", torus_weight=w)
    assert not class_is_zero(S, 1, res.trace)


def test_es_johnson_image_extends():
    b = lie_bracket(lie_bracket(tripod(A2, (0, 1, 2)), tripod(A2, (0, 2, 3))), tripod(A2, (1, 2, 3)))
    assert b and b.degrees() == {0}
    res = jn.es_trace(2, b)
    assert res.vanishes and res.vanishes_through == 2
    assert len(res.ladder) == 2


def test_es_rejects_bad_input():
    with pytest.raises(ValueError):
        jn.es_trace(2, Chain.of(make_graph(2, [(0, 1)], [(0, 0), (0, 2), (1, 0), (1, 2), (1, 3)]), A2, "plain"))


def test_joint_kernels():
    assert len(set(jn.joint_kernel_dims(3, 1, 1).h0.values())) == 1
    assert len(set(jn.joint_kernel_dims(3, 2, 2).h0.values())) == 1
    lad = jn.joint_kernel_dims(9, 3, 1)
    assert lad.monotone
    assert lad.h0[0] - lad.h0[1] == dim_sp((3,), 9)


def test_injectivity_direct():
    for g, W in ((2, 2), (3, 3)):
        cert = jn.injectivity_certificate(g, W)
        assert cert.holds, cert.evidence


def test_solver_toy_cases():
    sols = jn._page_solutions({(1, 1): 2, (2, 2): 1}, [1, 2])
    assert len(sols) == 1 and sols[0][0] == {(1, 1): 1}
    # a degree-0 class killable by d1 or by d2: two solutions with different attribution
    sols = jn._page_solutions({(1, 0): 1, (2, 1): 1, (3, 1): 1}, [1, 2, 3])
    assert len(sols) == 2
    assert {tuple(sorted(s)) for s, _ in sols} == {((2, 1),), ((3, 1),)}
    assert jn._page_solutions({(1, 0): 1}, [1]) == []


def test_spectral_weight_five_drop():
    sol = jn.coker_spectral(5)
    one = Partition((1,))
    assert sol.e1[1][1][one] == 3 and sol.survivors[one] == 2
    assert sol.differential_ranks[one] == {"d2:(1, 1)->(3, 2)": 1}
    assert not sol.ambiguous


def test_spectral_weight_six_two_loop_part():
    sol = jn.coker_spectral(6)
    assert sol.attribution[2] == table("[1^4] + [1^2] + [0]")
    assert sol.survivors == table(COKERNEL[6])


def test_formula_refuses_negative(monkeypatch):
    monkeypatch.setattr(jn, "_chi_sum", lambda *a, **k: MultiplicityVector({(1,): -1}))
    with pytest.raises(jn.NegativeMultiplicity):
        jn.coker_formula(4)


def test_example_two_loop_chain():
    x = jn.example_two_loop_chain(A2, (0, 1, 2, 3))
    assert x.degrees() == {1}
    assert not delta_split(x)
    S = build_slice("plain", A2, 6, "=2", contents=[(0, 1, 2, 3)])
    assert not class_is_zero(S, 1, x)
