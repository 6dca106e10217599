"""Johnson homomorphism: tree level, presentations, Enomoto-Satoh ladders, cokernel.

Two kinds of computations live here.

* Direct (explicit genus g): decorated chains, exact solves.  Slices that use
  only vertex splitting are GL(2g)-symmetric, so they are computed once per
  decoration *pattern* (the multiset of symbol multiplicities) and counted.
  Slices using the total differential split by Sp torus weight; weights in
  one Weyl orbit give isomorphic blocks, so only dominant weights are built.
* Stable (no g): multiplicities of Sp-irreducibles from the hairy pipeline.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .differentials import Chain, ComplexSlice, build_slice, delta_glue, delta_split, max_loop
from .equivariant import ChiTable, stable_graded_cohomology
from .graphs import Alphabet, Graph, grading
from .linalg import CohomologyReport, SparseMatrix, cohomology, image_basis_complement, solve_in_image
from .partitions import MultiplicityVector, Partition, branch_gl_to_sp, partitions_of


# --- decoration patterns and torus weights ----------------------------------------------------------


def _patterns(D: int, nsym: int):
    """(representative content, number of contents) for each multiplicity pattern."""
    for pat in partitions_of(D):
        d = len(pat)
        if d > nsym:
            continue
        content = tuple(s for s, m in enumerate(pat) for _ in range(m))
        reps = Counter(pat)
        count = math.perm(nsym, d)
        for m in reps.values():
            count //= math.factorial(m)
        yield content, count


def pattern_cohomology(family: str, g: int, W: int, loop: int) -> CohomologyReport:
    """Cohomology of gr^W GC^{=loop} (vertex splitting only) at explicit g."""
    if family not in ("plain", "tadpole"):
        raise ValueError("patterns apply to the plain and tadpole families")
    A = Alphabet.symplectic(g)
    D = W - 2 * (loop - 1)
    dims: Dict[int, int] = defaultdict(int)
    chain_dims: Dict[int, int] = defaultdict(int)
    ranks: Dict[int, int] = defaultdict(int)
    if D < 0:
        return CohomologyReport({}, {}, {})
    for content, count in _patterns(D, 2 * g):
        S = build_slice(family, A, W, f"={loop}", contents=[content])
        rep = cohomology(S)
        for k, v in rep.dims.items():
            dims[k] += count * v
        for k, v in rep.chain_dims.items():
            chain_dims[k] += count * v
        for k, v in rep.ranks.items():
            ranks[k] += count * v
    return CohomologyReport(dict(dims), dict(chain_dims), dict(ranks))


def dominant_weights(g: int, W: int) -> List[Tuple[Tuple[int, ...], int]]:
    """Dominant torus weights that can occur in weight W, with Weyl orbit sizes."""
    out = []
    Dmax = W + 2
    for total in range(Dmax % 2, Dmax + 1, 2):
        for lam in partitions_of(total):
            if len(lam) > g:
                continue
            w = tuple(lam) + (0,) * (g - len(lam))
            mult = Counter(w)
            size = math.factorial(g)
            for m in mult.values():
                size //= math.factorial(m)
            size *= 2 ** len(lam)
            out.append((w, size))
    return out


def weight_block_cohomology(family: str, g: int, W: int, loop_spec="all") -> CohomologyReport:
    """Cohomology of a total-differential slice, assembled from dominant torus weights."""
    A = Alphabet.extended(g) if family == "extended" else Alphabet.symplectic(g)
    dims: Dict[int, int] = defaultdict(int)
    chain_dims: Dict[int, int] = defaultdict(int)
    ranks: Dict[int, int] = defaultdict(int)
    for w, size in dominant_weights(g, W):
        S = build_slice(family, A, W, loop_spec, torus_weight=w)
        if not S.bases:
            continue
        rep = cohomology(S)
        for k, v in rep.dims.items():
            dims[k] += size * v
        for k, v in rep.chain_dims.items():
            chain_dims[k] += size * v
        for k, v in rep.ranks.items():
            ranks[k] += size * v
    return CohomologyReport(dict(sorted(dims.items())), dict(sorted(chain_dims.items())), dict(ranks))


# --- tree level -----------------------------------------------------------------------------------


def tree_cohomology(g: int, W: int, representatives: bool = False) -> CohomologyReport:
    """gr^W H(GC^{<=0}): trees with vertex splitting; H^0 is the derivation Lie algebra.

    Degree 0 is the top degree for trees, so classes are cokernel elements.

    With ``representatives`` the full slice is built and an explicit basis of
    degree-0 classes (basis trees complementing the image) is attached.
    """
    if not representatives:
        return pattern_cohomology("plain", g, W, 0)
    S = build_slice("plain", Alphabet.symplectic(g), W, "<=0")
    rep = cohomology(S)
    reps = {}
    if 0 in S.bases:
        comp = image_basis_complement(S.matrix(-1)) if -1 in S.bases else list(range(S.dim(0)))
        reps[0] = [Chain.of(S.bases[0][i], S.alphabet, "plain") for i in comp]
    return CohomologyReport(rep.dims, rep.chain_dims, rep.ranks, reps)


def derivations_stable(W: int) -> MultiplicityVector:
    """Stable gr^W Der^theta as Sp-multiplicities (trees, degree 0)."""
    return stable_graded_cohomology(W, 0).get(0, MultiplicityVector())


def _chi_sum(W: int, hmin: int, sign_shift: int, table: Optional[ChiTable] = None) -> MultiplicityVector:
    table = ChiTable() if table is None else table
    out = MultiplicityVector()
    for h in range(hmin, W // 2 + 2):
        n = W + 2 - 2 * h
        if n < 0 or 2 * h - 2 + n <= 0:
            continue
        for lam in partitions_of(n):
            c = table[(h, lam)]
            if c:
                s = -1 if (n + sign_shift) % 2 else 1
                out = out + branch_gl_to_sp(lam.transpose()) * (s * c)
    return out


def t_graded_formula(W: int, table: Optional[ChiTable] = None) -> MultiplicityVector:
    """Euler-characteristic expression for gr^W t_{(g),1} (h from 0)."""
    return _chi_sum(W, 0, 1, table)


def t_graded(W: int, variant: str = "g1") -> MultiplicityVector:
    """Stable gr^W of t_{(g),1} ("g1"), t^tp_{(g),1} ("tp") or t_{(g)} ("closed")."""
    if W < 1:
        raise ValueError("weights start at 1")
    if variant not in ("g1", "tp", "closed"):
        raise ValueError(f"unknown variant {variant!r}")
    if W == 1:
        return MultiplicityVector({(1, 1, 1): 1, (1,): 1} if variant == "g1" else {(1, 1, 1): 1})
    if W == 2:
        if variant == "closed":
            return MultiplicityVector({(2, 2): 1})
        return MultiplicityVector({(): 1, (1, 1): 1, (2, 2): 1})
    if variant == "closed":
        raise NotImplementedError("t_(g) beyond weight 2 is not computed")
    # the tadpole version has the same cohomology in weights >= 2
    return t_graded_formula(W)


# --- cokernel ---------------------------------------------------------------------------------------


class NegativeMultiplicity(ArithmeticError):
    pass


def coker_formula(W: int, table: Optional[ChiTable] = None) -> MultiplicityVector:
    """M^W_mu = sum_{h>=1} sum_{|lam|+2h=W+2} (-1)^|lam| N_{mu,lam^T} chi_{h,lam}."""
    if W < 2:
        raise ValueError("the cokernel formula needs W >= 2")
    out = _chi_sum(W, 1, 0, table)
    if not out.is_nonnegative():
        raise NegativeMultiplicity(f"negative multiplicity in weight {W}: {out.paper_str()}")
    return out


class SpectralSolution(NamedTuple):
    survivors: MultiplicityVector
    attribution: Dict[int, MultiplicityVector]
    e1: Dict[int, Dict[int, MultiplicityVector]]
    ambiguous: List[Partition]
    differential_ranks: Dict[Partition, dict]


def _page_solutions(n: Dict[Tuple[int, int], int], loops: Sequence[int]):
    """All final pages reachable by choosing ranks of d_r: (l,k) -> (l+r,k+1)."""
    top = max(loops) if loops else 0
    results = []

    def run(page: int, state: Dict[Tuple[int, int], int], ranks: tuple):
        if page > top:
            results.append((dict(state), ranks))
            return
        pairs = [((l, k), (l + page, k + 1)) for (l, k) in sorted(state)
                 if state[(l, k)] and state.get((l + page, k + 1), 0)]

        def choose(i: int, used_out: Dict, used_in: Dict, chosen: tuple):
            if i == len(pairs):
                nxt = {key: v - used_out.get(key, 0) - used_in.get(key, 0) for key, v in state.items()}
                run(page + 1, {k: v for k, v in nxt.items() if v}, ranks + chosen)
                return
            src, tgt = pairs[i]
            cap = min(state[src] - used_out.get(src, 0) - used_in.get(src, 0),
                      state[tgt] - used_out.get(tgt, 0) - used_in.get(tgt, 0))
            for x in range(cap, -1, -1):
                uo, ui = dict(used_out), dict(used_in)
                uo[src] = uo.get(src, 0) + x
                ui[tgt] = ui.get(tgt, 0) + x
                choose(i + 1, uo, ui, chosen + (((page, src, tgt), x),) if x else chosen)

        choose(0, {}, {}, ())

    run(1, {k: v for k, v in n.items() if v}, ())
    return [(state, rk) for state, rk in results if all(k == 1 for (l, k) in state)]


def spectral_data(W: int) -> Dict[int, Dict[int, MultiplicityVector]]:
    """loop -> degree -> stable gr^W H^k(GC^{=loop}) for loop >= 1."""
    return {l: stable_graded_cohomology(W, l) for l in range(1, W // 2 + 2)}


def coker_spectral(W: int, e1=None) -> SpectralSolution:
    """gr^W H^1(GC^{>=1}) from E_1 data and concentration in degree 1, irrep by irrep."""
    e1 = spectral_data(W) if e1 is None else e1
    irreps = set()
    for by_k in e1.values():
        for mv in by_k.values():
            irreps.update(mv.keys())
    survivors = MultiplicityVector()
    attribution: Dict[int, MultiplicityVector] = defaultdict(MultiplicityVector)
    ambiguous = []
    diff_ranks = {}
    for mu in sorted(irreps, key=Partition.sort_key):
        n = {(l, k): mv[mu] for l, by_k in e1.items() for k, mv in by_k.items() if mv[mu]}
        sols = _page_solutions(n, sorted(e1))
        if not sols:
            raise ArithmeticError(f"no spectral sequence for [{mu.paper_str()}] concentrates in degree 1")
        finals = {tuple(sorted(s.items())) for s, _ in sols}
        if len(finals) > 1 or len({rk for _, rk in sols}) > 1:
            ambiguous.append(mu)
        state, ranks = sols[0]
        diff_ranks[mu] = {f"d{page}:{src}->{tgt}": x for (page, src, tgt), x in ranks}
        for (l, k), v in state.items():
            survivors.add(mu, v)
            attribution[l].add(mu, v)
    return SpectralSolution(survivors, dict(attribution), e1, ambiguous, diff_ranks)


# --- direct pipeline: ES ladders and joint kernels ----------------------------------------------------


class ESTraceResult(NamedTuple):
    cocycle: Chain
    ladder: List[Chain]              # Gamma_1, ..., Gamma_m (loop orders 1..m)
    trace: Optional[Chain]           # delta_glue Gamma_m in GC^{=m+1}, degree 1, or None
    level: int                       # m such that ES_m is the first nonvanishing trace
    vanishes_through: Optional[int]  # max_loop when every trace vanished

    @property
    def vanishes(self) -> bool:
        return self.trace is None


def _weights_of(x: Chain) -> List[Tuple[int, ...]]:
    A = x.alphabet
    out = set()
    for G in x.terms:
        w = [0] * A.g
        for _, s in G.decos:
            i, c = A.torus_weight(s)
            if i >= 0:
                w[i] += c
        out.add(tuple(w))
    return sorted(out)


def _split_by_loop(x: Chain) -> Dict[int, Chain]:
    out: Dict[int, Chain] = defaultdict(lambda: Chain(x.alphabet, x.family))
    for G, c in x.terms.items():
        out[G.loop_order]._add(G, c)
    return dict(out)


def es_trace(g: int, gamma: Chain, max_l: int = 3) -> ESTraceResult:
    """Iterated Enomoto-Satoh traces of a tree cocycle.

    Step m asks whether gamma extends to a degree-0 cocycle of GC^{<=m+1};
    the joint solve lets all corrections Gamma_1..Gamma_{m+1} vary, which is
    the page-correct version of the ladder delta_glue Gamma_{i-1} + delta_split Gamma_i = 0.
    """
    A = gamma.alphabet
    if gamma.family != "plain":
        raise ValueError("ES traces are defined on the plain family")
    if any(G.loop_order != 0 for G in gamma.terms):
        raise ValueError("input must be a combination of trees")
    if delta_split(gamma):
        raise ValueError("input is not a delta_split cocycle")
    degs = gamma.degrees()
    Ws = {grading(G, A).W for G in gamma.terms}
    if degs != {0} or len(Ws) != 1:
        raise ValueError("input must be weight-homogeneous of degree 0")
    W = Ws.pop()
    weights = _weights_of(gamma)
    ladder: List[Chain] = []
    top = min(max_l, max_loop(W, A))
    for m in range(0, top):
        x = _extend(A, W, weights, gamma, m + 1)
        if x is None:
            trace = delta_glue(ladder[-1]) if ladder else delta_glue(gamma)
            trace = _split_by_loop(trace).get(m + 1, Chain(A, "plain"))
            return ESTraceResult(gamma, ladder, trace, m, None)
        parts = _split_by_loop(x)
        ladder = [parts.get(l, Chain(A, "plain")) for l in range(1, m + 2)]
        for i, rung in enumerate(ladder):
            prev = gamma if i == 0 else ladder[i - 1]
            check = _split_by_loop(delta_glue(prev)).get(i + 1, Chain(A, "plain")) + delta_split(rung)
            if check:
                raise ArithmeticError("ladder rung equation violated")
    return ESTraceResult(gamma, ladder, None, top, top)


def _slice_for_weights(A: Alphabet, W: int, weights, loop_spec) -> List[ComplexSlice]:
    return [build_slice("plain", A, W, loop_spec, torus_weight=w) for w in weights]


def _extend(A: Alphabet, W: int, weights, gamma: Chain, L: int) -> Optional[Chain]:
    """x in loops 1..L, degree 0, with d(gamma + x) = 0 in GC^{<=L}; None if impossible."""
    total = Chain(A, "plain")
    by_weight: Dict[Tuple[int, ...], Chain] = defaultdict(lambda: Chain(A, "plain"))
    for G, c in gamma.terms.items():
        by_weight[_weights_of(Chain.of(G, A, "plain"))[0]]._add(G, c)
    for w, part in by_weight.items():
        S = build_slice("plain", A, W, f"<={L}", torus_weight=w)
        if 0 not in S.bases:
            continue
        d0 = S.matrix(0)
        vec = S.vector(0, part)
        rhs = [-v for v in d0.apply(vec)]
        cols = [j for j, G in enumerate(S.bases[0]) if G.loop_order >= 1]
        sub = SparseMatrix.from_columns(d0.nrows, [d0.columns()[j] for j in cols]) if cols else SparseMatrix(d0.nrows, 0)
        if not any(rhs):
            continue
        if not cols:
            return None
        sol = solve_in_image(sub, rhs)
        if sol is None:
            return None
        for j, v in zip(cols, sol):
            if v:
                total._add(S.bases[0][j], v)
    return total


class PageLadder(NamedTuple):
    g: int
    W: int
    h0: Dict[int, int]        # l -> dim gr^W H^0(GC^{<=l})
    h1: Dict[int, int]        # l -> dim gr^W H^1(GC^{=l}) (ambient degree-1 page pieces)

    @property
    def monotone(self) -> bool:
        vals = [self.h0[l] for l in sorted(self.h0)]
        return all(a >= b for a, b in zip(vals, vals[1:]))


def joint_kernel_dims(g: int, W: int, max_l: int) -> PageLadder:
    """dim gr^W H^0(GC^{<=l}) for l = 0..max_l: the joint kernels of ES_0..ES_{l-1}."""
    h0 = {}
    for l in range(0, max_l + 1):
        h0[l] = weight_block_cohomology("plain", g, W, f"<={l}").dims.get(0, 0)
    h1 = {l: pattern_cohomology("plain", g, W, l).dims.get(1, 0) for l in range(1, max_l + 1)}
    return PageLadder(g, W, h0, h1)


class InjectivityCertificate(NamedTuple):
    holds: bool
    evidence: Dict[int, Dict[int, int]]   # l -> {k <= 0: dim H^k(gr^W GC^{=l})}


def injectivity_certificate(g: int, W: int) -> InjectivityCertificate:
    """Checks H^{<=0}(gr^W GC^{=l}) = 0 for every l >= 1 contributing to weight W."""
    evidence = {}
    ok = True
    for l in range(1, W // 2 + 2):
        rep = pattern_cohomology("plain", g, W, l)
        low = {k: v for k, v in rep.dims.items() if k <= 0}
        evidence[l] = low
        if any(low.values()):
            ok = False
    return InjectivityCertificate(ok, evidence)


def stable_injectivity(W: int) -> InjectivityCertificate:
    """Hairy counterpart: no stable class of gr^W GC^{=l}, l >= 1, sits in degree <= 0."""
    evidence = {}
    ok = True
    for l in range(1, W // 2 + 2):
        data = stable_graded_cohomology(W, l)
        low = {k: sum(m for _, m in mv.items()) for k, mv in data.items() if k <= 0}
        evidence[l] = low
        if any(low.values()):
            ok = False
    return InjectivityCertificate(ok, evidence)


def example_two_loop_chain(alphabet: Alphabet, labels: Sequence[int]) -> Chain:
    """Antisymmetrization over S_4 of the 2-loop graph with four decorated trivalent vertices.

    Vertex 0 and vertex 4 are both joined to vertices 1, 2, 3; decoration
    labels[sigma(i)] sits on vertex i for i = 0..3.
    """
    from .partitions import perm_sign
    edges = ((0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4))
    out = Chain(alphabet, "plain")
    for sigma in itertools.permutations(range(4)):
        decos = tuple((i, labels[sigma[i]]) for i in range(4))
        out.add_graph(Graph(5, edges, decos), perm_sign(sigma))
    return out
