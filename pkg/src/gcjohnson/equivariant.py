"""S_r-equivariant cohomology of hairy graph complexes.

The fast route works orbit by orbit.  An S_r-orbit of hair-labelled graphs
is represented by an unlabelled hairy shape whose hairs are numbered in
canonical vertex order.  Its stabilizer H acts on the representative by a
sign character eps, so the orbit spans Ind_H^{S_r}(eps) and contributes
im(P) with P = |H|^-1 sum_h eps(h) rho_lam(h) to the lam-multiplicity space.
Differentials are assembled blockwise from group-algebra elements, all
modulo a word-size prime, using Young's seminormal matrices.

The labelled central-projector construction ``isotypic_subcomplex`` is
kept as an independent oracle for small slices.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from . import graphs as gr
from .differentials import build_slice, split_graph
from .graphs import Alphabet, Graph, canonical_form
from .linalg import prime, rank, solve_in_image, SparseMatrix
from .partitions import (MultiplicityVector, Partition, SeminormalRep, branch_gl_to_sp, class_size,
                         cycle_type, partitions_of, sn_character, sn_dimension)


# --- modular dense helpers ----------------------------------------------------------------


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """A @ B mod p for int64 matrices with entries in [0, p), p < 2^31."""
    if A.shape[1] == 0 or B.shape[0] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    shift = 0
    Bw = B.copy()
    while Bw.any():
        chunk = Bw & 0x7FF
        out = (out + (A @ chunk) % p * pow(2, shift, p)) % p
        Bw >>= 11
        shift += 11
    return out


def rank_dense_mod(M: np.ndarray, p: int) -> int:
    return len(_echelon_pivots(M, p))


def _echelon_pivots(M: np.ndarray, p: int) -> List[int]:
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            A[below] = (A[below] - np.outer(A[below, c], A[r]) % p) % p
        pivots.append(c)
        r += 1
    return pivots


def _inverse_mod(M: np.ndarray, p: int) -> np.ndarray:
    n = M.shape[0]
    A = np.concatenate([np.array(M, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            raise ZeroDivisionError("singular matrix mod p")
        piv = c + int(nz[0])
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
        A[c] = A[c] * pow(int(A[c, c]), p - 2, p) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != c]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[c]) % p) % p
    return A[:, n:]


# --- hairy shapes ------------------------------------------------------------------------------


class Shape(NamedTuple):
    """One S_r-orbit of labelled hairy graphs."""
    rep: Graph                       # canonical labelled representative (hairs 0..r-1)
    counts: Tuple[int, ...]          # hairs per vertex of the representative
    blocks: Tuple[Tuple[int, int], ...]   # (first label, size) per vertex with hairs
    cosets: Tuple[Tuple[Tuple[int, ...], int], ...]  # (sigma_a, eps_a) mod the Young subgroup
    order: int                       # |H|
    k: int


def _shape_key(n: int, edges, counts) -> Tuple[tuple, List[int]]:
    G = Graph(n, tuple(edges), tuple((v, 0) for v in range(n) for _ in range(counts[v])))
    lab = gr._label(G)
    L = lab.label
    new_edges = tuple(sorted((min(L[u], L[v]), max(L[u], L[v])) for u, v in edges))
    new_counts = [0] * n
    for v in range(n):
        new_counts[L[v]] = counts[v]
    return (n, new_edges, tuple(new_counts)), L


def _rep_graph(n: int, edges, counts) -> Graph:
    decos = []
    label = 0
    for v in range(n):
        for _ in range(counts[v]):
            decos.append((v, label))
            label += 1
    return Graph(n, tuple(edges), tuple(decos))


def _make_shape(key, W: int) -> Optional[Shape]:
    n, edges, counts = key
    r = sum(counts)
    A = Alphabet.hairy(r)
    raw = _rep_graph(n, edges, counts)
    if canonical_form(raw, A, "hairy").is_zero:
        return None
    base = []
    acc = 0
    for c in counts:
        base.append(acc)
        acc += c
    colored = Graph(n, tuple(edges), tuple((v, 0) for v in range(n) for _ in range(counts[v])))
    autos = gr._label(colored).autos
    ref = canonical_form(raw, A, "hairy")
    cosets = {}
    for a in autos:
        inv = [0] * n
        for v in range(n):
            inv[a[v]] = v
        sigma = [0] * r
        for v in range(n):
            u = inv[v]
            for j in range(counts[v]):
                sigma[base[v] + j] = base[u] + j
        sigma = tuple(sigma)
        if sigma in cosets:
            continue
        cf = gr.act_symmetric_group(raw, sigma, A)
        if cf.graph != ref.graph:
            raise AssertionError("stabilizer element does not fix the orbit representative")
        cosets[sigma] = cf.sign * ref.sign
    order = len(cosets) * math.prod(math.factorial(c) for c in counts)
    blocks = tuple((base[v], counts[v]) for v in range(n) if counts[v])
    return Shape(raw, tuple(counts), blocks, tuple(sorted(cosets.items())), order, len(edges) - W + 1)


@lru_cache(maxsize=None)
def hairy_shapes(loop: int, r: int) -> Tuple[Shape, ...]:
    """All nonzero S_r-orbits of the hairy complex with given loop order and r hairs."""
    W = 2 * loop - 2 + r
    found = {}
    vmax = 2 * loop - 2 + r
    for n in range(1, vmax + 1):
        e = n + loop - 1
        for core in gr.connected_cores(n, e):
            deg = [0] * n
            for u, v in core:
                deg[u] += 1
                deg[v] += 1
            needs = [max(0, 3 - d) for d in deg]
            for counts in gr._count_vectors(needs, r):
                key, _ = _shape_key(n, core, counts)
                if key not in found:
                    found[key] = None
    shapes = []
    for key in sorted(found):
        s = _make_shape(key, W)
        if s is not None:
            shapes.append(s)
    return tuple(shapes)


def _identify(K: Graph, r: int, index: Dict[tuple, int], shapes: Sequence[Shape]):
    """(orbit index, pi) with pi applied to that orbit's representative giving K up to sign."""
    counts = [0] * K.n
    for x, _ in K.decos:
        counts[x] += 1
    key, L = _shape_key(K.n, K.edges, counts)
    o = index[key]
    hairs_at = defaultdict(list)
    for x, s in K.decos:
        hairs_at[L[x]].append(s)
    pi = [0] * r
    label = 0
    for v in range(K.n):
        for s in sorted(hairs_at[v]):
            pi[label] = s
            label += 1
    return o, tuple(pi)


# --- Lefschetz (trace-only) multiplicities ----------------------------------------------------


@lru_cache(maxsize=None)
def _block_cycle_distribution(m: int, c: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """Signed cycle-type distribution of h over a block cycle of length m, size c."""
    out = []
    f = math.factorial(c) ** (m - 1)
    for rho in partitions_of(c):
        sgn = perm_sign_of_type(rho)
        out.append((tuple(m * x for x in rho), f * class_size(rho) * sgn))
    return tuple(out)


def perm_sign_of_type(rho) -> int:
    return -1 if (sum(rho) - len(rho)) % 2 else 1


def shape_class_function(sh: Shape) -> Dict[Partition, int]:
    """rho -> sum of eps(h) over the stabilizer elements h of cycle type rho."""
    out: Dict[Partition, int] = defaultdict(int)
    block_of_label = {}
    for bi, (b, c) in enumerate(sh.blocks):
        for j in range(c):
            block_of_label[b + j] = bi
    for sigma, eps in sh.cosets:
        # permutation of blocks induced by sigma
        bperm = [block_of_label[sigma[b]] for b, _ in sh.blocks]
        seen = [False] * len(bperm)
        dists = []
        for i in range(len(bperm)):
            if seen[i]:
                continue
            m = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = bperm[j]
                m += 1
            dists.append(_block_cycle_distribution(m, sh.blocks[i][1]))
        # eps(sigma tau) = eps_a * sgn(tau); the distributions carry sgn(tau)
        for combo in itertools.product(*dists):
            parts = []
            weight = eps
            for ct, w in combo:
                parts.extend(ct)
                weight *= w
            out[Partition(sorted(parts, reverse=True))] += weight
    return dict(out)


def chain_multiplicities(loop: int, r: int) -> Dict[int, MultiplicityVector]:
    """k -> multiplicities of the S_r-irreducibles in the degree-k chain group."""
    res: Dict[int, MultiplicityVector] = defaultdict(MultiplicityVector)
    lams = partitions_of(r)
    for sh in hairy_shapes(loop, r):
        cf = shape_class_function(sh)
        for lam in lams:
            tot = sum(v * sn_character(lam, rho) for rho, v in cf.items())
            if tot % sh.order:
                raise ArithmeticError("non-integral orbit multiplicity")
            res[sh.k].add(lam, tot // sh.order)
    return dict(res)


def lefschetz_euler(loop: int, r: int) -> MultiplicityVector:
    """lam -> sum_k (-1)^k mult of [lam] in C^k, from traces alone."""
    out = MultiplicityVector()
    for k, mv in chain_multiplicities(loop, r).items():
        out = out + mv * ((-1) ** k)
    return out


# --- orbit-method equivariant complex -----------------------------------------------------------


class EquivariantComplex:
    """The [lam]-multiplicity complex of HGC^{=loop}(r) modulo a prime."""

    def __init__(self, loop: int, r: int, lam, p: Optional[int] = None):
        self.loop, self.r = loop, r
        self.W = 2 * loop - 2 + r
        self.lam = Partition(lam)
        if self.lam.size != r:
            raise ValueError("partition size must equal the number of hairs")
        self.p = p or prime(0)
        self.rep = SeminormalRep(self.lam, self.p)
        self.shapes = hairy_shapes(loop, r)
        self.index = {}
        for i, sh in enumerate(self.shapes):
            key, _ = _shape_key(sh.rep.n, sh.rep.edges, sh.counts)
            self.index[key] = i
        self._proj = {}
        self.offsets: Dict[int, Dict[int, int]] = defaultdict(dict)
        self.dims: Dict[int, int] = defaultdict(int)
        for i, sh in enumerate(self.shapes):
            B, C = self._projector_data(i)
            m = B.shape[1]
            self.offsets[sh.k][i] = self.dims[sh.k]
            self.dims[sh.k] += m
        self._mats: Dict[int, np.ndarray] = {}

    def _rho(self, perm) -> np.ndarray:
        return self.rep.matrix(tuple(perm))

    def _transposition(self, i: int, j: int) -> np.ndarray:
        perm = list(range(self.r))
        perm[i], perm[j] = j, i
        return self._rho(perm)

    def _projector_data(self, i: int):
        if i in self._proj:
            return self._proj[i]
        sh = self.shapes[i]
        p = self.p
        d = self.rep.dim
        I = np.eye(d, dtype=np.int64)
        Y = I
        for b, c in sh.blocks:
            A = I
            for j in range(1, c):
                S = I.copy()
                for t in range(j):
                    S = (S - self._transposition(b + t, b + j)) % p
                A = matmul_mod(A, S, p)
            Y = matmul_mod(Y, A, p)
        S = np.zeros((d, d), dtype=np.int64)
        for sigma, eps in sh.cosets:
            S = (S + eps * self._rho(sigma)) % p
        P = matmul_mod(S, Y, p) * pow(sh.order % p, p - 2, p) % p
        cols = _echelon_pivots(P, p)
        B = P[:, cols]
        rows = _echelon_pivots(B.T, p)
        C = matmul_mod(_inverse_mod(B[rows, :], p), P[rows, :], p)
        self._proj[i] = (B, C)
        return B, C

    def projector(self, i: int) -> np.ndarray:
        B, C = self._projector_data(i)
        return matmul_mod(B, C, self.p)

    def matrix(self, k: int) -> np.ndarray:
        """Differential from degree k to degree k+1 in the multiplicity bases."""
        if k in self._mats:
            return self._mats[k]
        p = self.p
        src = self.offsets.get(k, {})
        tgt = self.offsets.get(k + 1, {})
        M = np.zeros((self.dims.get(k + 1, 0), self.dims.get(k, 0)), dtype=np.int64)
        A = Alphabet.hairy(self.r)
        for i, off in src.items():
            sh = self.shapes[i]
            Bi, _ = self._projector_data(i)
            if Bi.shape[1] == 0:
                continue
            acc: Dict[int, np.ndarray] = {}
            for K, c in split_graph(sh.rep, A, "hairy").terms.items():
                o, pi = _identify(K, self.r, self.index, self.shapes)
                cf = gr.act_symmetric_group(self.shapes[o].rep, pi, A)
                if cf.graph != K:
                    raise AssertionError("orbit identification failed")
                coeff = int(c) * cf.sign
                inv = [0] * self.r
                for a, b in enumerate(pi):
                    inv[b] = a
                term = self._rho(inv)
                acc[o] = (acc.get(o, 0) + coeff * term) % p
            for o, G in acc.items():
                Bo, Co = self._projector_data(o)
                if Bo.shape[1] == 0:
                    continue
                block = matmul_mod(matmul_mod(Co, G, p), Bi, p)
                oo = tgt[o]
                M[oo:oo + Bo.shape[1], off:off + Bi.shape[1]] = block
        self._mats[k] = M
        return M

    def d_squared_zero(self) -> bool:
        for k in sorted(self.dims):
            a, b = self.matrix(k), self.matrix(k + 1)
            if a.size and b.size and matmul_mod(b, a, self.p).any():
                return False
        return True

    def cohomology(self) -> Dict[int, int]:
        ranks = {k: rank_dense_mod(self.matrix(k), self.p) if self.matrix(k).size else 0 for k in self.dims}
        return {k: self.dims[k] - ranks.get(k, 0) - ranks.get(k - 1, 0) for k in sorted(self.dims)}


class EquivariantReport:
    """(k, lam) -> multiplicity of [lam]_{S_r} in H^k of a hairy slice."""

    def __init__(self, loop: int, r: int, mult: Dict[Tuple[int, Partition], int],
                 chain: Optional[Dict[Tuple[int, Partition], int]] = None):
        self.loop, self.r = loop, r
        self.mult = {key: v for key, v in mult.items() if v}
        self.chain = chain or {}

    def degree(self, k: int) -> MultiplicityVector:
        return MultiplicityVector({lam: v for (kk, lam), v in self.mult.items() if kk == k})

    def degrees(self) -> List[int]:
        return sorted({k for k, _ in self.mult})

    def dimension(self, k: int) -> int:
        return sum(v * sn_dimension(lam) for (kk, lam), v in self.mult.items() if kk == k)

    def euler(self) -> MultiplicityVector:
        out = MultiplicityVector()
        for (k, lam), v in self.mult.items():
            out.add(lam, (-1) ** k * v)
        return out

    def to_json(self) -> dict:
        return {"loop": self.loop, "r": self.r,
                "mult": [{"k": k, "partition": list(lam), "mult": v}
                         for (k, lam), v in sorted(self.mult.items(), key=lambda t: (t[0][0], t[0][1].sort_key()))]}

    def __repr__(self):
        parts = [f"H^{k}: {self.degree(k).paper_str()}" for k in self.degrees()]
        return f"EquivariantReport(loop={self.loop}, r={self.r}; " + "; ".join(parts) + ")"


def hairy_equivariant_cohomology(loop: int, r: int, lambdas=None, primes: int = 2) -> EquivariantReport:
    """Multiplicities of every [lam]_{S_r} in H^k(HGC^{=loop}(r)), certified at two primes."""
    if loop < 0 or r < 0 or (loop == 0 and r <= 2) or (loop == 1 and r == 0):
        raise ValueError(f"hairy complex undefined or empty for loop={loop}, r={r}")
    lams = [Partition(l) for l in lambdas] if lambdas is not None else partitions_of(r)
    mult = {}
    chain = {}
    for lam in lams:
        results = []
        for i in range(primes):
            E = EquivariantComplex(loop, r, lam, prime(i))
            results.append(E.cohomology())
        if any(res != results[0] for res in results[1:]):
            # rank can only drop modulo a bad prime: keep the smaller cohomology
            merged = {k: min(res[k] for res in results) for k in results[0]}
        else:
            merged = results[0]
        for k, v in merged.items():
            if v < 0:
                raise ArithmeticError("negative multiplicity")
            mult[(k, lam)] = v
            chain[(k, lam)] = E.dims[k]
    return EquivariantReport(loop, r, mult, chain)


# --- labelled oracle ----------------------------------------------------------------------------


def _perm_matrix(basis: List[Graph], index: Dict[Graph, int], sigma, A: Alphabet) -> SparseMatrix:
    data = {}
    for j, G in enumerate(basis):
        cf = gr.act_symmetric_group(G, sigma, A)
        if cf.is_zero:
            raise AssertionError("symmetric group action produced ZERO from a basis graph")
        data[(index[cf.graph], j)] = cf.sign
    return SparseMatrix(len(basis), len(basis), data)


class ProjectedSlice:
    """Image of the central idempotent of [lam] on a labelled hairy slice."""

    def __init__(self, slice_, lam):
        self.slice = slice_
        self.lam = Partition(lam)
        r = slice_.alphabet.r
        if self.lam.size != r:
            raise ValueError("partition size must equal the number of hairs")
        A = slice_.alphabet
        dl = sn_dimension(self.lam)
        perms = list(itertools.permutations(range(r)))
        self.projectors: Dict[int, SparseMatrix] = {}
        self.images: Dict[int, List[List[Fraction]]] = {}
        for k, basis in slice_.bases.items():
            n = len(basis)
            acc: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
            for sigma in perms:
                chi = sn_character(self.lam, cycle_type(sigma))
                if not chi:
                    continue
                for (i, j), v in _perm_matrix(basis, slice_.index[k], sigma, A).data.items():
                    acc[(i, j)] += chi * v
            scale = Fraction(dl, math.factorial(r))
            P = SparseMatrix(n, n, {key: v * scale for key, v in acc.items() if v})
            self.projectors[k] = P
            cols = P.columns()
            # column reduction: keep a maximal independent set of projector columns
            chosen, pivots = [], {}
            for j, col in enumerate(cols):
                vec = {i: Fraction(v) for i, v in col.items()}
                while vec:
                    c = min(vec)
                    if c not in pivots:
                        break
                    f = vec[c]
                    for i, v in pivots[c].items():
                        w = vec.get(i, 0) - f * v
                        if w:
                            vec[i] = w
                        else:
                            vec.pop(i, None)
                if vec:
                    c = min(vec)
                    inv = 1 / vec[c]
                    pivots[c] = {i: v * inv for i, v in vec.items()}
                    chosen.append(j)
            self.images[k] = [[Fraction(col.get(i, 0)) for i in range(n)] for col in (cols[j] for j in chosen)]
        self._mats: Dict[int, SparseMatrix] = {}

    def dim(self, k: int) -> int:
        return len(self.images.get(k, []))

    def matrix(self, k: int) -> SparseMatrix:
        if k in self._mats:
            return self._mats[k]
        src = self.images.get(k, [])
        tgt = self.images.get(k + 1, [])
        D = self.slice.matrix(k)
        Bt = SparseMatrix.from_columns(self.slice.dim(k + 1), [{i: v for i, v in enumerate(b) if v} for b in tgt])
        cols = []
        for b in src:
            y = D.apply(b)
            if not tgt:
                if any(y):
                    raise ArithmeticError("differential leaves the isotypic component")
                cols.append({})
                continue
            x = solve_in_image(Bt, y)
            if x is None:
                raise ArithmeticError("differential leaves the isotypic component")
            cols.append({i: v for i, v in enumerate(x) if v})
        M = SparseMatrix.from_columns(len(tgt), cols)
        self._mats[k] = M
        return M

    def cohomology(self) -> Dict[int, int]:
        ranks = {k: rank(self.matrix(k)) for k in self.slice.bases}
        return {k: self.dim(k) - ranks.get(k, 0) - ranks.get(k - 1, 0) for k in sorted(self.slice.bases)}

    def multiplicities(self) -> Dict[int, int]:
        dl = sn_dimension(self.lam)
        out = {}
        for k, v in self.cohomology().items():
            if v % dl:
                raise ArithmeticError("isotypic cohomology not divisible by dim lam")
            out[k] = v // dl
        return out


def isotypic_subcomplex(slice_, lam) -> ProjectedSlice:
    return ProjectedSlice(slice_, lam)


def hairy_slice(loop: int, r: int):
    return build_slice("hairy", Alphabet.hairy(r), 2 * loop - 2 + r, f"={loop}")


# --- conversion to symplectic multiplicities ------------------------------------------------------


def sp_from_hairy(report: EquivariantReport, loop: Optional[int] = None, r: Optional[int] = None
                  ) -> Dict[int, MultiplicityVector]:
    """Stable gr^W H^k(GC^{=loop}) from hairy data, W = 2 loop + r - 2.

    Schur-Weyl pairs [lam]_{S_r} with [lam]_GL (hairs and H_1-decorations are
    both odd, so no transpose enters) and the degree is the same k.
    """
    out: Dict[int, MultiplicityVector] = {}
    for k in report.degrees():
        mv = MultiplicityVector()
        for lam, m in report.degree(k).items():
            mv = mv + branch_gl_to_sp(lam) * m
        if mv:
            out[k] = mv
    return out


@lru_cache(maxsize=None)
def _stable_cached(W: int, loop: int) -> Tuple[Tuple[int, Tuple[Tuple[Partition, int], ...]], ...]:
    r = W - 2 * loop + 2
    if r < 0 or (loop == 0 and r <= 2) or (loop == 1 and r == 0):
        return ()
    rep = hairy_equivariant_cohomology(loop, r)
    conv = sp_from_hairy(rep, loop, r)
    return tuple((k, tuple(mv.items())) for k, mv in sorted(conv.items()))


def stable_graded_cohomology(W: int, loop: int) -> Dict[int, MultiplicityVector]:
    """k -> stable Sp-decomposition of gr^W H^k(GC^{=loop})."""
    return {k: MultiplicityVector(dict(items)) for k, items in _stable_cached(W, loop)}


# --- equivariant Euler characteristics of moduli spaces ---------------------------------------------


def xi(h: int, lam) -> int:
    """Lefschetz Euler characteristic of the [lam]-part of HGC^{=h}(|lam|)."""
    lam = Partition(lam)
    return _xi_table(h, lam.size)[lam]


@lru_cache(maxsize=None)
def _xi_table(h: int, r: int) -> MultiplicityVector:
    if (h == 0 and r <= 2) or (h == 1 and r == 0):
        return MultiplicityVector()
    return lefschetz_euler(h, r)


def chi_top_weight(h: int, lam) -> int:
    """chi_{h,lam}: top-weight S_r-equivariant Euler characteristic of M_{h,|lam|}."""
    lam = Partition(lam)
    if h < 0 or 2 * h - 2 + lam.size <= 0:
        raise ValueError(f"(h={h}, |lam|={lam.size}) outside the stable range 2h-2+n > 0")
    sign = -1 if lam.size % 2 else 1
    return -sign * xi(h, lam.transpose())


class ChiTable:
    """(h, lam) -> chi_{h,lam}."""

    def __init__(self):
        self.entries: Dict[Tuple[int, Partition], int] = {}

    def fill(self, h: int, n: int) -> "ChiTable":
        for lam in partitions_of(n):
            self.entries[(h, lam)] = chi_top_weight(h, lam)
        return self

    def __getitem__(self, key) -> int:
        h, lam = key
        lam = Partition(lam)
        if (h, lam) not in self.entries:
            self.entries[(h, lam)] = chi_top_weight(h, lam)
        return self.entries[(h, lam)]

    def to_json(self) -> List[dict]:
        return [{"h": h, "lambda": list(lam), "chi": v}
                for (h, lam), v in sorted(self.entries.items(), key=lambda t: (t[0][0], t[0][1].sort_key()))]

    @classmethod
    def from_json(cls, rows) -> "ChiTable":
        t = cls()
        for row in rows:
            t.entries[(row["h"], Partition(row["lambda"]))] = row["chi"]
        return t
