"""Differentials, the Lie bracket and complex slices.

Sign conventions (orientation = edges in order, then odd decorations in order):

* vertex splitting appends the new edge at the end of the edge block;
* gluing a pair of odd decorations at odd-positions i < j removes them with
  the Koszul sign (-1)^(i+j-1) of moving them to the front, multiplies by the
  pairing of the pair in that order, and appends the new edge;
* in the extended family the top class w is even.  It is glued to the unit
  class of another vertex (``delta_glue_omega``) or replaced by a new leaf
  vertex carrying the diagonal class (``delta_Z``).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .graphs import (Alphabet, Graph, canonical_form, contents_for, enumerate_basis,
                     grading, graph_str)
from .linalg import SparseMatrix

# relative normalizations of the extended pieces, fixed by d^2 = 0
C_Z = Fraction(1, 2)
C_OMEGA = 1


class Chain:
    """Finite linear combination of canonical graphs with exact coefficients."""

    __slots__ = ("alphabet", "family", "terms")

    def __init__(self, alphabet: Alphabet, family: str, terms: Optional[Dict[Graph, object]] = None):
        self.alphabet = alphabet
        self.family = family
        self.terms: Dict[Graph, object] = {}
        if terms:
            for G, c in terms.items():
                self.add_graph(G, c)

    @classmethod
    def of(cls, G: Graph, alphabet: Alphabet, family: str, coeff=1) -> "Chain":
        x = cls(alphabet, family)
        x.add_graph(G, coeff)
        return x

    def add_graph(self, G: Graph, c) -> None:
        """Add c * G for a raw (non-canonical) graph G."""
        if not c:
            return
        cf = canonical_form(G, self.alphabet, self.family)
        if cf.is_zero:
            return
        self._add(cf.graph, cf.sign * c)

    def _add(self, H: Graph, c) -> None:
        v = self.terms.get(H, 0) + c
        if v:
            self.terms[H] = v
        else:
            self.terms.pop(H, None)

    def _compatible(self, other: "Chain"):
        if self.alphabet != other.alphabet or self.family != other.family:
            raise ValueError("chains from different complexes")

    def __add__(self, other: "Chain") -> "Chain":
        self._compatible(other)
        out = self.copy()
        for H, c in other.terms.items():
            out._add(H, c)
        return out

    def __sub__(self, other: "Chain") -> "Chain":
        return self + other * -1

    def __mul__(self, c) -> "Chain":
        out = Chain(self.alphabet, self.family)
        if c:
            out.terms = {H: c * v for H, v in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def copy(self) -> "Chain":
        out = Chain(self.alphabet, self.family)
        out.terms = dict(self.terms)
        return out

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.alphabet, self.family) == (other.alphabet, other.family) and self.terms == other.terms

    def degrees(self) -> set:
        return {grading(G, self.alphabet).k for G in self.terms}

    def __repr__(self):
        body = " + ".join(f"({c})*{graph_str(G, self.alphabet)}" for G, c in list(self.terms.items())[:6])
        more = "" if len(self.terms) <= 6 else f" + ... ({len(self.terms)} terms)"
        return f"Chain[{self.family}]({body}{more})"


# --- the pieces on single graphs --------------------------------------------------------


def _split_terms(G: Graph, family: str) -> Iterable[Graph]:
    n = G.n
    for x in range(n):
        items = []
        for i, (u, v) in enumerate(G.edges):
            if u == x and v == x:
                items.append(("t", i, 0))
                items.append(("t", i, 1))
            elif u == x or v == x:
                items.append(("e", i))
        for j, (y, _) in enumerate(G.decos):
            if y == x:
                items.append(("d", j))
        m = len(items)
        if m < 4:
            continue
        rest = items[1:]
        for size in range(2, m - 1):
            for T in itertools.combinations(range(m - 1), size):
                moved_edges = {}
                moved_decos = set()
                tad_halves = defaultdict(int)
                for t in T:
                    it = rest[t]
                    if it[0] == "e":
                        moved_edges[it[1]] = True
                    elif it[0] == "d":
                        moved_decos.add(it[1])
                    else:
                        tad_halves[it[1]] += 1
                if any(h == 1 for h in tad_halves.values()):
                    # a tadpole split across becomes parallel to the new edge
                    continue
                edges = []
                for i, (u, v) in enumerate(G.edges):
                    if i in moved_edges:
                        edges.append((u, n) if v == x else (v, n))
                    elif tad_halves.get(i) == 2:
                        edges.append((n, n))
                    else:
                        edges.append((u, v))
                edges.append((x, n))
                decos = tuple((n, s) if j in moved_decos else (y, s) for j, (y, s) in enumerate(G.decos))
                yield Graph(n + 1, tuple((min(a, b), max(a, b)) for a, b in edges), decos)


def _glue_terms(G: Graph, alphabet: Alphabet, family: str) -> Iterable[Tuple[Graph, int]]:
    odd_pos = [j for j, (_, s) in enumerate(G.decos) if alphabet.is_odd(s)]
    for a in range(len(odd_pos)):
        for b in range(a + 1, len(odd_pos)):
            ja, jb = odd_pos[a], odd_pos[b]
            (xa, sa), (xb, sb) = G.decos[ja], G.decos[jb]
            c = alphabet.pairing(sa, sb)
            if not c:
                continue
            if xa == xb and family != "tadpole":
                continue
            sign = -1 if (a + b - 1) % 2 else 1
            decos = tuple(d for j, d in enumerate(G.decos) if j != ja and j != jb)
            edges = G.edges + ((min(xa, xb), max(xa, xb)),)
            yield Graph(G.n, edges, decos), sign * c


def _glue_omega_terms(G: Graph, alphabet: Alphabet) -> Iterable[Tuple[Graph, int]]:
    w = alphabet.omega
    for j, (x, s) in enumerate(G.decos):
        if s != w:
            continue
        decos = G.decos[:j] + G.decos[j + 1:]
        for u in range(G.n):
            if u != x:
                yield Graph(G.n, G.edges + ((min(x, u), max(x, u)),), decos), 1


def _z_terms(G: Graph, alphabet: Alphabet) -> Iterable[Tuple[Graph, int]]:
    w = alphabet.omega
    n = G.n
    for j, (x, s) in enumerate(G.decos):
        if s != w:
            continue
        decos = G.decos[:j] + G.decos[j + 1:]
        edges = G.edges + ((x, n),)
        for i in range(alphabet.g):
            a, b = 2 * i, 2 * i + 1
            yield Graph(n + 1, edges, decos + ((n, a), (n, b))), 1
            yield Graph(n + 1, edges, decos + ((n, b), (n, a))), -1


def split_graph(G: Graph, alphabet: Alphabet, family: str) -> Chain:
    out = Chain(alphabet, family)
    for H in _split_terms(G, family):
        out.add_graph(H, 1)
    return out


def glue_graph(G: Graph, alphabet: Alphabet, family: str) -> Chain:
    if not alphabet.has_pairing:
        raise ValueError("gluing needs an alphabet with a pairing")
    out = Chain(alphabet, family)
    for H, c in _glue_terms(G, alphabet, family):
        out.add_graph(H, c)
    return out


def glue_omega_graph(G: Graph, alphabet: Alphabet, family: str) -> Chain:
    out = Chain(alphabet, family)
    for H, c in _glue_omega_terms(G, alphabet):
        out.add_graph(H, C_OMEGA * c)
    return out


def z_graph(G: Graph, alphabet: Alphabet, family: str) -> Chain:
    if alphabet.kind != "extended":
        raise ValueError("delta_Z needs the extended alphabet")
    out = Chain(alphabet, family)
    for H, c in _z_terms(G, alphabet):
        out.add_graph(H, C_Z * c)
    return out


COMPONENTS = ("split", "glue", "glue_omega", "Z")

_GRAPH_OPS: Dict[str, Callable] = {
    "split": split_graph,
    "glue": glue_graph,
    "glue_omega": glue_omega_graph,
    "Z": z_graph,
}


def components_for(family: str) -> Tuple[str, ...]:
    if family == "hairy":
        return ("split",)
    if family == "extended":
        return COMPONENTS
    return ("split", "glue")


def _linear(op: Callable, x: Chain) -> Chain:
    out = Chain(x.alphabet, x.family)
    for G, c in x.terms.items():
        for H, d in op(G, x.alphabet, x.family).terms.items():
            out._add(H, c * d)
    return out


def delta_split(x: Chain) -> Chain:
    return _linear(split_graph, x)


def delta_glue(x: Chain) -> Chain:
    if not x.alphabet.has_pairing:
        raise ValueError("gluing needs an alphabet with a pairing")
    return _linear(glue_graph, x)


def delta_glue_omega(x: Chain) -> Chain:
    return _linear(glue_omega_graph, x)


def delta_Z(x: Chain) -> Chain:
    if x.alphabet.kind != "extended":
        raise ValueError("delta_Z needs the extended alphabet")
    return _linear(z_graph, x)


def delta(x: Chain) -> Chain:
    """Total differential of the family."""
    out = Chain(x.alphabet, x.family)
    for comp in components_for(x.family):
        out = out + _linear(_GRAPH_OPS[comp], x)
    return out


# --- Lie bracket --------------------------------------------------------------------------


def _bracket_graphs(G: Graph, H: Graph, alphabet: Alphabet, family: str) -> Chain:
    out = Chain(alphabet, family)
    n = G.n
    odd_g = [d for d in G.decos if alphabet.is_odd(d[1])]
    odd_h = [d for d in H.decos if alphabet.is_odd(d[1])]
    even_g = [d for d in G.decos if not alphabet.is_odd(d[1])]
    even_h = [(x + n, s) for x, s in H.decos if not alphabet.is_odd(s)]
    # orientation of the disjoint union: E_G D_G E_H D_H, rewritten in block form
    koszul = -1 if (len(H.edges) * len(odd_g)) % 2 else 1
    h_edges = tuple((u + n, v + n) for u, v in H.edges)
    union_odd = odd_g + [(x + n, s) for x, s in odd_h]
    # normalization making the bracket a graded Lie bracket in the degree k
    # for which the total differential is a derivation
    kG = grading(G, alphabet).k
    twist = -1 if (kG + len(G.edges) * len(H.edges)) % 2 else 1
    for a, (xa, sa) in enumerate(odd_g):
        for b0, (xb, sb) in enumerate(odd_h):
            c = alphabet.pairing(sa, sb)
            if not c:
                continue
            b = len(odd_g) + b0
            sign = -1 if (a + b - 1) % 2 else 1
            decos = tuple(d for i, d in enumerate(union_odd) if i != a and i != b)
            edges = G.edges + h_edges + ((xa, xb + n),)
            graph = Graph(n + H.n, edges, decos + tuple(even_g) + tuple(even_h))
            out.add_graph(graph, koszul * sign * c * twist)
    return out


def lie_bracket(x: Chain, y: Chain) -> Chain:
    x._compatible(y)
    if not x.alphabet.has_pairing:
        raise ValueError("the bracket needs an alphabet with a pairing")
    out = Chain(x.alphabet, x.family)
    for G, c in x.terms.items():
        for H, d in y.terms.items():
            for K, e in _bracket_graphs(G, H, x.alphabet, x.family).terms.items():
                out._add(K, c * d * e)
    return out


# --- osp^nil part of the extended algebra --------------------------------------------------------


class ExtendedElement:
    """A chain of the extended family together with an osp^nil component.

    The osp^nil part is recorded as the image of the top class w inside H_1,
    a map {symbol: coefficient}; elements of osp^nil have loop order zero.
    ``act`` substitutes w by that class in every decoration slot.
    """

    def __init__(self, chain: Chain, osp: Optional[Dict[int, object]] = None):
        if chain.alphabet.kind != "extended":
            raise ValueError("extended alphabet required")
        self.chain = chain
        self.osp = {s: c for s, c in (osp or {}).items() if c}
        for s in self.osp:
            if not chain.alphabet.is_odd(s):
                raise ValueError("osp^nil maps w into H_1")

    @property
    def loop_order_of_osp(self) -> int:
        return 0

    def act(self, x: Chain) -> Chain:
        """Derivation action of the osp^nil part on a chain: w -> sum c_s s."""
        w = x.alphabet.omega
        out = Chain(x.alphabet, x.family)
        for G, c in x.terms.items():
            for j, (v, s) in enumerate(G.decos):
                if s != w:
                    continue
                for t, ct in self.osp.items():
                    decos = G.decos[:j] + G.decos[j + 1:] + ((v, t),)
                    out.add_graph(Graph(G.n, G.edges, decos), c * ct)
        return out

    def __add__(self, other: "ExtendedElement") -> "ExtendedElement":
        osp = dict(self.osp)
        for s, c in other.osp.items():
            osp[s] = osp.get(s, 0) + c
        return ExtendedElement(self.chain + other.chain, osp)


# --- slices ----------------------------------------------------------------------------------


def max_loop(W: int, alphabet: Alphabet) -> int:
    """Largest loop order with nonnegative decoration degree at weight W."""
    return W // 2 + 1


def _torus_weight(content, alphabet: Alphabet) -> Tuple[int, ...]:
    w = [0] * alphabet.g
    for s in content:
        i, c = alphabet.torus_weight(s)
        if i >= 0:
            w[i] += c
    return tuple(w)


class ComplexSlice:
    """Graded bases and differential matrices of one weight of a family.

    ``loops`` is the set of loop orders kept; ``components`` the differential
    pieces used.  ``restrict`` optionally cuts the chain groups to a union of
    decoration contents (a subcomplex whenever the kept pieces preserve it).
    Matrices ``matrix(k)`` map degree k to degree k+1 in the ordered bases.
    """

    def __init__(self, family: str, alphabet: Alphabet, W: int, loops: Sequence[int],
                 components: Sequence[str], contents: Optional[Sequence[Tuple[int, ...]]] = None,
                 label: str = ""):
        self.family = family
        self.alphabet = alphabet
        self.W = W
        self.loops = tuple(sorted(loops))
        self.components = tuple(components)
        self.label = label
        self.bases: Dict[int, List[Graph]] = {}
        graded: Dict[int, List[Graph]] = defaultdict(list)
        for loop in self.loops:
            if contents is None:
                graphs = enumerate_basis(family, alphabet, W, loop)
            else:
                D = W - 2 * (loop - 1)
                graphs = []
                for c in contents:
                    if sum(alphabet.degree(s) for s in c) == D:
                        graphs.extend(enumerate_basis(family, alphabet, W, loop, content=c))
            for G in graphs:
                graded[G.e - W + 1].append(G)
        for k in sorted(graded):
            self.bases[k] = graded[k]
        self.index = {k: {G: i for i, G in enumerate(b)} for k, b in self.bases.items()}
        self._mats: Dict[Tuple[str, int], SparseMatrix] = {}

    @property
    def degrees(self) -> List[int]:
        return sorted(self.bases)

    def dim(self, k: int) -> int:
        return len(self.bases.get(k, ()))

    def component_matrix(self, comp: str, k: int) -> SparseMatrix:
        key = (comp, k)
        M = self._mats.get(key)
        if M is not None:
            return M
        src = self.bases.get(k, [])
        tgt_index = self.index.get(k + 1, {})
        op = _GRAPH_OPS[comp]
        cols = []
        for G in src:
            col = {}
            for H, c in op(G, self.alphabet, self.family).terms.items():
                if H.loop_order not in self.loops:
                    continue
                i = tgt_index.get(H)
                if i is None:
                    raise KeyError(f"{comp} image {graph_str(H, self.alphabet)} missing from the slice basis")
                col[i] = col.get(i, 0) + c
            cols.append({i: c for i, c in col.items() if c})
        M = SparseMatrix.from_columns(len(tgt_index), cols)
        self._mats[key] = M
        return M

    def matrix(self, k: int) -> SparseMatrix:
        key = ("total", k)
        M = self._mats.get(key)
        if M is not None:
            return M
        M = SparseMatrix(self.dim(k + 1), self.dim(k))
        for comp in self.components:
            M = M + self.component_matrix(comp, k)
        self._mats[key] = M
        return M

    def d_squared_zero(self) -> bool:
        for k in self.degrees:
            if not (self.matrix(k + 1) @ self.matrix(k)).is_zero():
                return False
        return True

    def vector(self, k: int, x: Chain) -> List:
        idx = self.index.get(k, {})
        v = [0] * len(idx)
        for G, c in x.terms.items():
            i = idx.get(G)
            if i is None:
                raise KeyError(f"{graph_str(G, self.alphabet)} not in degree {k}")
            v[i] = c
        return v

    def chain(self, k: int, vec: Sequence) -> Chain:
        out = Chain(self.alphabet, self.family)
        for i, c in enumerate(vec):
            if c:
                out.terms[self.bases[k][i]] = c
        return out

    def __repr__(self):
        dims = {k: len(b) for k, b in self.bases.items()}
        return f"ComplexSlice({self.family}, {self.alphabet}, W={self.W}, loops={self.loops}, dims={dims})"


def parse_loop_spec(spec, W: int) -> Tuple[str, int]:
    if isinstance(spec, tuple):
        return spec
    spec = str(spec).replace(" ", "")
    for op in ("<=", ">=", "="):
        if spec.startswith(op):
            return op, int(spec[len(op):])
    if spec == "all":
        return ">=", 0
    return "=", int(spec)


def build_slice(family: str, alphabet: Alphabet, W: int, loop_spec="all", contents=None,
                torus_weight: Optional[Tuple[int, ...]] = None) -> ComplexSlice:
    """Slice of one weight.

    loop_spec is "=l" (associated graded: loop-preserving pieces only), "<=l"
    (quotient: glue terms landing above l dropped), ">=l" (subcomplex) or "all".
    ``torus_weight`` restricts to the decoration contents of one weight of the
    maximal torus of Sp(2g), which every piece of the differential preserves.
    """
    op, l = parse_loop_spec(loop_spec, W)
    top = max_loop(W, alphabet)
    if op == "=":
        loops = [l]
        comps = tuple(c for c in components_for(family) if c in ("split", "Z"))
    elif op == "<=":
        loops = list(range(0, l + 1))
        comps = components_for(family)
    else:
        loops = list(range(l, top + 1))
        comps = components_for(family)
    if torus_weight is not None:
        if family == "hairy":
            raise ValueError("torus weights are not defined for hairy slices")
        tw = tuple(torus_weight)
        cands = set()
        for loop in loops:
            D = W - 2 * (loop - 1)
            if D < 0:
                continue
            for c in contents_for(alphabet, D):
                if _torus_weight(c, alphabet) == tw:
                    cands.add(c)
        contents = sorted(cands) if contents is None else [c for c in contents if tuple(sorted(c)) in cands]
    return ComplexSlice(family, alphabet, W, loops, comps, contents, label=f"{op}{l}")
