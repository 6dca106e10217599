"""Decorated graphs, canonical labeling with orientation signs, enumeration.

A graph is stored as ``Graph(n, edges, decos)``:

* ``n`` vertices labelled ``0..n-1``;
* ``edges`` a tuple of pairs ``(u, v)`` with ``u <= v`` (``u == v`` is a tadpole);
* ``decos`` a tuple of pairs ``(vertex, symbol)``.

The tuple order *is* the orientation.  The odd orientation objects are the
edges (in tuple order) followed by the odd decorations (in tuple order);
reordering them multiplies the chain by the sign of the permutation.  Even
decorations (the top class) carry no orientation.

Canonical graphs have sorted edges and decorations sorted by (vertex, symbol).
"""

from __future__ import annotations

import itertools
import math
import struct
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

FAMILIES = ("plain", "tadpole", "extended", "hairy")
_FAMILY_TAG = {f: i for i, f in enumerate(FAMILIES)}


class Alphabet:
    """Decoration symbols, their homological degrees and the intersection pairing.

    symplectic(g): a_i = 2(i-1), b_i = 2(i-1)+1, all of degree 1.
    extended(g):   additionally the top class w = 2g of degree 2 (even).
    hairy(r):      hair labels 1..r stored as symbols 0..r-1, degree 1, no pairing.
    """

    def __init__(self, kind: str, g: int = 0, r: int = 0):
        if kind not in ("symplectic", "extended", "hairy"):
            raise ValueError(f"unknown alphabet kind {kind!r}")
        self.kind = kind
        self.g = g
        self.r = r
        if kind == "hairy":
            self.symbols = tuple(range(r))
            self.omega = None
        else:
            self.symbols = tuple(range(2 * g)) + ((2 * g,) if kind == "extended" else ())
            self.omega = 2 * g if kind == "extended" else None

    @classmethod
    def symplectic(cls, g):
        return cls("symplectic", g=g)

    @classmethod
    def extended(cls, g):
        return cls("extended", g=g)

    @classmethod
    def hairy(cls, r):
        return cls("hairy", r=r)

    @property
    def has_pairing(self) -> bool:
        return self.kind != "hairy"

    def is_odd(self, s: int) -> bool:
        return s != self.omega

    def degree(self, s: int) -> int:
        return 2 if s == self.omega else 1

    def pairing(self, s: int, t: int) -> int:
        if self.kind == "hairy" or s == self.omega or t == self.omega:
            return 0
        if s // 2 != t // 2 or s == t:
            return 0
        return 1 if s % 2 == 0 else -1

    def partner(self, s: int) -> Optional[int]:
        if self.kind == "hairy" or s == self.omega:
            return None
        return s ^ 1

    def torus_weight(self, s: int) -> Tuple[int, int]:
        """(index, +1/-1) for a_i/b_i; (−1, 0) for the top class."""
        if s == self.omega:
            return (-1, 0)
        return (s // 2, 1 if s % 2 == 0 else -1)

    def name(self, s: int) -> str:
        if self.kind == "hairy":
            return f"h{s + 1}"
        if s == self.omega:
            return "w"
        return ("a" if s % 2 == 0 else "b") + str(s // 2 + 1)

    def parse(self, name: str) -> int:
        if name == "w" and self.omega is not None:
            return self.omega
        head, idx = name[0], int(name[1:])
        if self.kind == "hairy":
            if head != "h" or not 1 <= idx <= self.r:
                raise ValueError(name)
            return idx - 1
        if head not in "ab" or not 1 <= idx <= self.g:
            raise ValueError(name)
        return 2 * (idx - 1) + (0 if head == "a" else 1)

    def key(self) -> tuple:
        return (self.kind, self.g, self.r)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Alphabet.{self.kind}({self.r if self.kind == 'hairy' else self.g})"


class Graph(NamedTuple):
    n: int
    edges: Tuple[Tuple[int, int], ...]
    decos: Tuple[Tuple[int, int], ...] = ()

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def loop_order(self) -> int:
        return len(self.edges) - self.n + 1

    def tadpoles(self) -> int:
        return sum(1 for u, v in self.edges if u == v)

    def valences(self) -> List[int]:
        val = [0] * self.n
        for u, v in self.edges:
            val[u] += 1
            val[v] += 1
        for x, _ in self.decos:
            val[x] += 1
        return val


def make_graph(n: int, edges: Iterable[Sequence[int]], decos: Iterable[Sequence[int]] = ()) -> Graph:
    return Graph(n, tuple((min(u, v), max(u, v)) for u, v in edges), tuple((int(x), int(s)) for x, s in decos))


class GradingData(NamedTuple):
    W: int
    loop: int
    k: int
    e: int
    D: int


def grading(G: Graph, alphabet: Alphabet) -> GradingData:
    D = sum(alphabet.degree(s) for _, s in G.decos)
    W = 2 * (G.e - G.n) + D
    return GradingData(W, G.e - G.n + 1, G.e - W + 1, G.e, D)


def is_connected(n: int, edges) -> bool:
    if n == 0:
        return False
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def validate(G: Graph, family: str = "tadpole") -> None:
    """Raise ValueError unless G is a connected graph with all valences >= 3."""
    if not is_connected(G.n, G.edges):
        raise ValueError("graph is not connected")
    if min(G.valences()) < 3:
        raise ValueError("vertex of valence < 3")
    if family != "tadpole" and G.tadpoles():
        raise ValueError(f"tadpole in tadpole-free family {family}")
    for u, v in G.edges:
        if not (0 <= u <= v < G.n):
            raise ValueError(f"bad edge {(u, v)}")


# --- canonical labeling ------------------------------------------------------------


def _refine(colors: List[int], nbrs: List[List[int]]) -> List[int]:
    ncol = len(set(colors))
    n = len(colors)
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in nbrs[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == ncol:
            return colors
        ncol = len(ranks)


def _search(n: int, nbrs: List[List[int]], init: List[int], edges) -> Tuple[tuple, List[int], List[List[int]]]:
    """Individualization-refinement over the full search tree.

    Returns (best certificate, best labeling, all labelings attaining it).
    A labeling maps old vertex -> new position.
    """
    best_cert = None
    best: List[List[int]] = []
    stack = [_refine(init, nbrs)]
    while stack:
        colors = stack.pop()
        counts: Dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = None
        for c in sorted(counts):
            if counts[c] > 1:
                target = c
                break
        if target is None:
            cert = tuple(sorted((min(colors[u], colors[v]), max(colors[u], colors[v])) for u, v in edges))
            if best_cert is None or cert < best_cert:
                best_cert = cert
                best = [colors]
            elif cert == best_cert:
                best.append(colors)
            continue
        cell = [v for v in range(n) if colors[v] == target]
        for v in reversed(cell):
            ind = [2 * c + (0 if u == v else 1) for u, c in enumerate(colors)]
            stack.append(_refine(ind, nbrs))
    return best_cert, best[0], best


def _perm_parity(keys: Sequence) -> int:
    """Sign of the permutation sorting ``keys`` (distinct); 0 on ties."""
    m = len(keys)
    order = sorted(range(m), key=lambda i: keys[i])
    for a, b in zip(order, order[1:]):
        if keys[a] == keys[b]:
            return 0
    seen = [False] * m
    sign = 1
    for i in range(m):
        if not seen[i]:
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = order[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


class CanonicalForm(NamedTuple):
    graph: Optional[Graph]
    sign: int
    encoding: bytes

    @property
    def is_zero(self) -> bool:
        return self.graph is None


ZERO = CanonicalForm(None, 0, b"")


def encode(G: Graph, family: str = "plain") -> bytes:
    """Length-prefixed little-endian encoding (family, v, edges, decorations)."""
    out = [struct.pack("<BH", _FAMILY_TAG[family], G.n), struct.pack("<H", len(G.edges))]
    out.extend(struct.pack("<HH", u, v) for u, v in G.edges)
    out.append(struct.pack("<H", len(G.decos)))
    out.extend(struct.pack("<HH", x, s) for x, s in G.decos)
    body = b"".join(out)
    return struct.pack("<I", len(body)) + body


def decode(data: bytes) -> Tuple[Graph, str]:
    (length,) = struct.unpack_from("<I", data, 0)
    if length != len(data) - 4:
        raise ValueError("length prefix mismatch")
    tag, n = struct.unpack_from("<BH", data, 4)
    off = 7
    (ne,) = struct.unpack_from("<H", data, off)
    off += 2
    edges = []
    for _ in range(ne):
        edges.append(struct.unpack_from("<HH", data, off))
        off += 4
    (nd,) = struct.unpack_from("<H", data, off)
    off += 2
    decos = []
    for _ in range(nd):
        decos.append(struct.unpack_from("<HH", data, off))
        off += 4
    return Graph(n, tuple(edges), tuple(decos)), FAMILIES[tag]


class _Labeling(NamedTuple):
    label: List[int]
    autos: List[Tuple[int, ...]]


def _label(G: Graph) -> _Labeling:
    n = G.n
    nbrs: List[List[int]] = [[] for _ in range(n)]
    loops = [0] * n
    for u, v in G.edges:
        if u == v:
            loops[u] += 1
        else:
            nbrs[u].append(v)
            nbrs[v].append(u)
    dec: List[List[int]] = [[] for _ in range(n)]
    for x, s in G.decos:
        dec[x].append(s)
    keys = [(tuple(sorted(dec[v])), loops[v], len(nbrs[v])) for v in range(n)]
    rank = {k: i for i, k in enumerate(sorted(set(keys)))}
    init = [rank[k] for k in keys]
    plain_edges = [(u, v) for u, v in G.edges if u != v]
    _, lab, leaves = _search(n, nbrs, init, plain_edges)
    inv = [0] * n
    for v, p in enumerate(lab):
        inv[p] = v
    autos = [tuple(inv[leaf[v]] for v in range(n)) for leaf in leaves]
    return _Labeling(lab, autos)


def _orientation_sign(G: Graph, perm: Sequence[int], alphabet: Alphabet) -> int:
    """Sign of the permutation of the orientation set induced by a vertex automorphism."""
    idx = {e: i for i, e in enumerate(G.edges)}
    img = []
    for u, v in G.edges:
        a, b = perm[u], perm[v]
        img.append(idx[(min(a, b), max(a, b))])
    odd = [(x, s) for x, s in G.decos if alphabet.is_odd(s)]
    didx = {d: i for i, d in enumerate(odd)}
    dimg = [didx[(perm[x], s)] for x, s in odd]
    return _perm_parity(img) * _perm_parity(dimg)


def _has_duplicates(G: Graph, alphabet: Alphabet) -> bool:
    if len(set(G.edges)) != len(G.edges):
        return True
    odd = [d for d in G.decos if alphabet.is_odd(d[1])]
    return len(set(odd)) != len(odd)


_CANON_CACHE: Dict[Tuple[Graph, tuple, str], CanonicalForm] = {}


def canonical_form(G: Graph, alphabet: Alphabet, family: str = "plain") -> CanonicalForm:
    """Canonical representative of G together with the orientation sign, or ZERO."""
    key = (G, alphabet.key(), family)
    hit = _CANON_CACHE.get(key)
    if hit is not None:
        return hit
    res = _canonical_form(G, alphabet, family)
    if len(_CANON_CACHE) > 2_000_000:
        _CANON_CACHE.clear()
    _CANON_CACHE[key] = res
    return res


def _canonical_form(G: Graph, alphabet: Alphabet, family: str) -> CanonicalForm:
    G = Graph(G.n, tuple((min(u, v), max(u, v)) for u, v in G.edges), G.decos)
    if _has_duplicates(G, alphabet):
        return ZERO
    lab = _label(G)
    for a in lab.autos:
        if _orientation_sign(G, a, alphabet) < 0:
            return ZERO
    L = lab.label
    new_edges = [(min(L[u], L[v]), max(L[u], L[v])) for u, v in G.edges]
    sign = _perm_parity(new_edges)
    odd_new = [(L[x], s) for x, s in G.decos if alphabet.is_odd(s)]
    sign *= _perm_parity(odd_new)
    decos = tuple(sorted((L[x], s) for x, s in G.decos))
    H = Graph(G.n, tuple(sorted(new_edges)), decos)
    return CanonicalForm(H, sign, encode(H, family))


class AutomorphismData(NamedTuple):
    order: int
    generators: List[Tuple[int, ...]]
    odd: bool


def automorphisms(G: Graph, alphabet: Alphabet) -> AutomorphismData:
    """Automorphism group of a decorated graph.

    The order counts vertex automorphisms times the permutations of parallel
    edges and of identical decorations at a vertex.  ``odd`` reports whether
    some automorphism acts by an odd permutation on the orientation set.
    """
    G = Graph(G.n, tuple((min(u, v), max(u, v)) for u, v in G.edges), G.decos)
    mult: Dict[Tuple[int, int], int] = {}
    for e in G.edges:
        mult[e] = mult.get(e, 0) + 1
    dmult: Dict[Tuple[int, int], int] = {}
    for d in G.decos:
        dmult[d] = dmult.get(d, 0) + 1
    autos = _label(G).autos
    order = len(autos)
    for m in mult.values():
        order *= math.factorial(m)
    for m in dmult.values():
        order *= math.factorial(m)
    odd = _has_duplicates(G, alphabet)
    if not odd:
        odd = any(_orientation_sign(G, a, alphabet) < 0 for a in autos)
    return AutomorphismData(order, _generating_set(autos, G.n), odd)


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def _generating_set(elements: List[Tuple[int, ...]], n: int) -> List[Tuple[int, ...]]:
    ident = tuple(range(n))
    group = {ident}
    gens = []
    for a in elements:
        if a in group:
            continue
        gens.append(a)
        frontier = list(group)
        while frontier:
            new = []
            for x in frontier:
                for s in gens:
                    y = _compose(s, x)
                    if y not in group:
                        group.add(y)
                        new.append(y)
            frontier = new
    return gens


def vertex_automorphisms(G: Graph) -> List[Tuple[int, ...]]:
    """All vertex permutations preserving edges and decoration multisets."""
    return _label(G).autos


# --- relabeling and the hair action --------------------------------------------------


def relabel(G: Graph, perm: Sequence[int]) -> Graph:
    """Rename vertex v to perm[v], keeping the orientation order of all items."""
    return Graph(G.n, tuple((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in G.edges),
                 tuple((perm[x], s) for x, s in G.decos))


def act_symmetric_group(G: Graph, sigma: Sequence[int], alphabet: Alphabet) -> CanonicalForm:
    """Rename hair symbol s to sigma[s] (0-based) and canonicalize."""
    if alphabet.kind != "hairy":
        raise ValueError("symmetric group acts on hairy graphs only")
    H = Graph(G.n, G.edges, tuple((x, sigma[s]) for x, s in G.decos))
    return canonical_form(H, alphabet, "hairy")


# --- enumeration --------------------------------------------------------------------


def _canon_simple(n: int, edges) -> Tuple[Tuple[int, int], ...]:
    G = Graph(n, tuple(edges), ())
    L = _label(G).label
    return tuple(sorted((min(L[u], L[v]), max(L[u], L[v])) for u, v in edges))


@lru_cache(maxsize=None)
def connected_cores(n: int, e: int) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """Connected simple graphs with n vertices and e edges, up to isomorphism."""
    if n <= 0 or e < n - 1 or e > n * (n - 1) // 2:
        return ()
    if n == 1:
        return ((),)
    found = set()
    # a connected graph is a tree with a leaf removed ... or has a non-bridge edge
    if e >= n:
        for core in connected_cores(n, e - 1):
            present = set(core)
            for u in range(n):
                for v in range(u + 1, n):
                    if (u, v) not in present:
                        found.add(_canon_simple(n, core + ((u, v),)))
    for core in connected_cores(n - 1, e - 1):
        for u in range(n - 1):
            found.add(_canon_simple(n, core + ((u, n - 1),)))
    return tuple(sorted(found))


def _distribute(content: Tuple[int, ...], counts: Sequence[int], alphabet: Alphabet) -> Iterator[List[Tuple[int, ...]]]:
    """Ways of splitting a symbol multiset into per-vertex multisets of given sizes.

    Odd symbols never repeat at a single vertex (such graphs are zero).
    """
    items: Dict[int, int] = {}
    for s in content:
        items[s] = items.get(s, 0) + 1
    symbols = sorted(items)
    nv = len(counts)

    def rec(si: int, remaining: List[int], acc: List[List[int]]):
        if si == len(symbols):
            if all(r == 0 for r in remaining):
                yield [tuple(a) for a in acc]
            return
        s = symbols[si]
        m = items[s]
        odd = alphabet.is_odd(s)
        for split in _compositions(m, remaining, 1 if odd else m):
            for v in range(nv):
                remaining[v] -= split[v]
                acc[v].extend([s] * split[v])
            yield from rec(si + 1, remaining, acc)
            for v in range(nv):
                remaining[v] += split[v]
                if split[v]:
                    del acc[v][-split[v]:]

    yield from rec(0, list(counts), [[] for _ in range(nv)])


def _compositions(m: int, caps: Sequence[int], maxeach: int) -> Iterator[List[int]]:
    nv = len(caps)
    out = [0] * nv

    def rec(i, left):
        if i == nv:
            if left == 0:
                yield list(out)
            return
        for c in range(min(left, caps[i], maxeach), -1, -1):
            out[i] = c
            yield from rec(i + 1, left - c)
        out[i] = 0

    yield from rec(0, m)


def _count_vectors(needs: Sequence[int], total: int) -> Iterator[List[int]]:
    nv = len(needs)
    base = sum(needs)
    if base > total:
        return
    extra = total - base
    for comp in _compositions(extra, [extra] * nv, extra):
        yield [needs[i] + comp[i] for i in range(nv)]


def contents_for(alphabet: Alphabet, D: int, n_omega: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Symbol multisets of total degree D; the top class counts with degree 2."""
    odd = [s for s in alphabet.symbols if alphabet.is_odd(s)]
    omegas = range(0, D // 2 + 1) if alphabet.omega is not None else [0]
    if n_omega is not None:
        omegas = [n_omega] if alphabet.omega is not None or n_omega == 0 else []
    for q in omegas:
        for combo in itertools.combinations_with_replacement(odd, D - 2 * q):
            yield tuple(sorted(combo + (alphabet.omega,) * q))


def enumerate_basis(family: str, alphabet: Alphabet, W: int, loop: int, k: Optional[int] = None,
                    content: Optional[Tuple[int, ...]] = None) -> List[Graph]:
    """All nonzero canonical graphs of the family with weight W, loop order ``loop``
    and degree k (all degrees when k is None), optionally of fixed decoration content.

    For the hairy family the content is forced to be every hair exactly once.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if (family == "hairy") != (alphabet.kind == "hairy"):
        raise ValueError("hairy family needs the hairy alphabet and conversely")
    if family == "extended" and alphabet.kind != "extended":
        raise ValueError("extended family needs the extended alphabet")
    D = W - 2 * (loop - 1)
    if D < 0 or loop < 0:
        return []
    if family == "hairy":
        if D != alphabet.r:
            return []
        contents = [tuple(range(alphabet.r))]
    elif content is not None:
        if sum(alphabet.degree(s) for s in content) != D:
            return []
        contents = [tuple(sorted(content))]
    else:
        contents = list(contents_for(alphabet, D))
    out: Dict[bytes, Graph] = {}
    for cont in contents:
        for G in _enumerate_content(family, alphabet, loop, cont):
            if k is not None and G.e - W + 1 != k:
                continue
            cf = canonical_form(G, alphabet, family)
            if not cf.is_zero:
                out.setdefault(cf.encoding, cf.graph)
    return [out[key] for key in sorted(out, key=lambda b: (len(b), b))]


def _enumerate_content(family: str, alphabet: Alphabet, loop: int, content: Tuple[int, ...]) -> Iterator[Graph]:
    nsym = len(content)
    allow_tp = family == "tadpole"
    # 3v <= 2e + nsym with e = v + loop - 1
    vmax = 2 * loop - 2 + nsym
    for n in range(1, vmax + 1):
        e = n + loop - 1
        for t in range(0, (min(n, loop) if allow_tp else 0) + 1):
            ecore = e - t
            for core in connected_cores(n, ecore):
                yield from _decorate_core(n, core, t, content, alphabet)


def _decorate_core(n: int, core, t: int, content, alphabet) -> Iterator[Graph]:
    deg = [0] * n
    for u, v in core:
        deg[u] += 1
        deg[v] += 1
    autos = _label(Graph(n, core, ())).autos
    for tp in itertools.combinations(range(n), t):
        d2 = list(deg)
        for x in tp:
            d2[x] += 2
        edges = tuple(core) + tuple((x, x) for x in tp)
        needs = [max(0, 3 - d) for d in d2]
        seen_counts = set()
        for counts in _count_vectors(needs, len(content)):
            # skip count vectors equivalent under core automorphisms fixing the tadpoles
            if t == 0:
                key = min(tuple(counts[a[v]] for v in range(n)) for a in autos)
                if key in seen_counts:
                    continue
                seen_counts.add(key)
            for assignment in _distribute(content, counts, alphabet):
                decos = tuple((v, s) for v in range(n) for s in assignment[v])
                yield Graph(n, edges, decos)


def naive_basis(family: str, alphabet: Alphabet, W: int, loop: int, max_mult: int = 2) -> List[Graph]:
    """Brute-force oracle: all multigraphs on few vertices, filtered and canonicalized."""
    D = W - 2 * (loop - 1)
    if D < 0:
        return []
    out: Dict[bytes, Graph] = {}
    contents = [tuple(range(alphabet.r))] if family == "hairy" else list(contents_for(alphabet, D))
    for cont in contents:
        nsym = len(cont)
        for n in range(1, 2 * loop - 2 + nsym + 1):
            e = n + loop - 1
            pairs = [(u, v) for u in range(n) for v in range(u, n) if family == "tadpole" or u != v]
            for multi in itertools.combinations_with_replacement(pairs, e):
                if any(multi.count(p) > max_mult for p in set(multi)):
                    continue
                if not is_connected(n, multi):
                    continue
                for assign in itertools.product(range(n), repeat=nsym):
                    decos = tuple(zip(assign, cont))
                    G = Graph(n, tuple(multi), decos)
                    if min(G.valences()) < 3:
                        continue
                    cf = canonical_form(G, alphabet, family)
                    if not cf.is_zero:
                        out.setdefault(cf.encoding, cf.graph)
    return [out[key] for key in sorted(out, key=lambda b: (len(b), b))]


def graph_str(G: Graph, alphabet: Alphabet) -> str:
    edges = " ".join(f"{u}-{v}" for u, v in G.edges)
    decos = " ".join(f"{alphabet.name(s)}@{x}" for x, s in G.decos)
    return f"<{G.n}v | {edges} | {decos}>"
