"""Partitions and the representation-theoretic arithmetic built on them.

Everything here is exact integer arithmetic: Littlewood-Richardson
coefficients, symmetric-group characters (Murnaghan-Nakayama), the stable
GL(2g) -> Sp(2g) branching multiplicities and the Weyl dimension formulas.
Young's seminormal matrices are provided modulo a prime for the equivariant
linear algebra of hairy graph complexes.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Tuple

import numpy as np


class Partition(tuple):
    """A Young diagram, stored as a weakly decreasing tuple of positive parts."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        parts = tuple(p for p in parts if p != 0) if parts and parts[-1] == 0 else parts
        for i, p in enumerate(parts):
            if p <= 0:
                raise ValueError(f"non-positive part in {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def rows(self) -> int:
        return len(self)

    def transpose(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    T = property(transpose)

    def contains(self, other: "Partition") -> bool:
        if len(other) > len(self):
            return False
        return all(o <= s for o, s in zip(other, self))

    def cells(self) -> Iterator[Tuple[int, int]]:
        for i, p in enumerate(self):
            for j in range(p):
                yield i, j

    def hook_lengths(self) -> List[int]:
        conj = self.transpose()
        return [self[i] - j + conj[j] - i - 1 for i, j in self.cells()]

    def sort_key(self):
        # larger diagrams first, then lexicographically descending
        return (-self.size, tuple(-p for p in self))

    def paper_str(self) -> str:
        """Exponent notation: (2,1,1) -> '21^2', () -> '0'."""
        if not self:
            return "0"
        sep = "," if self[0] >= 10 else ""
        out = []
        i = 0
        while i < len(self):
            j = i
            while j < len(self) and self[j] == self[i]:
                j += 1
            m = j - i
            exp = "" if m == 1 else (f"^{m}" if m < 10 else f"^{{{m}}}")
            out.append(str(self[i]) + exp)
            i = j
        return sep.join(out)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Inverse of ``paper_str``; also accepts '2,1,1'.

        Bare exponents are single digits ('3^22' is (3,3,2)); longer ones need braces.
        """
        t = text.strip().strip("[]").replace(" ", "")
        if t in ("", "0"):
            return cls(())
        if "^" not in t and "," in t:
            return cls(sorted((int(x) for x in t.split(",")), reverse=True))
        base = r"(\d+)" if "," in t else r"(\d)"
        parts: List[int] = []
        for b, e in re.findall(base + r"(?:\^(\{\d+\}|\d))?", t):
            parts.extend([int(b)] * (int(e.strip("{}")) if e else 1))
        return cls(parts)

    def __repr__(self):
        return f"Partition({tuple(self)!r})"


def partitions_of(n: int, max_part: int | None = None) -> List[Partition]:
    """All partitions of n, lexicographically descending."""
    if max_part is None:
        max_part = n
    return [Partition(p) for p in _partitions(n, max_part)]


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def schur_weyl_partitions(r: int) -> List[Partition]:
    """Index set of the Schur-Weyl decomposition of a tensor power of rank r."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return partitions_of(r)


class MultiplicityVector:
    """Finitely supported integer function on partitions.

    Represents a (virtual) representation by its multiplicities.  Zero
    entries are never stored and iteration follows ``Partition.sort_key``.
    """

    __slots__ = ("_d",)

    def __init__(self, data=None):
        self._d: Dict[Partition, int] = {}
        if data:
            items = data.items() if hasattr(data, "items") else data
            for k, v in items:
                self.add(Partition(k), int(v))

    def add(self, p: Partition, m: int) -> None:
        if not m:
            return
        p = Partition(p)
        v = self._d.get(p, 0) + m
        if v:
            self._d[p] = v
        else:
            self._d.pop(p, None)

    def __getitem__(self, p) -> int:
        return self._d.get(Partition(p), 0)

    def __contains__(self, p) -> bool:
        return Partition(p) in self._d

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def keys(self) -> List[Partition]:
        return sorted(self._d, key=Partition.sort_key)

    def items(self) -> List[Tuple[Partition, int]]:
        return [(k, self._d[k]) for k in self.keys()]

    __iter__ = lambda self: iter(self.keys())

    def __eq__(self, other):
        if isinstance(other, MultiplicityVector):
            return self._d == other._d
        if isinstance(other, dict):
            return self == MultiplicityVector(other)
        return NotImplemented

    def __add__(self, other: "MultiplicityVector") -> "MultiplicityVector":
        out = MultiplicityVector(self._d)
        for k, v in other._d.items():
            out.add(k, v)
        return out

    def __neg__(self):
        return MultiplicityVector({k: -v for k, v in self._d.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c: int):
        return MultiplicityVector({k: c * v for k, v in self._d.items()})

    __rmul__ = __mul__

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self._d.values())

    def total(self, f) -> int:
        """Sum of ``mult * f(partition)``, e.g. with a dimension function."""
        return sum(v * f(k) for k, v in self._d.items())

    def to_json(self) -> List[dict]:
        return [{"partition": list(k), "mult": v} for k, v in self.items()]

    @classmethod
    def from_json(cls, rows) -> "MultiplicityVector":
        return cls({tuple(r["partition"]): r["mult"] for r in rows})

    @classmethod
    def parse(cls, text: str) -> "MultiplicityVector":
        """Read '2[52] + [3]' style sums; TeX separators and '_Sp' subscripts are ignored."""
        t = text.replace("\\oplus", "+").replace("\u2295", "+").replace("\\mathrm", "")
        t = re.sub(r"_\{?\s*(Sp|GL|S)\s*\}?", "", t)
        out = cls()
        if t.strip() in ("", "0"):
            return out
        for coeff, body in re.findall(r"(-?\d*)\s*\[([^\]]*)\]", t):
            c = -1 if coeff == "-" else (int(coeff) if coeff else 1)
            out.add(Partition.parse(body), c)
        return out

    def paper_str(self, group: str = "") -> str:
        if not self._d:
            return "0"
        parts = []
        for k, v in self.items():
            coeff = "" if v == 1 else ("-" if v == -1 else str(v))
            parts.append(f"{coeff}[{k.paper_str()}]{group}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiplicityVector({self.paper_str()})"


# --- Littlewood-Richardson ------------------------------------------------------


@lru_cache(maxsize=None)
def _lr(lam: Tuple[int, ...], mu: Tuple[int, ...], nu: Tuple[int, ...]) -> int:
    nrows = len(lam)
    mu = mu + (0,) * (nrows - len(mu))
    target = nu
    nvals = len(nu)
    count = 0
    # filling[i] holds the entries of skew row i, left to right
    filling: List[List[int]] = []
    used = [0] * (nvals + 1)

    def fill_row(i: int):
        nonlocal count
        if i == nrows:
            if tuple(used[1:]) == target:
                count += 1
            return
        start, stop = mu[i], lam[i]
        length = stop - start
        above = filling[i - 1] if i else None
        above_start = mu[i - 1] if i else 0
        row = [0] * length

        # choose entries right to left (reading order), weakly decreasing
        def place(pos: int, upper: int):
            if pos < 0:
                filling.append(list(row))
                fill_row(i + 1)
                filling.pop()
                return
            col = start + pos
            lower = 1
            if above is not None and col >= above_start and col < lam[i - 1]:
                lower = above[col - above_start] + 1
            for val in range(min(upper, nvals, i + 1), lower - 1, -1):
                if used[val] >= target[val - 1]:
                    continue
                if val > 1 and used[val] + 1 > used[val - 1]:
                    continue
                used[val] += 1
                row[pos] = val
                place(pos - 1, val)
                used[val] -= 1

        place(length - 1, nvals)

    fill_row(0)
    return count


def lr_coefficient(lam, mu, nu) -> int:
    """c^lam_{mu,nu}: number of Littlewood-Richardson tableaux of shape lam/mu, weight nu."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size != mu.size + nu.size or not lam.contains(mu) or not lam.contains(nu):
        return 0
    # the count is symmetric in (mu, nu); fill the smaller skew weight
    if len(nu) > len(mu):
        mu, nu = nu, mu
    return _lr(tuple(lam), tuple(mu), tuple(nu))


def even_column_partitions(n: int) -> List[Partition]:
    """Partitions of n all of whose columns have even length."""
    if n % 2:
        return []
    return [Partition(x for p in q for x in (p, p)) for q in partitions_of(n // 2)]


def even_row_partitions(n: int) -> List[Partition]:
    return [q.transpose() for q in even_column_partitions(n)]


@lru_cache(maxsize=None)
def _branch(lam: Partition, even_columns: bool) -> Tuple[Tuple[Partition, int], ...]:
    out: Dict[Partition, int] = {}
    for k in range(0, lam.size + 1, 2):
        betas = even_column_partitions(k) if even_columns else even_row_partitions(k)
        for beta in betas:
            if not lam.contains(beta):
                continue
            for mu in partitions_of(lam.size - k):
                c = lr_coefficient(lam, mu, beta)
                if c:
                    out[mu] = out.get(mu, 0) + c
    return tuple(out.items())


def branch_gl_to_sp(lam, even_columns: bool = True) -> MultiplicityVector:
    """Stable restriction multiplicities N_{mu,lam} of [lam]_GL(2g) to Sp(2g).

    ``even_columns=False`` gives the even-row variant (the orthogonal rule),
    kept only so that tests can tell the two apart.
    """
    return MultiplicityVector(_branch(Partition(lam), even_columns))


# --- symmetric group characters --------------------------------------------------


@lru_cache(maxsize=None)
def _mn(beta: Tuple[int, ...], rho: Tuple[int, ...]) -> int:
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in bset:
            continue
        sign = -1 if sum(1 for x in beta if nb < x < b) % 2 else 1
        new = tuple(sorted((bset - {b}) | {nb}, reverse=True))
        total += sign * _mn(new, rest)
    return total


def sn_character(lam, rho) -> int:
    """Value of the irreducible character [lam] of S_r on the class of cycle type rho."""
    lam, rho = Partition(lam), Partition(sorted(rho, reverse=True))
    if lam.size != rho.size:
        raise ValueError(f"size mismatch: |{tuple(lam)}| != |{tuple(rho)}|")
    n = len(lam)
    beta = tuple(lam[i] + n - 1 - i for i in range(n))
    return _mn(beta, tuple(rho))


def class_size(rho) -> int:
    rho = Partition(rho)
    z = 1
    for k in set(rho):
        m = rho.count(k)
        z *= k**m * math.factorial(m)
    return math.factorial(rho.size) // z


def centralizer_order(rho) -> int:
    rho = Partition(rho)
    return math.factorial(rho.size) // class_size(rho)


def cycle_type(perm: Tuple[int, ...]) -> Partition:
    """Cycle type of a permutation of range(len(perm)) given as a tuple of images."""
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                n += 1
            lengths.append(n)
    return Partition(sorted(lengths, reverse=True))


def perm_sign(perm) -> int:
    ct = cycle_type(tuple(perm))
    return -1 if (len(perm) - len(ct)) % 2 else 1


def sn_dimension(lam) -> int:
    lam = Partition(lam)
    return math.factorial(lam.size) // math.prod(lam.hook_lengths())


# --- dimensions ------------------------------------------------------------------


def dim_gl(lam, n: int) -> int:
    """Dimension of the irreducible GL(n)-module with highest weight lam."""
    lam = Partition(lam)
    if lam.rows > n:
        raise ValueError(f"{tuple(lam)} has more than {n} rows")
    num = math.prod(n + j - i for i, j in lam.cells())
    return num // math.prod(lam.hook_lengths())


def dim_sp(mu, g: int) -> int:
    """Weyl dimension formula for the Sp(2g)-irreducible [mu]."""
    mu = Partition(mu)
    if mu.rows > g:
        raise ValueError(f"{tuple(mu)} has more than {g} rows")
    rho = [g - i for i in range(g)]
    l = [rho[i] + (mu[i] if i < len(mu) else 0) for i in range(g)]
    val = Fraction(1)
    for i in range(g):
        val *= Fraction(l[i], rho[i])
        for j in range(i + 1, g):
            val *= Fraction((l[i] - l[j]) * (l[i] + l[j]), (rho[i] - rho[j]) * (rho[i] + rho[j]))
    assert val.denominator == 1
    return int(val)


# --- Young's seminormal form ---------------------------------------------------------


@lru_cache(maxsize=None)
def standard_tableaux(lam: Partition) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """Standard Young tableaux of shape lam, each as the tuple of cells of 1..n."""
    lam = Partition(lam)
    n = lam.size
    out = []

    def rec(shape: List[int], cells: List[Tuple[int, int]]):
        if len(cells) == n:
            out.append(tuple(cells))
            return
        for i in range(len(lam)):
            j = shape[i]
            if j < lam[i] and (i == 0 or shape[i - 1] > j):
                shape[i] += 1
                cells.append((i, j))
                rec(shape, cells)
                cells.pop()
                shape[i] -= 1

    rec([0] * len(lam), [])
    # order: last-letter order, which keeps the index set deterministic
    return tuple(sorted(out))


class SeminormalRep:
    """Young's seminormal representation of S_n for one diagram, reduced mod p.

    ``matrix(perm)`` returns rho(perm) with rho(s t) = rho(s) rho(t) where
    permutations act on ``range(n)`` and compose as functions.
    """

    def __init__(self, lam, p: int):
        self.lam = Partition(lam)
        self.p = p
        self.n = self.lam.size
        tabs = standard_tableaux(self.lam)
        self.dim = len(tabs)
        index = {t: k for k, t in enumerate(tabs)}
        self._gens = []
        for i in range(self.n - 1):
            m = np.zeros((self.dim, self.dim), dtype=np.int64)
            for k, t in enumerate(tabs):
                (ri, ci), (rj, cj) = t[i], t[i + 1]
                if ri == rj:
                    m[k, k] = 1
                elif ci == cj:
                    m[k, k] = p - 1
                else:
                    d = (cj - rj) - (ci - ri)
                    a = pow(d % p, p - 2, p)
                    swapped = list(t)
                    swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                    k2 = index[tuple(swapped)]
                    m[k, k] = a
                    # column k holds the image of basis vector k
                    if ri < rj:
                        m[k2, k] = 1
                    else:
                        m[k2, k] = (1 - a * a) % p
            self._gens.append(m)
        self._cache: Dict[Tuple[int, ...], np.ndarray] = {}

    def generator(self, i: int) -> np.ndarray:
        return self._gens[i]

    def matrix(self, perm: Tuple[int, ...]) -> np.ndarray:
        perm = tuple(perm)
        m = self._cache.get(perm)
        if m is not None:
            return m
        word = reduced_word(perm)
        m = np.eye(self.dim, dtype=np.int64)
        for i in word:
            m = (m @ self._gens[i]) % self.p
        if len(self._cache) < 50000:
            self._cache[perm] = m
        return m


def reduced_word(perm: Tuple[int, ...]) -> List[int]:
    """Indices i with perm = s_{i1} s_{i2} ... s_{ik}, s_i swapping i and i+1."""
    # bubble sort the one-line notation; each swap is a right multiplication
    arr = list(perm)
    word = []
    n = len(arr)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                word.append(i)
                changed = True
    # arr = perm * s_w1 * ... * s_wk = id, so perm = s_wk ... s_w1
    return word[::-1]
