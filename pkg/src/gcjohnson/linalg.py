"""Exact sparse linear algebra over Q.

Ranks are computed modulo word-size primes (> 2^30) by sparse elimination
and certified by agreement of two distinct primes.  Linear solves are done
with exact rational elimination and verified by their residual.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

log = logging.getLogger(__name__)

Number = "int | Fraction"


class SparseMatrix:
    """Coordinate-format matrix with exact (int or Fraction) entries."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows: int, ncols: int, data: Optional[Dict[Tuple[int, int], object]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.data: Dict[Tuple[int, int], object] = {}
        if data:
            for (i, j), v in data.items():
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise IndexError(f"entry {(i, j)} outside {nrows}x{ncols}")
                if v:
                    self.data[(i, j)] = v

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Dict[int, object]]) -> "SparseMatrix":
        M = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    M.data[(i, j)] = v
        return M

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls(nrows, ncols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def nnz(self):
        return len(self.data)

    def rows(self) -> List[Dict[int, object]]:
        out: List[Dict[int, object]] = [dict() for _ in range(self.nrows)]
        for (i, j), v in self.data.items():
            out[i][j] = v
        return out

    def columns(self) -> List[Dict[int, object]]:
        out: List[Dict[int, object]] = [dict() for _ in range(self.ncols)]
        for (i, j), v in self.data.items():
            out[j][i] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.data.items()})

    def to_dense(self) -> List[List]:
        d = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.data.items():
            d[i][j] = v
        return d

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows_b = other.rows()
        out: Dict[Tuple[int, int], object] = {}
        for (i, k), a in self.data.items():
            for j, b in rows_b[k].items():
                key = (i, j)
                out[key] = out.get(key, 0) + a * b
        return SparseMatrix(self.nrows, other.ncols, {k: v for k, v in out.items() if v})

    def apply(self, x: Sequence) -> List:
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch")
        y = [0] * self.nrows
        for (i, j), v in self.data.items():
            if x[j]:
                y[i] += v * x[j]
        return y

    def is_zero(self) -> bool:
        return not self.data

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, 0) + v
        return SparseMatrix(self.nrows, self.ncols, {k: v for k, v in out.items() if v})

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, {k: c * v for k, v in self.data.items()})

    def to_coo(self) -> dict:
        """Serializable form; rationals as [numerator, denominator]."""
        entries = []
        for (i, j) in sorted(self.data):
            v = Fraction(self.data[(i, j)])
            entries.append([i, j, v.numerator, v.denominator])
        return {"nrows": self.nrows, "ncols": self.ncols, "entries": entries}

    @classmethod
    def from_coo(cls, doc: dict) -> "SparseMatrix":
        data = {}
        for i, j, num, den in doc["entries"]:
            data[(i, j)] = num if den == 1 else Fraction(num, den)
        return cls(doc["nrows"], doc["ncols"], data)

    def __eq__(self, other):
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self.data == other.data

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


# --- primes ------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def prime(i: int) -> int:
    """The i-th prime below 2^31 counting downwards; all exceed 2^30."""
    p = (1 << 31) - 1 if i == 0 else prime(i - 1) - 2
    while not _is_prime(p):
        p -= 2
    return p


def _reduce_mod(v, p: int) -> int:
    if isinstance(v, Fraction):
        if v.denominator % p == 0:
            raise ZeroDivisionError("prime divides a denominator")
        return v.numerator * pow(v.denominator, p - 2, p) % p
    return int(v) % p


# --- modular elimination --------------------------------------------------------------


def _rows_mod(M: SparseMatrix, p: int) -> List[Dict[int, int]]:
    # relabel columns by ascending nonzero count (sparse columns eliminate first)
    counts = [0] * M.ncols
    for (_, j) in M.data:
        counts[j] += 1
    order = sorted(range(M.ncols), key=lambda j: (counts[j], j))
    newcol = [0] * M.ncols
    for pos, j in enumerate(order):
        newcol[j] = pos
    rows: List[Dict[int, int]] = [dict() for _ in range(M.nrows)]
    for (i, j), v in M.data.items():
        r = _reduce_mod(v, p)
        if r:
            rows[i][newcol[j]] = r
    return [r for r in rows if r]


def rank_mod_p(M: SparseMatrix, p: int) -> int:
    rows = _rows_mod(M, p)
    rows.sort(key=len)
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], p - 2, p)
                pivots[c] = {j: v * inv % p for j, v in row.items()}
                break
            f = row[c]
            for j, v in piv.items():
                w = (row.get(j, 0) - f * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return len(pivots)


def rank(M: SparseMatrix, min_primes: int = 2) -> int:
    """Exact rank over Q, certified by agreement at two distinct word-size primes."""
    if not M.data:
        return 0
    # the transpose has the same rank; eliminate along the shorter side
    if M.nrows > M.ncols * 4:
        M = M.transpose()
    results: Dict[int, int] = {}
    i = 0
    while True:
        p = prime(i)
        i += 1
        try:
            r = rank_mod_p(M, p)
        except ZeroDivisionError:
            continue
        results[r] = results.get(r, 0) + 1
        best = max(results)
        if results[best] >= min_primes:
            if len(results) > 1:
                log.info("rank: prime disagreement %s, taking %d", results, best)
            return best
        if i > 40:
            raise RuntimeError("rank certification failed")


def rank_exact(M: SparseMatrix) -> int:
    """Dense exact Gaussian elimination over Fractions (oracle)."""
    A = [[Fraction(x) for x in row] for row in M.to_dense()]
    r = 0
    ncols = M.ncols
    for c in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if A[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


# --- exact solving --------------------------------------------------------------------


def _echelon_exact(rows: List[Dict[int, Fraction]]) -> Dict[int, Dict[int, Fraction]]:
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for row in sorted(rows, key=len):
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = 1 / Fraction(row[c])
                pivots[c] = {j: v * inv for j, v in row.items()}
                break
            f = row[c]
            for j, v in piv.items():
                w = row.get(j, 0) - f * v
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return pivots


def solve_in_image(A: SparseMatrix, b: Sequence) -> Optional[List[Fraction]]:
    """Some x with A x = b over Q, or None when b is not in the column space.

    The solution is the pivot-ordered reduced one: free variables are zero.
    """
    if len(b) != A.nrows:
        raise ValueError(f"vector of length {len(b)} for {A.nrows} rows")
    n = A.ncols
    if not any(b):
        return [Fraction(0)] * n
    rows = A.rows()
    aug = []
    for i, row in enumerate(rows):
        r = {j: Fraction(v) for j, v in row.items()}
        if b[i]:
            r[n] = Fraction(b[i])
        if r:
            aug.append(r)
    pivots = _echelon_exact(aug)
    if n in pivots:
        return None
    # back substitution, highest pivot column first
    x = [Fraction(0)] * n
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        val = row.get(n, Fraction(0))
        for j, v in row.items():
            if j != c and j != n:
                val -= v * x[j]
        x[c] = val
    residual = A.apply(x)
    if any(Fraction(r) - Fraction(bi) for r, bi in zip(residual, b)):
        raise ArithmeticError("solve_in_image residual check failed")
    return x


def image_basis_complement(A: SparseMatrix) -> List[int]:
    """Indices of standard basis vectors completing the column space of A to Q^nrows."""
    cols = [{i: Fraction(v) for i, v in c.items()} for c in A.columns()]
    pivots = _echelon_exact([c for c in cols if c])
    return [i for i in range(A.nrows) if i not in pivots]


def kernel_basis(A: SparseMatrix) -> List[List[Fraction]]:
    """Exact basis of the right kernel of A."""
    rows = [{j: Fraction(v) for j, v in r.items()} for r in A.rows() if r]
    pivots = _echelon_exact(rows)
    # full reduction so each pivot row expresses its pivot in terms of free columns
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        for c2 in pivots:
            if c2 < c and c in pivots[c2]:
                f = pivots[c2][c]
                r2 = pivots[c2]
                for j, v in row.items():
                    w = r2.get(j, 0) - f * v
                    if w:
                        r2[j] = w
                    else:
                        r2.pop(j, None)
    free = [j for j in range(A.ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * A.ncols
        x[f] = Fraction(1)
        for c, row in pivots.items():
            if f in row:
                x[c] = -row[f]
        basis.append(x)
    return basis


# --- cohomology ------------------------------------------------------------------------


class CohomologyReport(NamedTuple):
    dims: Dict[int, int]
    chain_dims: Dict[int, int]
    ranks: Dict[int, int]
    representatives: Optional[Dict[int, list]] = None

    @property
    def euler(self) -> int:
        return sum((-1) ** k * d for k, d in self.dims.items())

    @property
    def chain_euler(self) -> int:
        return sum((-1) ** k * d for k, d in self.chain_dims.items())

    def nonzero(self) -> Dict[int, int]:
        return {k: v for k, v in sorted(self.dims.items()) if v}


class DifferentialError(ArithmeticError):
    """Raised when consecutive differentials do not compose to zero."""


def check_d_squared(d_prev: SparseMatrix, d_next: SparseMatrix) -> bool:
    return (d_next @ d_prev).is_zero()


def cohomology_from_matrices(chain_dims: Dict[int, int], diffs: Dict[int, SparseMatrix],
                             check: bool = True) -> CohomologyReport:
    """``diffs[k]`` maps degree k to degree k+1."""
    ranks = {}
    for k in sorted(chain_dims):
        if k in diffs and (k + 1) in diffs and check:
            if not check_d_squared(diffs[k], diffs[k + 1]):
                raise DifferentialError(f"d^{k + 1} d^{k} != 0")
        ranks[k] = rank(diffs[k]) if k in diffs else 0
    dims = {}
    for k, c in chain_dims.items():
        h = c - ranks.get(k, 0) - ranks.get(k - 1, 0)
        if h < 0:
            raise DifferentialError(f"negative cohomology in degree {k}")
        dims[k] = h
    return CohomologyReport(dims, dict(chain_dims), ranks)


def cohomology(slice_, check: bool = True) -> CohomologyReport:
    """Cohomology dimensions of a ComplexSlice (total differential)."""
    dims = {k: len(b) for k, b in slice_.bases.items()}
    return cohomology_from_matrices(dims, {k: slice_.matrix(k) for k in slice_.bases}, check)


def class_is_zero(slice_, k: int, z) -> bool:
    """Whether the degree-k cocycle z (Chain or coordinate vector) is a coboundary in the slice."""
    vec = list(z) if isinstance(z, (list, tuple)) else slice_.vector(k, z)
    if any(slice_.matrix(k).apply(vec)):
        raise ValueError("not a cocycle")
    if not any(vec):
        return True
    return solve_in_image(slice_.matrix(k - 1), vec) is not None
