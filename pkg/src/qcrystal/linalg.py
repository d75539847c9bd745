"""Linear algebra over Q(t) (or Q) and over the local ring A0.

Dense matrices are lists of row lists; vectors are lists.  Entries may be
:class:`~qcrystal.ratfield.RatFunc`, :class:`fractions.Fraction` or int;
only ring operations, division and truthiness are used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from fractions import Fraction

from .ratfield import RatFunc


def _div(a, b):
    # keep int / int exact
    if isinstance(b, int) and not isinstance(b, bool):
        b = Fraction(b)
    return a / b


# ---------------------------------------------------------------------------
# sparse matrices
# ---------------------------------------------------------------------------

class SMat:
    """Sparse matrix stored as ``{row: {col: value}}`` with no zero entries."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = {}
        if rows:
            for r, cols in rows.items():
                clean = {c: v for c, v in cols.items() if v}
                if clean:
                    self.rows[r] = clean

    @classmethod
    def identity(cls, n: int, one=1):
        return cls(n, n, {i: {i: one} for i in range(n)})

    @classmethod
    def diag(cls, entries):
        n = len(entries)
        return cls(n, n, {i: {i: v} for i, v in enumerate(entries)})

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        """Build from ``(row, col, value)`` triples; duplicates are summed."""
        rows: dict = {}
        for r, c, v in entries:
            row = rows.setdefault(r, {})
            row[c] = row[c] + v if c in row else v
        return cls(nrows, ncols, rows)

    @classmethod
    def from_dense(cls, mat):
        nrows = len(mat)
        ncols = len(mat[0]) if mat else 0
        return cls(nrows, ncols, {i: {j: v for j, v in enumerate(row)} for i, row in enumerate(mat)})

    def to_dense(self, zero=0):
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for r, cols in self.rows.items():
            for c, v in cols.items():
                out[r][c] = v
        return out

    def get(self, r, c, zero=0):
        return self.rows.get(r, {}).get(c, zero)

    def items(self):
        for r, cols in self.rows.items():
            for c, v in cols.items():
                yield r, c, v

    def nnz(self) -> int:
        return sum(len(c) for c in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def __matmul__(self, other):
        if isinstance(other, SMat):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            out = {}
            orows = other.rows
            for r, cols in self.rows.items():
                acc = {}
                for k, a in cols.items():
                    brow = orows.get(k)
                    if not brow:
                        continue
                    for c, b in brow.items():
                        p = a * b
                        acc[c] = acc[c] + p if c in acc else p
                if acc:
                    out[r] = acc
            return SMat(self.nrows, other.ncols, out)
        # dense vector
        vec = other
        out = [0] * self.nrows
        for r, cols in self.rows.items():
            acc = 0
            for c, a in cols.items():
                x = vec[c]
                if x:
                    acc = a * x + acc
            out[r] = acc
        return out

    def _combine(self, other, sign):
        rows = {r: dict(cols) for r, cols in self.rows.items()}
        for r, cols in other.rows.items():
            row = rows.setdefault(r, {})
            for c, v in cols.items():
                v = v if sign > 0 else -v
                row[c] = row[c] + v if c in row else v
        return SMat(self.nrows, self.ncols, rows)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, s):
        return SMat(self.nrows, self.ncols, {r: {c: s * v for c, v in cols.items()} for r, cols in self.rows.items()})

    def __neg__(self):
        return self.scale(-1)

    def transpose(self):
        rows: dict = {}
        for r, cols in self.rows.items():
            for c, v in cols.items():
                rows.setdefault(c, {})[r] = v
        return SMat(self.ncols, self.nrows, rows)

    def kron(self, other):
        rows: dict = {}
        m = other.nrows
        n = other.ncols
        for r1, c1s in self.rows.items():
            for r2, c2s in other.rows.items():
                row = rows.setdefault(r1 * m + r2, {})
                for c1, a in c1s.items():
                    for c2, b in c2s.items():
                        row[c1 * n + c2] = a * b
        return SMat(self.nrows * m, self.ncols * n, rows)

    def map(self, fn):
        return SMat(self.nrows, self.ncols, {r: {c: fn(v) for c, v in cols.items()} for r, cols in self.rows.items()})

    def __eq__(self, other):
        if not isinstance(other, SMat):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows

    def first_difference(self, other):
        """First ``(row, col)`` where two matrices differ, or None."""
        keys = sorted(set(self.rows) | set(other.rows))
        for r in keys:
            a = self.rows.get(r, {})
            b = other.rows.get(r, {})
            for c in sorted(set(a) | set(b)):
                if a.get(c, 0) != b.get(c, 0):
                    return (r, c)
        return None

    def __repr__(self):
        return f"SMat({self.nrows}x{self.ncols}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# dense linear algebra over a field
# ---------------------------------------------------------------------------

def _pick_pivot(rows, col, start):
    best, best_cost = None, None
    for i in range(start, len(rows)):
        x = rows[i][col]
        if x:
            cost = _entry_cost(x)
            if best is None or cost < best_cost:
                best, best_cost = i, cost
                if cost == 0:
                    break
    return best


def _entry_cost(x):
    if isinstance(x, RatFunc):
        return len(x._num) + len(x._den) - 2
    return 0


def rref(mat):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    rows = [list(r) for r in mat]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        p = _pick_pivot(rows, c, r)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = _div(1, rows[r][c])
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                pr = rows[r]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(mat) -> int:
    return len(rref(mat)[1])


def nullspace(mat, ncols=None):
    """Basis of the right kernel ``{x : mat x = 0}`` as a list of vectors."""
    if not mat:
        n = ncols or 0
        return [[Fraction(1) if i == j else 0 for i in range(n)] for j in range(n)]
    rows, pivots = rref(mat)
    n = len(mat[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x = rows[i][f]
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def solve(mat, rhs):
    """Solve ``mat x = rhs`` (rhs a vector).

    Returns ``(x, kernel)`` with x a particular solution, or ``(None, [])``
    if the system is inconsistent.  ``kernel`` is a basis of the solution
    space of the homogeneous system.
    """
    n = len(mat[0]) if mat else 0
    aug = [list(r) + [b] for r, b in zip(mat, rhs)]
    rows, pivots = rref(aug)
    if n in pivots:
        return None, []
    x = [0] * n
    for i, p in enumerate(pivots):
        x[p] = rows[i][n]
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        v = [0] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            y = rows[i][f]
            if y:
                v[p] = -y
        kernel.append(v)
    return x, kernel


def inverse(mat):
    n = len(mat)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(mat)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in rows]


def det(mat):
    n = len(mat)
    rows = [list(r) for r in mat]
    d = 1
    for c in range(n):
        p = _pick_pivot(rows, c, c)
        if p is None:
            return 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d = d * piv
        inv = _div(1, piv)
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[c])]
    return d


def matmul(a, b):
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * m
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def matvec(a, v):
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def columns_to_matrix(cols):
    """Dense matrix whose columns are the given vectors."""
    return transpose(cols)


def dot(u, v):
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return acc


def bilinear(u, gram, v):
    return dot(u, matvec(gram, v))


# ---------------------------------------------------------------------------
# A0-modules inside Q(t)^d
# ---------------------------------------------------------------------------

def _val(x):
    return x.valuation() if isinstance(x, RatFunc) else (math.inf if not x else 0)


@dataclass
class A0Basis:
    """A0-basis of a finitely generated A0-submodule of Q(t)^d.

    ``vectors[k]`` has pivot row ``pivots[k]`` and vanishes on the pivot rows
    of all earlier vectors, so coordinates are read off by substitution.
    """

    dim: int
    vectors: list = field(default_factory=list)
    pivots: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def coords(self, v):
        """Coordinates of v in this basis over Q(t), or None outside the span."""
        res = list(v)
        out = []
        for b, p in zip(self.vectors, self.pivots):
            x = res[p]
            if x:
                a = _div(x, b[p])
                res = [r - a * y if y else r for r, y in zip(res, b)]
            else:
                a = 0
            out.append(a)
        if any(res):
            return None
        return out

    def contains(self, v) -> bool:
        c = self.coords(v)
        return c is not None and all(_val(a) >= 0 for a in c)

    def contains_all(self, vectors) -> bool:
        return all(self.contains(v) for v in vectors)

    def equals(self, other: "A0Basis") -> bool:
        return self.rank == other.rank and self.contains_all(other.vectors) and other.contains_all(self.vectors)


def a0_basis(vectors, dim=None) -> A0Basis:
    """Reduce generators of an A0-module to an A0-basis.

    Column reduction that pivots on the entry of minimal valuation over the
    remaining block, ties broken by lowest row index and then by generator
    order; every elimination multiplier then lies in A0.
    """
    cols = [list(v) for v in vectors if any(v)]
    if dim is None:
        dim = len(vectors[0]) if vectors else 0
    basis = A0Basis(dim)
    used = set()
    while cols:
        best = None
        for ci, c in enumerate(cols):
            for r in range(dim):
                if r in used or not c[r]:
                    continue
                key = (_val(c[r]), r, ci)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, r, ci = best
        p = cols.pop(ci)
        x = p[r]
        for c in cols:
            y = c[r]
            if y:
                f = _div(y, x)
                for k in range(dim):
                    if p[k]:
                        c[k] = c[k] - f * p[k]
        cols = [c for c in cols if any(c)]
        basis.vectors.append(p)
        basis.pivots.append(r)
        used.add(r)
    return basis


def gram_matrix(vectors, gram):
    """Gram matrix of a family of vectors under the form ``gram``."""
    gv = [matvec(gram, v) for v in vectors]
    return [[dot(u, w) for w in gv] for u in vectors]
