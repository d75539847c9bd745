"""Truncated operators on tensor products of l^2(N) and l^2(Z) legs.

Every operator met here is a sum of tensor products of weighted shifts.  A
weighted shift on one leg is stored as ``(d, w)``: it maps e_k to
w[k] e_{k+d}, with w[k] = 0 whenever k + d leaves the truncated range.  A
TruncOp groups its rank-one terms by the tuple of per-leg offsets and only
materializes full arrays on request, restricted to an interior block.

Entries live in one of three modes: ``float`` (numpy float64 at a numeric
q), ``exact`` (Fractions and exact square roots at a rational q) and
``leading`` (LeadingArray, leading order as q -> 0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..ratfield import RatFunc
from .leading import LeadingArray, LeadingOrder
from .surd import Surd

MAX_ENTRIES = 10 ** 6


@dataclass(frozen=True)
class TruncSpace:
    """A half-line cutoff e_0..e_{N-1} or an integer window e_{-M}..e_M."""

    kind: str
    size: int

    def __post_init__(self):
        if self.kind == "half":
            if self.size < 4:
                raise ValueError("half-line cutoff must be at least 4")
        elif self.kind == "window":
            if self.size < 2:
                raise ValueError("window half-width must be at least 2")
        else:
            raise ValueError(f"unknown space kind {self.kind!r}")

    @classmethod
    def half_line(cls, N: int) -> "TruncSpace":
        return cls("half", N)

    @classmethod
    def window(cls, M: int) -> "TruncSpace":
        return cls("window", M)

    @property
    def dim(self) -> int:
        return self.size if self.kind == "half" else 2 * self.size + 1

    def label(self, pos: int) -> int:
        """Basis label (k or j) of an array position."""
        return pos if self.kind == "half" else pos - self.size

    def interior(self, margin: int):
        """Array positions [lo, hi] of the interior block for a given margin.

        The half-line keeps e_0: only the cutoff end is a truncation artifact.
        """
        lo = 0 if self.kind == "half" else margin
        hi = self.dim - 1 - margin
        if lo > hi:
            raise ValueError(f"empty interior for margin {margin} on {self}")
        return lo, hi


# ---------------------------------------------------------------------------
# entry modes
# ---------------------------------------------------------------------------

class FloatMode:
    name = "float"

    def __init__(self, q):
        self.q = float(q)

    def key(self):
        return ("float", self.q)

    def vec(self, values):
        return np.asarray(values, dtype=float)

    def ones(self, n):
        return np.ones(n)

    def zeros(self, n):
        return np.zeros(n)

    def sqrt_one_minus(self, exps):
        """Entries sqrt(1 - q^e) for each e."""
        return np.sqrt(1.0 - self.q ** np.asarray(exps, dtype=float))

    def qpow(self, exps, sign=1):
        return sign * self.q ** np.asarray(exps, dtype=float)

    def scalar(self, c):
        if isinstance(c, RatFunc):
            return c.eval_float(self.q)
        return float(c)

    def shift(self, w, d):
        return _shift_array(w, d, 0.0)

    def mask(self, w, keep):
        return np.where(keep, w, 0.0)

    def outer(self, vecs):
        out = vecs[0]
        for v in vecs[1:]:
            out = np.multiply.outer(out, v)
        return out

    def zeros_full(self, shape):
        return np.zeros(shape)

    def to_float(self, a):
        return np.asarray(a, dtype=float)


class ExactMode:
    name = "exact"

    def __init__(self, q):
        self.q = Fraction(q)

    def key(self):
        return ("exact", self.q)

    def _obj(self, values):
        out = np.empty(len(values), dtype=object)
        out[:] = list(values)
        return out

    def vec(self, values):
        return self._obj([Surd.coerce(v) for v in values])

    def ones(self, n):
        return self._obj([Surd.coerce(1)] * n)

    def zeros(self, n):
        return self._obj([Surd()] * n)

    def sqrt_one_minus(self, exps):
        return self._obj([Surd.sqrt(1 - self.q ** int(e)) for e in exps])

    def qpow(self, exps, sign=1):
        return self._obj([Surd.coerce(sign * self.q ** int(e)) for e in exps])

    def scalar(self, c):
        if isinstance(c, RatFunc):
            return Surd.coerce(c.eval_at(self.q))
        return Surd.coerce(c)

    def shift(self, w, d):
        return _shift_array(w, d, Surd())

    def mask(self, w, keep):
        out = w.copy()
        out[~np.asarray(keep)] = Surd()
        return out

    def outer(self, vecs):
        out = vecs[0]
        for v in vecs[1:]:
            out = np.multiply.outer(out, v)
        return out

    def zeros_full(self, shape):
        out = np.empty(shape, dtype=object)
        out.fill(Surd())
        return out

    def to_float(self, a):
        return np.vectorize(float, otypes=[float])(a)


class LeadingMode:
    name = "leading"
    q = None

    def key(self):
        return ("leading",)

    def vec(self, values):
        return LeadingArray.from_terms([LeadingOrder.of(v) for v in values])

    def ones(self, n):
        return LeadingArray(np.ones(n, dtype=np.int64), np.zeros(n, dtype=np.int64))

    def zeros(self, n):
        return LeadingArray.zeros(n)

    def sqrt_one_minus(self, exps):
        # sqrt(1 - q^e) = 1 + O(q) for e > 0 and exactly 0 for e = 0
        exps = np.asarray(exps)
        return LeadingArray((exps > 0).astype(np.int64), np.zeros(len(exps), dtype=np.int64))

    def qpow(self, exps, sign=1):
        exps = np.asarray(exps, dtype=np.int64)
        return LeadingArray(np.full(len(exps), sign, dtype=np.int64), exps)

    def scalar(self, c):
        return LeadingOrder.of(c)

    def shift(self, w, d):
        return w.shifted(d)

    def mask(self, w, keep):
        keep = np.asarray(keep)
        return LeadingArray(np.where(keep, w.num, 0), w.exp, w.den, w.uncertain & keep)

    def outer(self, vecs):
        out = vecs[0]
        for v in vecs[1:]:
            out = out.outer(v)
        return out

    def zeros_full(self, shape):
        return LeadingArray.zeros(shape)

    def to_float(self, a):
        raise TypeError("leading-order entries have no numeric value; take the limit first")


def make_mode(mode: str, q=None):
    if mode == "float":
        return FloatMode(q)
    if mode == "exact":
        return ExactMode(q)
    if mode == "leading":
        return LeadingMode()
    raise ValueError(f"unknown mode {mode!r}")


def _shift_array(a, d: int, fill):
    """s[k] = a[k + d] along the first axis, ``fill`` outside the range."""
    out = np.empty_like(a)
    out[...] = fill
    n = a.shape[0]
    if d >= 0:
        if d < n:
            out[: n - d] = a[d:]
    elif -d < n:
        out[-d:] = a[: n + d]
    return out


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

class TruncOp:
    """Sum of tensor products of weighted shifts.

    ``terms`` maps an offset tuple to a list of factor tuples; each factor
    tuple holds one weight vector per leg.
    """

    def __init__(self, legs, mode, terms=None):
        self.legs = tuple(legs)
        self.mode = mode
        self.terms = terms if terms is not None else {}

    # -- construction ---------------------------------------------------
    @classmethod
    def zero(cls, legs, mode) -> "TruncOp":
        return cls(legs, mode, {})

    @classmethod
    def identity(cls, legs, mode) -> "TruncOp":
        return cls(legs, mode, {tuple(0 for _ in legs): [tuple(mode.ones(s.dim) for s in legs)]})

    @classmethod
    def from_leg_sums(cls, legs, mode, leg_sums, coeff=None) -> "TruncOp":
        """Tensor product of per-leg sums of weighted shifts.

        ``leg_sums[l]`` is a list of ``(d, w)`` pairs; an empty list on any
        leg gives the zero operator.
        """
        out = cls(legs, mode, {})
        combos = [()]
        for sums in leg_sums:
            combos = [c + (dw,) for c in combos for dw in sums]
        for combo in combos:
            offs = tuple(d for d, _ in combo)
            ws = [w for _, w in combo]
            if coeff is not None:
                ws[0] = ws[0] * coeff
            out.terms.setdefault(offs, []).append(tuple(ws))
        return out

    @property
    def shape(self):
        return tuple(s.dim for s in self.legs)

    @property
    def dim(self) -> int:
        return math.prod(self.shape)

    def offsets(self):
        return sorted(self.terms)

    def n_terms(self) -> int:
        return sum(len(v) for v in self.terms.values())

    # -- algebra --------------------------------------------------------
    def _check(self, other):
        if self.legs != other.legs:
            raise ValueError("operators act on different spaces")
        if self.mode.key() != other.mode.key():
            raise ValueError("operators use different entry modes")

    def __add__(self, other: "TruncOp") -> "TruncOp":
        self._check(other)
        terms = {k: list(v) for k, v in self.terms.items()}
        for k, v in other.terms.items():
            terms.setdefault(k, []).extend(v)
        return TruncOp(self.legs, self.mode, terms)

    def scale(self, c) -> "TruncOp":
        """Multiply by a mode scalar (already converted with ``mode.scalar``)."""
        terms = {k: [(ws[0] * c,) + tuple(ws[1:]) for ws in v] for k, v in self.terms.items()}
        return TruncOp(self.legs, self.mode, terms)

    def __neg__(self):
        return self.scale(self.mode.scalar(-1))

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "TruncOp") -> "TruncOp":
        """Composition self o other."""
        self._check(other)
        mode = self.mode
        out: dict = {}
        for db, tb in other.terms.items():
            for da, ta in self.terms.items():
                d = tuple(x + y for x, y in zip(da, db))
                bucket = out.setdefault(d, [])
                shifted = [[mode.shift(wa[l], db[l]) for l in range(len(db))] for wa in ta]
                for wb in tb:
                    for sa in shifted:
                        bucket.append(tuple(wb[l] * sa[l] for l in range(len(db))))
        return TruncOp(self.legs, mode, out)

    def adjoint(self) -> "TruncOp":
        """Transpose (entries are real in every mode)."""
        mode = self.mode
        out: dict = {}
        for d, tl in self.terms.items():
            nd = tuple(-x for x in d)
            out[nd] = [tuple(mode.shift(w[l], -d[l]) for l in range(len(d))) for w in tl]
        return TruncOp(self.legs, mode, out)

    # -- materialization ---------------------------------------------------
    def block_ranges(self, offset, margin: int):
        """Per-leg column ranges whose row and column both lie in the interior."""
        out = []
        for s, d in zip(self.legs, offset):
            lo, hi = s.interior(margin)
            a, b = max(lo, lo - d), min(hi, hi - d)
            if a > b:
                return None
            out.append((a, b))
        return out

    def block(self, offset, margin: int):
        """Interior block of the weight array for one offset (columns indexed)."""
        ranges = self.block_ranges(offset, margin)
        if ranges is None:
            return None
        shape = tuple(b - a + 1 for a, b in ranges)
        if math.prod(shape) > MAX_ENTRIES:
            raise MemoryError(f"interior block of {math.prod(shape)} entries exceeds the cap {MAX_ENTRIES}")
        acc = None
        for ws in self.terms.get(offset, []):
            parts = [_slice(w, a, b) for w, (a, b) in zip(ws, ranges)]
            t = self.mode.outer(parts)
            acc = t if acc is None else acc + t
        if acc is None:
            acc = self.mode.zeros_full(shape)
        return acc

    def blocks(self, margin: int) -> dict:
        out = {}
        for d in self.offsets():
            b = self.block(d, margin)
            if b is not None:
                out[d] = b
        return out

    def to_dense(self):
        """Dense matrix (rows = output index), row-major over legs; small spaces only."""
        D = self.dim
        if D * D > MAX_ENTRIES:
            raise MemoryError(f"dense matrix with {D * D} entries exceeds the cap {MAX_ENTRIES}")
        if self.mode.name == "leading":
            raise TypeError("dense form needs numeric entries")
        dense = np.zeros((D, D)) if self.mode.name == "float" else self.mode.zeros_full((D, D))
        shape = self.shape
        for d in self.offsets():
            full = self.block(d, 0) if all(s.dim > 0 for s in self.legs) else None
            ranges = self.block_ranges(d, 0)
            if full is None or ranges is None:
                continue
            for idx in np.ndindex(full.shape):
                v = full[idx]
                if not v:
                    continue
                col = tuple(a + i for (a, _), i in zip(ranges, idx))
                row = tuple(c + x for c, x in zip(col, d))
                dense[np.ravel_multi_index(row, shape), np.ravel_multi_index(col, shape)] += v
        return dense

    def __repr__(self):
        return f"TruncOp(legs={len(self.legs)}, mode={self.mode.name}, offsets={len(self.terms)}, terms={self.n_terms()})"


def _slice(w, a, b):
    if isinstance(w, LeadingArray):
        return w.take(slice(a, b + 1))
    return w[a:b + 1]


# ---------------------------------------------------------------------------
# interior blocks as standalone values
# ---------------------------------------------------------------------------

@dataclass
class BlockOp:
    """Interior blocks of an operator: offset tuple -> array over columns.

    Entries are Fractions (exact limits) or floats.
    """

    legs: tuple
    margin: int
    blocks: dict

    @classmethod
    def from_op(cls, op: TruncOp, margin: int, to_float: bool = False) -> "BlockOp":
        bl = op.blocks(margin)
        if to_float:
            bl = {d: op.mode.to_float(b) for d, b in bl.items()}
        return cls(op.legs, margin, bl)

    def _aligned(self, other: "BlockOp"):
        if self.legs != other.legs or self.margin != other.margin:
            raise ValueError("blocks of different shapes")
        for d in sorted(set(self.blocks) | set(other.blocks)):
            a, b = self.blocks.get(d), other.blocks.get(d)
            yield d, a, b

    def max_deviation(self, other: "BlockOp") -> float:
        worst = 0.0
        for _, a, b in self._aligned(other):
            fa = _as_float(a)
            fb = _as_float(b)
            if fa is None and fb is None:
                continue
            if fa is None:
                fa = np.zeros_like(fb)
            if fb is None:
                fb = np.zeros_like(fa)
            if fa.size:
                worst = max(worst, float(np.max(np.abs(fa - fb))))
        return worst

    def equals(self, other: "BlockOp") -> bool:
        for _, a, b in self._aligned(other):
            if a is None or b is None:
                x = a if b is None else b
                if any(v != 0 for v in np.asarray(x).ravel()):
                    return False
                continue
            if a.shape != b.shape or any(x != y for x, y in zip(np.asarray(a).ravel(), np.asarray(b).ravel())):
                return False
        return True

    def nonzero_offsets(self):
        return sorted(d for d, a in self.blocks.items() if any(v != 0 for v in np.asarray(a).ravel()))

    def entries(self, offset):
        """Nonzero entries of one offset as (column labels, value) pairs."""
        a = self.blocks.get(offset)
        if a is None:
            return []
        out = []
        for idx in np.ndindex(a.shape):
            v = a[idx]
            if v != 0:
                col = tuple(s.label(s.interior(self.margin)[0] + max(0, -d) + i)
                            for s, d, i in zip(self.legs, offset, idx))
                out.append((col, v))
        return out


def _as_float(a):
    if a is None:
        return None
    if a.dtype == object:
        return np.vectorize(float, otypes=[float])(a)
    return a.astype(float)
