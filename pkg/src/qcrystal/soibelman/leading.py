"""Leading-order bookkeeping for q -> 0 limits.

A quantity c q^e (1 + O(q)) is stored as the pair (c, e).  Sums of two terms
with the same exponent whose coefficients cancel lose their leading term;
such entries are flagged ``uncertain`` instead of being reported as zero, and
the caller resolves them numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..ratfield import RatFunc

# exponent stored for exact zeros; larger than any exponent met in practice
_ZERO_EXP = 1 << 40


@dataclass(frozen=True)
class LeadingOrder:
    """c q^e (1 + O(q)), or an exact zero."""

    coeff: Fraction = Fraction(0)
    exponent: int = 0
    exact_zero: bool = True

    @classmethod
    def zero(cls) -> "LeadingOrder":
        return cls()

    @classmethod
    def term(cls, coeff, exponent: int = 0) -> "LeadingOrder":
        coeff = Fraction(coeff)
        if coeff == 0:
            return cls()
        return cls(coeff, int(exponent), False)

    @classmethod
    def of(cls, x) -> "LeadingOrder":
        """Leading order of a rational function (or rational number) in t = q."""
        if isinstance(x, LeadingOrder):
            return x
        x = RatFunc.coerce(x)
        if x.is_zero():
            return cls()
        c, v = x.leading_term()
        return cls(c, v, False)

    def __mul__(self, other):
        other = LeadingOrder.of(other)
        if self.exact_zero or other.exact_zero:
            return LeadingOrder()
        return LeadingOrder(self.coeff * other.coeff, self.exponent + other.exponent, False)

    __rmul__ = __mul__

    def __neg__(self):
        if self.exact_zero:
            return self
        return LeadingOrder(-self.coeff, self.exponent, False)

    def __add__(self, other):
        other = LeadingOrder.of(other)
        if self.exact_zero:
            return other
        if other.exact_zero:
            return self
        if self.exponent != other.exponent:
            return self if self.exponent < other.exponent else other
        c = self.coeff + other.coeff
        if c == 0:
            raise CancellationError(f"leading terms cancel at exponent {self.exponent}")
        return LeadingOrder(c, self.exponent, False)

    def limit(self) -> Fraction:
        """Value at q = 0; raises for a negative exponent."""
        if self.exact_zero or self.exponent > 0:
            return Fraction(0)
        if self.exponent < 0:
            raise DivergenceError(f"negative leading exponent {self.exponent}")
        return self.coeff

    def __str__(self):
        if self.exact_zero:
            return "0"
        return f"{self.coeff}*q^{self.exponent}"


class CancellationError(ArithmeticError):
    """Leading coefficients cancelled; the true leading order is unknown."""


class DivergenceError(ArithmeticError):
    """A q -> 0 limit does not exist (negative leading exponent)."""


class LeadingArray:
    """Array of LeadingOrder entries stored as integer numerators over one denominator.

    ``num / den`` is the leading coefficient, ``exp`` the exponent.  Entries
    with ``num == 0`` are exact zeros unless ``uncertain`` is set, which marks
    entries whose leading terms cancelled.
    """

    __slots__ = ("num", "exp", "den", "uncertain")

    def __init__(self, num, exp, den: int = 1, uncertain=None):
        self.num = np.asarray(num, dtype=np.int64)
        self.exp = np.asarray(exp, dtype=np.int64)
        self.den = int(den)
        if uncertain is None:
            uncertain = np.zeros(self.num.shape, dtype=bool)
        self.uncertain = np.asarray(uncertain, dtype=bool)
        self._normalize()

    def _normalize(self):
        zero = self.num == 0
        if zero.any():
            self.exp = np.where(zero & ~self.uncertain, _ZERO_EXP, self.exp)

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeros(cls, shape) -> "LeadingArray":
        return cls(np.zeros(shape, dtype=np.int64), np.full(shape, _ZERO_EXP, dtype=np.int64))

    @classmethod
    def from_terms(cls, terms) -> "LeadingArray":
        """From a sequence of LeadingOrder values (1-D)."""
        terms = [LeadingOrder.of(x) for x in terms]
        den = 1
        for x in terms:
            if not x.exact_zero:
                den = math.lcm(den, x.coeff.denominator)
        num = [0 if x.exact_zero else int(x.coeff * den) for x in terms]
        exp = [_ZERO_EXP if x.exact_zero else x.exponent for x in terms]
        return cls(num, exp, den)

    @property
    def shape(self):
        return self.num.shape

    @property
    def ndim(self):
        return self.num.ndim

    def copy(self) -> "LeadingArray":
        return LeadingArray(self.num.copy(), self.exp.copy(), self.den, self.uncertain.copy())

    def entry(self, idx) -> LeadingOrder:
        if self.num[idx] == 0:
            return LeadingOrder()
        return LeadingOrder(Fraction(int(self.num[idx]), self.den), int(self.exp[idx]), False)

    # -- arithmetic -----------------------------------------------------
    def _rescaled(self, den: int):
        f = den // self.den
        return self.num * f

    def __add__(self, other: "LeadingArray") -> "LeadingArray":
        if not isinstance(other, LeadingArray):
            return NotImplemented
        den = math.lcm(self.den, other.den)
        a, b = self._rescaled(den), other._rescaled(den)
        ea, eb = self.exp, other.exp
        ua, ub = self.uncertain, other.uncertain
        a_lo = ea < eb
        b_lo = eb < ea
        same = ~(a_lo | b_lo)
        num = np.where(a_lo, a, np.where(b_lo, b, a + b))
        exp = np.where(b_lo, eb, ea)
        # the lower-order side decides; a tie inherits either flag, and a
        # cancellation between two live terms makes the entry uncertain
        unc = np.where(a_lo, ua, np.where(b_lo, ub, ua | ub))
        cancel = same & (a != 0) & (b != 0) & (a + b == 0)
        unc = unc | cancel
        return LeadingArray(num, exp, den, unc)

    def __neg__(self):
        return LeadingArray(-self.num, self.exp, self.den, self.uncertain)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "LeadingArray":
        if isinstance(other, LeadingArray):
            zero = ((self.num == 0) & ~self.uncertain) | ((other.num == 0) & ~other.uncertain)
            num = self.num * other.num
            exp = np.where(zero, _ZERO_EXP, self.exp + other.exp)
            unc = (self.uncertain | other.uncertain) & ~zero
            return _reduced(num, exp, self.den * other.den, unc)
        s = LeadingOrder.of(other)
        if s.exact_zero:
            return LeadingArray.zeros(self.shape)
        num = self.num * s.coeff.numerator
        exp = np.where((self.num == 0) & ~self.uncertain, _ZERO_EXP, self.exp + s.exponent)
        return _reduced(num, exp, self.den * s.coeff.denominator, self.uncertain)

    __rmul__ = __mul__

    # -- shape manipulation ----------------------------------------------
    def outer(self, other: "LeadingArray") -> "LeadingArray":
        zero_a = (self.num == 0) & ~self.uncertain
        zero_b = (other.num == 0) & ~other.uncertain
        num = np.multiply.outer(self.num, other.num)
        exp = np.add.outer(self.exp, other.exp)
        zero = np.logical_or.outer(zero_a, zero_b)
        unc = np.logical_or.outer(self.uncertain, other.uncertain) & ~zero
        exp = np.where(zero, _ZERO_EXP, exp)
        return _reduced(num, exp, self.den * other.den, unc)

    def take(self, index) -> "LeadingArray":
        return LeadingArray(self.num[index], self.exp[index], self.den, self.uncertain[index])

    def shifted(self, d: int) -> "LeadingArray":
        """1-D: s[k] = self[k + d], zero outside the range."""
        return LeadingArray(_shift(self.num, d, 0), _shift(self.exp, d, _ZERO_EXP), self.den,
                            _shift(self.uncertain, d, False))

    def conj(self) -> "LeadingArray":
        return self

    # -- limits ---------------------------------------------------------
    def limit(self):
        """Entrywise q -> 0 limit as an object array of Fractions.

        Raises DivergenceError on a negative exponent and CancellationError
        if an uncertain entry could affect the limit.
        """
        live = (self.num != 0) & ~self.uncertain
        if (live & (self.exp < 0)).any():
            raise DivergenceError("negative leading exponent in limit")
        if (self.uncertain & (self.exp <= 0)).any():
            raise CancellationError("cancelled leading terms at non-positive order")
        out = np.zeros(self.shape, dtype=object)
        out[...] = Fraction(0)
        hit = live & (self.exp == 0)
        for idx in zip(*np.nonzero(hit)):
            out[idx] = Fraction(int(self.num[idx]), self.den)
        return out

    def uncertain_at_limit(self):
        """Mask of entries whose limit is unknown because of cancellation."""
        return self.uncertain & (self.exp <= 0)

    def __repr__(self):
        return f"LeadingArray(shape={self.shape}, den={self.den})"


def _reduced(num, exp, den, unc) -> LeadingArray:
    g = int(np.gcd.reduce(np.append(np.abs(num).ravel(), den))) if num.size else den
    if g > 1:
        num = num // g
        den //= g
    return LeadingArray(num, exp, den, unc)


def _shift(a, d: int, fill):
    out = np.full_like(a, fill)
    n = a.shape[0]
    if d >= 0:
        if d < n:
            out[: n - d] = a[d:]
    else:
        if -d < n:
            out[-d:] = a[: n + d]
    return out
