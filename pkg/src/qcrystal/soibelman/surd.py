"""Exact sums of square roots of positive rationals.

Entries of the Soibelman operators at rational q involve sqrt(1 - q^{2k});
products of such entries stay in the field generated by these roots.  A Surd
is a finite sum c_R sqrt(prod R) keyed by a set R of square-free-reduced
radicands.  Radicands are treated as independent symbols, which is exact
for arithmetic; equality tests may miss multiplicative relations between
different radicands but never report a false equality.
"""
from __future__ import annotations

import math
from fractions import Fraction


def _square_part(x: Fraction):
    """x = s^2 * r with small square factors pulled out of r; returns (s, r)."""
    def split(n: int):
        s = 1
        r = math.isqrt(n)
        if r * r == n:
            return r, 1
        k = 2
        while k * k <= n and k < 1000:
            while n % (k * k) == 0:
                n //= k * k
                s *= k
            k += 1
        return s, n

    sn, rn = split(x.numerator)
    sd, rd = split(x.denominator)
    # sqrt(rn / rd) = sqrt(rn * rd) / rd
    return Fraction(sn, sd * rd), rn * rd


class Surd:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def sqrt(cls, x) -> "Surd":
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative number")
        if x == 0:
            return cls()
        s, r = _square_part(x)
        key = frozenset() if r == 1 else frozenset([r])
        return cls({key: s})

    @classmethod
    def coerce(cls, x) -> "Surd":
        if isinstance(x, Surd):
            return x
        x = Fraction(x)
        return cls({frozenset(): x} if x else {})

    def __add__(self, other):
        other = Surd.coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Surd(out)

    __radd__ = __add__

    def __neg__(self):
        return Surd({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-Surd.coerce(other))

    def __rsub__(self, other):
        return Surd.coerce(other) - self

    def __mul__(self, other):
        other = Surd.coerce(other)
        out: dict = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                c = va * vb
                for r in ka & kb:
                    c *= r
                k = ka ^ kb
                out[k] = out.get(k, 0) + c
        return Surd(out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = Surd.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def conjugate(self):
        return self

    def is_rational(self) -> bool:
        return all(not k for k in self.terms)

    def __float__(self):
        return float(sum(float(v) * math.sqrt(math.prod(k)) for k, v in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items(), key=lambda kv: sorted(kv[0])):
            parts.append(str(v) if not k else f"{v}*sqrt({math.prod(k)})")
        return " + ".join(parts)
