"""Exact arithmetic in Q(t).

A :class:`RatFunc` is stored as a pair of coprime integer polynomials
(lowest degree first) with positive leading coefficient in the
denominator.  That form is canonical, so equality and hashing are
structural.  The public accessors expose the same fraction with a monic
denominator over Q.

Laurent polynomials, the local ring A0 and Q[t] itself all live in the
same type; see :meth:`RatFunc.is_laurent` and :meth:`RatFunc.is_in_A0`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

__all__ = [
    "RatFunc",
    "NotInA0Error",
    "PoleError",
    "arith",
    "valuation_at_zero",
    "is_in_A0",
    "limit_t0",
    "eval_at",
    "rat_to_str",
    "rat_from_str",
    "T",
    "ONE",
    "ZERO",
]


class NotInA0Error(ValueError):
    """Raised when a t -> 0 limit is requested for an element outside A0."""


class PoleError(ArithmeticError):
    """Raised when evaluating a rational function at one of its poles."""


# ---------------------------------------------------------------------------
# integer polynomial helpers; polys are tuples of ints, lowest degree first,
# with no trailing zeros (the zero polynomial is the empty tuple)
# ---------------------------------------------------------------------------

def _trim(p):
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a, c):
    if not c:
        return ()
    return tuple(c * x for x in a)


def _content(a):
    return reduce(math.gcd, a, 0)


def _ord(a):
    for i, c in enumerate(a):
        if c:
            return i
    return math.inf


def _prem(a, b):
    """Pseudo-remainder of a by b over Z."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        r = list(_trim(r))
    return tuple(r)


def _primitive(a):
    c = _content(a)
    if c in (0, 1):
        return a
    return tuple(x // c for x in a)


def _pgcd(a, b):
    """gcd in Z[t] with positive leading coefficient."""
    if not a:
        g = b
    elif not b:
        g = a
    else:
        ca, cb = _content(a), _content(b)
        c = math.gcd(ca, cb)
        a, b = _primitive(a), _primitive(b)
        if len(a) < len(b):
            a, b = b, a
        while b:
            r = _prem(a, b)
            a, b = b, _primitive(r)
        g = _pscale(_primitive(a), c)
    if g and g[-1] < 0:
        g = _pneg(g)
    return g


def _pexquo(a, b):
    """Exact quotient a / b in Z[t]; b must divide a."""
    if len(b) == 1:
        c = b[0]
        return tuple(x // c for x in a)
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    q = [0] * max(len(a) - db, 0)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        coef, rem = divmod(lr, lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        shift = len(r) - 1 - db
        q[shift] = coef
        for i, c in enumerate(b):
            r[i + shift] -= coef * c
        r = list(_trim(r))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def _is_monomial(p):
    return len(p) >= 1 and all(c == 0 for c in p[:-1])


def _normalize(num, den):
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return (), (1,)
    if _is_monomial(den):
        # c * t^k: strip common powers of t and integer content only
        k = len(den) - 1
        c = den[-1]
        z = _ord(num)
        s = min(z, k)
        if s:
            num = num[s:]
            k -= s
        g = math.gcd(_content(num), c)
        if c < 0:
            g = -g
        if g != 1:
            num = tuple(x // g for x in num)
            c //= g
        return num, (0,) * k + (c,)
    g = _pgcd(num, den)
    if g != (1,):
        num = _pexquo(num, g)
        den = _pexquo(den, g)
    if den[-1] < 0:
        num, den = _pneg(num), _pneg(den)
    return num, den


def _from_rat_coeffs(coeffs):
    """Integer polynomial and integer scale with p/scale equal to coeffs."""
    fr = [Fraction(c) for c in coeffs]
    lcm = 1
    for c in fr:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return _trim([int(c * lcm) for c in fr]), lcm


class RatFunc:
    """Element of Q(t) in canonical reduced form.

    Instances are immutable.  Construct with :meth:`const`, :meth:`t_pow`,
    :meth:`from_coeffs`, or arithmetic on the module constants ``T`` and
    ``ONE``.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num=(), den=(1,), *, _canonical=False):
        if _canonical:
            self._num, self._den = num, den
        else:
            n, sn = _from_rat_coeffs(num)
            d, sd = _from_rat_coeffs(den)
            # num/den = (n/sn) / (d/sd) = (n*sd) / (d*sn)
            self._num, self._den = _normalize(_pscale(n, sd), _pscale(d, sn))
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def _make(cls, num, den):
        obj = cls.__new__(cls)
        obj._num, obj._den = _normalize(num, den)
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls._make(_trim((c.numerator,)), (c.denominator,))

    @classmethod
    def t_pow(cls, k: int, coeff=1) -> "RatFunc":
        """``coeff * t**k`` for any integer k."""
        c = Fraction(coeff)
        if not c:
            return ZERO
        if k >= 0:
            return cls._make((0,) * k + (c.numerator,), (c.denominator,))
        return cls._make((c.numerator,), (0,) * (-k) + (c.denominator,))

    @classmethod
    def from_coeffs(cls, num, den=(1,)) -> "RatFunc":
        """Build from rational coefficient sequences, lowest degree first."""
        return cls(tuple(num), tuple(den))

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    # -- accessors ----------------------------------------------------------
    @property
    def numerator(self) -> list[Fraction]:
        lc = self._den[-1]
        return [Fraction(c, lc) for c in self._num]

    @property
    def denominator(self) -> list[Fraction]:
        lc = self._den[-1]
        return [Fraction(c, lc) for c in self._den]

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self):
        return bool(self._num)

    def is_constant(self) -> bool:
        return len(self._den) == 1 and len(self._num) <= 1

    def is_laurent(self) -> bool:
        """True iff the denominator is a power of t (element of Q[t, 1/t])."""
        return _is_monomial(self._den)

    def is_polynomial(self) -> bool:
        return len(self._den) == 1

    def laurent_coeffs(self) -> dict[int, Fraction]:
        """Exponent -> coefficient map; only for Laurent elements."""
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        k = len(self._den) - 1
        c = self._den[-1]
        return {i - k: Fraction(x, c) for i, x in enumerate(self._num) if x}

    def valuation(self):
        """Order of vanishing at t = 0; ``math.inf`` for zero."""
        if not self._num:
            return math.inf
        return _ord(self._num) - _ord(self._den)

    def is_in_A0(self) -> bool:
        return self.valuation() >= 0

    def limit_t0(self) -> Fraction:
        v = self.valuation()
        if v == math.inf or v > 0:
            return Fraction(0)
        if v < 0:
            raise NotInA0Error(f"{self} has a pole at t = 0")
        zn, zd = _ord(self._num), _ord(self._den)
        return Fraction(self._num[zn], self._den[zd])

    def leading_term(self) -> tuple[Fraction, int]:
        """(c, v) with self = c * t**v * (1 + O(t)); raises on zero."""
        v = self.valuation()
        if v == math.inf:
            raise ValueError("zero has no leading term")
        zn, zd = _ord(self._num), _ord(self._den)
        return Fraction(self._num[zn], self._den[zd]), v

    def eval_at(self, q) -> Fraction:
        q = Fraction(q)
        d = _horner(self._den, q)
        if d == 0:
            raise PoleError(f"{self} has a pole at t = {q}")
        return _horner(self._num, q) / d

    def eval_float(self, q: float) -> float:
        d = _horner(self._den, q)
        if d == 0:
            raise PoleError(f"{self} has a pole at t = {q}")
        return _horner(self._num, q) / d

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = RatFunc.const(other)
            else:
                return NotImplemented
        if not self._num:
            return other
        if not other._num:
            return self
        a, b = self._den, other._den
        if a == b:
            return RatFunc._make(_padd(self._num, other._num), a)
        if len(a) == 1 and len(b) == 1:
            return RatFunc._make(
                _padd(_pscale(self._num, b[0]), _pscale(other._num, a[0])),
                (a[0] * b[0],),
            )
        num = _padd(_pmul(self._num, b), _pmul(other._num, a))
        return RatFunc._make(num, _pmul(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self._num), self._den, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = RatFunc.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = RatFunc.const(other)
            else:
                return NotImplemented
        if not self._num or not other._num:
            return ZERO
        if other._den == (1,) and other._num == (1,):
            return self
        if self._den == (1,) and self._num == (1,):
            return other
        return RatFunc._make(_pmul(self._num, other._num), _pmul(self._den, other._den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self._num:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc._make(self._den, self._num)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = RatFunc.const(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self == RatFunc.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if len(self._den) == 1 and len(self._num) <= 1:
                # agree with hash(int) / hash(Fraction) for constants
                self._hash = hash(Fraction(self._num[0] if self._num else 0, self._den[0]))
            else:
                self._hash = hash((self._num, self._den))
        return self._hash

    # -- text ---------------------------------------------------------------
    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        lc = self._den[-1]
        if len(self._den) == 1:
            return _poly_str([Fraction(c, lc) for c in self._num])
        if _is_monomial(self._den):
            k = len(self._den) - 1
            terms = {i - k: Fraction(c, lc) for i, c in enumerate(self._num) if c}
            return _laurent_str(terms)
        num = _poly_str([Fraction(c, lc) for c in self._num])
        den = _poly_str([Fraction(c, lc) for c in self._den])
        if len([c for c in self._num if c]) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def to_json(self) -> dict:
        return {
            "num": [rat_to_str(c) for c in self.numerator],
            "den": [rat_to_str(c) for c in self.denominator],
        }

    @classmethod
    def from_json(cls, obj) -> "RatFunc":
        return cls([rat_from_str(c) for c in obj["num"]], [rat_from_str(c) for c in obj["den"]])


def _horner(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _laurent_str(terms: dict[int, Fraction]) -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms):
        c = terms[e]
        if e == 0:
            mono = ""
        elif e == 1:
            mono = "t"
        else:
            mono = f"t^{e}"
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _poly_str(coeffs) -> str:
    return _laurent_str({i: c for i, c in enumerate(coeffs) if c})


def rat_to_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


ZERO = RatFunc((), (1,), _canonical=True)
ONE = RatFunc((1,), (1,), _canonical=True)
T = RatFunc((0, 1), (1,), _canonical=True)


# ---------------------------------------------------------------------------
# functional surface
# ---------------------------------------------------------------------------

def arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def valuation_at_zero(f: RatFunc):
    return f.valuation()


def is_in_A0(f: RatFunc) -> bool:
    return f.is_in_A0()


def limit_t0(f: RatFunc) -> Fraction:
    return f.limit_t0()


def eval_at(f: RatFunc, q) -> Fraction:
    return f.eval_at(q)
