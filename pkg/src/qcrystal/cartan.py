"""Type A_n Cartan data and weights in the fundamental-weight basis."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class CartanData:
    """Cartan matrix of type A_n together with its (trivial) symmetrizer."""

    n: int
    matrix: tuple
    symmetrizer: tuple

    def a(self, i: int, j: int) -> int:
        """Entry a_ij with 1-based indices."""
        return self.matrix[i - 1][j - 1]


class Weight(tuple):
    """Integer weight in fundamental-weight coordinates.

    Behaves like a tuple; ``+``, ``-`` and integer scaling act coordinatewise.

    Examples
    --------
    >>> Weight((1, 0)) - simple_root(2, 1)
    Weight(-1, 1)
    """

    def __new__(cls, coords):
        return super().__new__(cls, (int(c) for c in coords))

    @property
    def rank(self) -> int:
        return len(self)

    def __add__(self, other):
        _check_rank(self, other)
        return Weight(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _check_rank(self, other)
        return Weight(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Weight(-a for a in self)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return Weight(k * a for a in self)

    __rmul__ = __mul__

    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self)

    def __repr__(self):
        return "Weight(" + ", ".join(str(a) for a in self) + ")"

    def to_str(self) -> str:
        return ",".join(str(a) for a in self)

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse a comma-separated list such as ``"1,0"``."""
        return cls(int(x) for x in text.split(","))


def _check_rank(a, b):
    if len(a) != len(b):
        raise ValueError(f"weights of different rank: {len(a)} and {len(b)}")


@lru_cache(maxsize=None)
def cartan_matrix(n: int) -> CartanData:
    """Cartan matrix of type A_n.

    >>> cartan_matrix(2).matrix
    ((2, -1), (-1, 2))
    """
    if n < 1:
        raise ValueError("rank must be at least 1")
    rows = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n))
        for i in range(n)
    )
    return CartanData(n, rows, (1,) * n)


@lru_cache(maxsize=None)
def _inverse_cartan(n: int):
    # A_n closed form: (A^{-1})_{ij} = min(i,j)(n+1-max(i,j))/(n+1), 1-based.
    return tuple(
        tuple(Fraction(min(i, j) * (n + 1 - max(i, j)), n + 1) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )


def fundamental_weight(n: int, i: int) -> Weight:
    return Weight(1 if k == i - 1 else 0 for k in range(n))


def simple_root(n: int, i: int) -> Weight:
    """alpha_i in fundamental-weight coordinates (row i of the Cartan matrix)."""
    return Weight(cartan_matrix(n).matrix[i - 1])


def zero_weight(n: int) -> Weight:
    return Weight((0,) * n)


def weight_pairing(mu, nu) -> Fraction:
    """Symmetric form with (alpha_i, alpha_j) = a_ij and (varpi_i, alpha_j) = delta_ij.

    >>> weight_pairing(Weight((1,)), Weight((1,)))
    Fraction(1, 2)
    """
    _check_rank(mu, nu)
    inv = _inverse_cartan(len(mu))
    total = Fraction(0)
    for i, a in enumerate(mu):
        if a:
            row = inv[i]
            for j, b in enumerate(nu):
                if b:
                    total += a * b * row[j]
    return total


def int_pairing(mu, nu) -> int:
    """weight_pairing, asserting that the value is an integer."""
    v = weight_pairing(mu, nu)
    if v.denominator != 1:
        raise ValueError(f"pairing {v} is not an integer")
    return int(v)


def rho(n: int) -> Weight:
    return Weight((1,) * n)


def longest_word(n: int) -> list:
    """Staircase reduced word s1 (s2 s1) (s3 s2 s1) ... of the longest element.

    >>> longest_word(2)
    [1, 2, 1]
    """
    word = []
    for k in range(1, n + 1):
        word.extend(range(k, 0, -1))
    return word


def reflect(i: int, lam: Weight) -> Weight:
    """Simple reflection s_i(lam) = lam - lam_i alpha_i."""
    n = len(lam)
    return lam - simple_root(n, i) * lam[i - 1]


def act(word, lam: Weight) -> Weight:
    """Action of s_{w1} ... s_{wk} (rightmost letter first)."""
    for i in reversed(list(word)):
        lam = reflect(i, lam)
    return lam


def positive_roots(n: int) -> list:
    """alpha_i + ... + alpha_j for 1 <= i <= j <= n."""
    out = []
    for i in range(1, n + 1):
        acc = zero_weight(n)
        for j in range(i, n + 1):
            acc = acc + simple_root(n, j)
            out.append(acc)
    return out


def _root_coords(n: int, lam: Weight):
    """Coordinates of a weight in the simple-root basis (exact)."""
    inv = _inverse_cartan(n)
    return [sum(inv[i][j] * lam[j] for j in range(n)) for i in range(n)]


def is_negative_root(n: int, lam: Weight) -> bool:
    c = _root_coords(n, lam)
    return any(x != 0 for x in c) and all(x <= 0 for x in c)


def is_longest_word(word, n: int) -> bool:
    """Length n(n+1)/2 and every positive root is sent to a negative root."""
    if len(word) != n * (n + 1) // 2:
        return False
    return all(is_negative_root(n, act(word, a)) for a in positive_roots(n))


def minus_w0(lam) -> Weight:
    """-w0 on weights of type A: reversal of fundamental-weight coordinates."""
    return Weight(reversed(tuple(lam)))


def w0_action(lam: Weight) -> Weight:
    """w0(lam) computed through the longest word (used as an oracle)."""
    return act(longest_word(len(lam)), lam)
