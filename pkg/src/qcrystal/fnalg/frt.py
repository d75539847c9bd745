"""The quantized function algebra O_t(SL(n+1)) by normal-ordered rewriting.

Generators u_ij (1 <= i, j <= N = n+1) are numbered g = (i-1) N + (j-1)
(row-major).  A monomial is a sorted tuple of generator numbers; products
are brought to this order with the quantum-matrix exchange rules and the
relation D = 1 is applied to monomials containing every diagonal generator.

Coefficients live in Q(t) (``q=None``) or, for specializations, in Q with
t replaced by a rational number q.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ..ratfield import ONE, T, RatFunc


def inversions(perm) -> int:
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


class FRTAlgebra:
    """O_t(SL(n+1)) (or O_t(M(n+1)) with ``impose_det=False``)."""

    def __init__(self, n: int, q=None, impose_det: bool = True):
        self.n = n
        self.N = n + 1
        self.q = q
        self.impose_det = impose_det
        if q is None:
            self.t = T
            self.one = ONE
        else:
            self.t = Fraction(q)
            self.one = Fraction(1)
        self.tinv = 1 / self.t
        self.tdiff = self.t - self.tinv
        self.diag = tuple(k * self.N + k for k in range(self.N))
        self._mulcache: dict = {}
        self._detcache: dict = {}

    # -- indexing -------------------------------------------------------
    def gen(self, i: int, j: int) -> int:
        if not (1 <= i <= self.N and 1 <= j <= self.N):
            raise IndexError(f"generator u({i},{j}) out of range for n={self.n}")
        return (i - 1) * self.N + (j - 1)

    def ij(self, g: int):
        return divmod(g, self.N)[0] + 1, g % self.N + 1

    def coerce(self, c):
        if self.q is None:
            return RatFunc.coerce(c)
        if isinstance(c, RatFunc):
            return c.eval_at(self.q)
        return Fraction(c)

    # -- elements -------------------------------------------------------
    def element(self, terms=None) -> "FnAlgElem":
        return FnAlgElem(self, terms or {})

    def unit(self) -> "FnAlgElem":
        return FnAlgElem(self, {(): self.one})

    def zero(self) -> "FnAlgElem":
        return FnAlgElem(self, {})

    def u(self, i: int, j: int) -> "FnAlgElem":
        return FnAlgElem(self, {(self.gen(i, j),): self.one})

    def scalar(self, c) -> "FnAlgElem":
        c = self.coerce(c)
        return FnAlgElem(self, {(): c} if c else {})

    # -- exchange rules ---------------------------------------------------
    def _swap(self, x: int, y: int):
        """x*y for generators x > y, as a list of (coef, (a, b)) words."""
        k, l = self.ij(x)
        i, j = self.ij(y)
        if i == k:  # same row, l > j: u_il u_ij = t^-1 u_ij u_il
            return [(self.tinv, (y, x))]
        if j == l:  # same column, k > i
            return [(self.tinv, (y, x))]
        if j > l:  # i < k, j > l: u_kl u_ij = u_ij u_kl
            return [(self.one, (y, x))]
        # i < k, j < l: u_kl u_ij = u_ij u_kl - (t - t^-1) u_il u_kj
        return [(self.one, (y, x)), (-self.tdiff, (self.gen(i, l), self.gen(k, j)))]

    def _mul_gen(self, mono: tuple, g: int) -> dict:
        """Normal form (without D-reduction) of mono * u_g."""
        if not mono or mono[-1] <= g:
            return {mono + (g,): self.one}
        key = (mono, g)
        hit = self._mulcache.get(key)
        if hit is not None:
            return hit
        head, x = mono[:-1], mono[-1]
        out: dict = {}
        for c, (a, b) in self._swap(x, g):
            for m1, c1 in self._mul_gen(head, a).items():
                for m2, c2 in self._mul_gen(m1, b).items():
                    v = c * c1 * c2
                    s = out.get(m2)
                    v = v + s if s is not None else v
                    if v:
                        out[m2] = v
                    else:
                        out.pop(m2, None)
        self._mulcache[key] = out
        return out

    def mul_mono(self, m1: tuple, m2: tuple) -> dict:
        cur = {m1: self.one}
        for g in m2:
            nxt: dict = {}
            for m, c in cur.items():
                for m3, c3 in self._mul_gen(m, g).items():
                    v = c * c3
                    s = nxt.get(m3)
                    v = v + s if s is not None else v
                    if v:
                        nxt[m3] = v
                    else:
                        nxt.pop(m3, None)
            cur = nxt
        return cur

    # -- D = 1 ------------------------------------------------------------
    def _offdiag(self, mono) -> int:
        return sum((self.ij(g)[0] - self.ij(g)[1]) ** 2 for g in mono)

    def _contains_diag(self, mono) -> bool:
        s = set(mono)
        return all(d in s for d in self.diag)

    def _reduce_det_mono(self, mono: tuple) -> dict:
        """Rewrite a monomial containing u_11 ... u_NN using D = 1."""
        hit = self._detcache.get(mono)
        if hit is not None:
            return hit
        rest_m = list(mono)
        for d in self.diag:
            rest_m.remove(d)
        rest_m = tuple(rest_m)
        # D * M' in the bialgebra (D central) = lam * mono + other
        prod = self._raw_product(self.det_terms(), {rest_m: self.one})
        lam = prod.pop(mono)
        base = self._offdiag(mono)
        for m in prod:
            if self._offdiag(m) <= base:
                raise AssertionError("determinant reduction is not decreasing")
        inv = 1 / lam
        out: dict = {}
        acc = {rest_m: inv}
        for m, c in prod.items():
            acc[m] = acc.get(m, 0) - inv * c
        for m, c in acc.items():
            if not c:
                continue
            sub = self._reduce_det_mono(m) if self._contains_diag(m) else {m: self.one}
            for m2, c2 in sub.items():
                v = out.get(m2, 0) + c * c2
                if v:
                    out[m2] = v
                else:
                    out.pop(m2, None)
        self._detcache[mono] = out
        return out

    def reduce_det(self, terms: dict) -> dict:
        if not self.impose_det:
            return terms
        out: dict = {}
        for m, c in terms.items():
            if self._contains_diag(m):
                for m2, c2 in self._reduce_det_mono(m).items():
                    v = out.get(m2, 0) + c * c2
                    if v:
                        out[m2] = v
                    else:
                        out.pop(m2, None)
            else:
                v = out.get(m, 0) + c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def _raw_product(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                for m, c in self.mul_mono(m1, m2).items():
                    v = out.get(m, 0) + c1 * c2 * c
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return out

    def product(self, a: dict, b: dict) -> dict:
        return self.reduce_det(self._raw_product(a, b))

    # -- words --------------------------------------------------------------
    def normal_form(self, word) -> "FnAlgElem":
        """Normal form of a product of generators given as (i, j) pairs."""
        terms = {(): self.one}
        for i, j in word:
            g = self.gen(i, j)
            nxt: dict = {}
            for m, c in terms.items():
                for m2, c2 in self._mul_gen(m, g).items():
                    v = nxt.get(m2, 0) + c * c2
                    if v:
                        nxt[m2] = v
                    else:
                        nxt.pop(m2, None)
            terms = nxt
        return FnAlgElem(self, self.reduce_det(terms))

    def normal_form_random(self, word, rng: random.Random) -> "FnAlgElem":
        """Normal form computed by rewriting randomly chosen adjacent inversions.

        Used to test that the result does not depend on the reduction order.
        """
        terms = {tuple(self.gen(i, j) for i, j in word): self.one}
        while True:
            pending = [w for w in terms if any(w[k] > w[k + 1] for k in range(len(w) - 1))]
            if not pending:
                break
            w = rng.choice(sorted(pending))
            c = terms.pop(w)
            pos = rng.choice([k for k in range(len(w) - 1) if w[k] > w[k + 1]])
            for c2, (a, b) in self._swap(w[pos], w[pos + 1]):
                nw = w[:pos] + (a, b) + w[pos + 2:]
                v = terms.get(nw, 0) + c * c2
                if v:
                    terms[nw] = v
                else:
                    terms.pop(nw, None)
        return FnAlgElem(self, self.reduce_det(terms))

    # -- determinant, minors -----------------------------------------------
    def minor_terms(self, rows, cols) -> dict:
        """Quantum minor sum_sigma (-t)^{l(sigma)} u_{r1,c_sigma(1)} ... (rows increasing)."""
        rows, cols = list(rows), list(cols)
        out = {(): self.one}
        acc: dict = {}
        for perm in itertools.permutations(range(len(cols))):
            coef = (-self.t) ** inversions(perm) if inversions(perm) else self.one
            word = {(): coef}
            for r, p in zip(rows, perm):
                word = self._raw_product(word, {(self.gen(r, cols[p]),): self.one})
            for m, c in word.items():
                v = acc.get(m, 0) + c
                if v:
                    acc[m] = v
                else:
                    acc.pop(m, None)
        return acc if rows else out

    def det_terms(self) -> dict:
        if not hasattr(self, "_det"):
            self._det = self.minor_terms(range(1, self.N + 1), range(1, self.N + 1))
        return self._det

    def qdet(self) -> "FnAlgElem":
        """Quantum determinant; equals 1 when the determinant relation is imposed."""
        return FnAlgElem(self, self.reduce_det(dict(self.det_terms())))

    def qdet_unreduced(self) -> "FnAlgElem":
        return FnAlgElem(self, dict(self.det_terms()))

    def cofactor(self, r: int, s: int) -> "FnAlgElem":
        """D^{r,s}: quantum minor on rows != r and columns != s."""
        rows = [i for i in range(1, self.N + 1) if i != r]
        cols = [j for j in range(1, self.N + 1) if j != s]
        return FnAlgElem(self, self.reduce_det(self.minor_terms(rows, cols)))

    # -- involutions ----------------------------------------------------------
    def star_gen(self, r: int, s: int) -> "FnAlgElem":
        """(u_rs)* = (-t)^{s-r} D^{r,s}."""
        key = ("star", r, s)
        if key not in self._detcache:
            self._detcache[key] = self.cofactor(r, s).scale(self._mt_pow(s - r))
        return self._detcache[key]

    def antipode_gen(self, i: int, j: int) -> "FnAlgElem":
        """S(u_ij) = (-t)^{i-j} D^{j,i}."""
        key = ("S", i, j)
        if key not in self._detcache:
            self._detcache[key] = self.cofactor(j, i).scale(self._mt_pow(i - j))
        return self._detcache[key]

    def _mt_pow(self, k: int):
        return (-self.t) ** k if k else self.one

    def _anti_extend(self, x: "FnAlgElem", gen_map, coef_map) -> "FnAlgElem":
        out = self.zero()
        for m, c in x.terms.items():
            acc = self.scalar(coef_map(c))
            for g in reversed(m):
                i, j = self.ij(g)
                acc = acc * gen_map(i, j)
            out = out + acc
        return out

    def star(self, x: "FnAlgElem") -> "FnAlgElem":
        """Conjugate-linear (t and rationals are real) anti-multiplicative involution."""
        return self._anti_extend(x, self.star_gen, lambda c: c)

    def antipode(self, x: "FnAlgElem") -> "FnAlgElem":
        return self._anti_extend(x, self.antipode_gen, lambda c: c)

    # -- parsing / printing -------------------------------------------------
    def gen_name(self, g: int) -> str:
        i, j = self.ij(g)
        return f"u{i}{j}" if self.N <= 9 else f"u({i},{j})"

    def specialize(self, q) -> "FRTAlgebra":
        return FRTAlgebra(self.n, q=q, impose_det=self.impose_det)


def _coef_str(c) -> str:
    s = str(c)
    if isinstance(c, RatFunc):
        if not (c.is_laurent() and len(c.laurent_coeffs()) == 1):
            return f"({s})"
        return s
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"({s})"
    return s


def _is_negative(c) -> bool:
    if isinstance(c, RatFunc):
        if c.is_laurent():
            lc = c.laurent_coeffs()
            if len(lc) == 1:
                return next(iter(lc.values())) < 0
        return False
    return c < 0


class FnAlgElem:
    """Element of O_t(SL(n+1)): map from normal-ordered monomials to coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FRTAlgebra, terms: dict):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c}

    def _lift(self, other):
        if isinstance(other, FnAlgElem):
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return FnAlgElem(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return FnAlgElem(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, s):
        s = self.alg.coerce(s)
        return FnAlgElem(self.alg, {m: s * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FnAlgElem):
            return self.scale(other)
        return FnAlgElem(self.alg, self.alg.product(self.terms, other.terms))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = self.alg.unit()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, FnAlgElem):
            other = self._lift(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (len(mc[0]), mc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            neg = _is_negative(c)
            cc = -c if neg else c
            mono = "*".join(
                self.alg.gen_name(g) + (f"^{len(list(grp))}" if m.count(g) > 1 else "")
                for g, grp in itertools.groupby(m)
            )
            if not m:
                body = str(cc)
            elif cc == 1:
                body = mono
            else:
                body = f"{_coef_str(cc)}*{mono}"
            if k == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"FnAlgElem({self})"

    def coefficients(self):
        return list(self.terms.values())

    def map_coefficients(self, alg: FRTAlgebra, fn) -> "FnAlgElem":
        """Transport to another algebra applying fn to each coefficient."""
        out: dict = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                out[m] = out.get(m, 0) + v
        return FnAlgElem(alg, alg.reduce_det(out))
