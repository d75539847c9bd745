"""Evaluation of function-algebra elements on U_t(sl_{n+1}).

A monomial u_{a1 b1} ... u_{ad bd} pairs with a in U_t as the matrix entry
<e_{a1}^o (x) ... (x) e_{ad}^o, Delta^{(d)}(a) e_{b1} (x) ... (x) e_{bd}>
on V(varpi_1)^{(x) d}.  This is computed directly on tensor basis words, so
it is independent of the rewriting rules and serves as their oracle.

U-words are lists of ``(name, i)`` with name in ``E, F, K, Kinv``; the word
X1 X2 ... Xk acts with Xk first.
"""
from __future__ import annotations

import itertools

from ..cartan import simple_root
from .frt import FnAlgElem, FRTAlgebra


def _k_exp(i: int, b: int) -> int:
    # K_i e_b = t^{delta(b,i) - delta(b,i+1)} e_b
    return (1 if b == i else 0) - (1 if b == i + 1 else 0)


def _tpow(alg: FRTAlgebra, k: int):
    return alg.t ** k if k else alg.one


def apply_gen(alg: FRTAlgebra, name: str, i: int, state: dict) -> dict:
    """Act by one generator on a combination of tensor basis words."""
    out: dict = {}

    def add(w, c):
        v = out.get(w, 0) + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)

    for w, c in state.items():
        if name in ("K", "Kinv"):
            e = sum(_k_exp(i, b) for b in w)
            add(w, c * _tpow(alg, e if name == "K" else -e))
        elif name == "E":
            # sum_p 1 (x) .. (x) E at p (x) K^-1 (x) .. (x) K^-1
            for p, b in enumerate(w):
                if b == i + 1:
                    e = -sum(_k_exp(i, bb) for bb in w[p + 1:])
                    add(w[:p] + (i,) + w[p + 1:], c * _tpow(alg, e))
        elif name == "F":
            # sum_p K (x) .. (x) K (x) F at p (x) 1 (x) .. (x) 1
            for p, b in enumerate(w):
                if b == i:
                    e = sum(_k_exp(i, bb) for bb in w[:p])
                    add(w[:p] + (i + 1,) + w[p + 1:], c * _tpow(alg, e))
        else:
            raise ValueError(f"unknown generator {name}")
    return out


def apply_word(alg: FRTAlgebra, word, state: dict) -> dict:
    for name, i in reversed(list(word)):
        state = apply_gen(alg, name, i, state)
        if not state:
            break
    return state


def pair_monomial(alg: FRTAlgebra, pairs, word):
    """Pairing of the (not necessarily ordered) product of u_{ab} with a U-word."""
    rows = tuple(a for a, _ in pairs)
    cols = tuple(b for _, b in pairs)
    res = apply_word(alg, word, {cols: alg.one})
    return res.get(rows, 0)


def evaluate_pairing(x: FnAlgElem, word):
    """<x, word> for an algebra element x and a U-word."""
    alg = x.alg
    total = 0
    cache: dict = {}
    for m, c in x.terms.items():
        pairs = [alg.ij(g) for g in m]
        cols = tuple(b for _, b in pairs)
        if cols not in cache:
            cache[cols] = apply_word(alg, word, {cols: alg.one})
        v = cache[cols].get(tuple(a for a, _ in pairs), 0)
        if v:
            total = total + c * v
    return total


def evaluate_word_pairing(alg: FRTAlgebra, gen_word, u_word):
    """Pairing of a raw product of generators (given as (i,j) pairs)."""
    return pair_monomial(alg, list(gen_word), u_word)


def weight_of_index(n: int, b: int):
    """Weight of e_b in V(varpi_1)."""
    w = [0] * n
    if b <= n:
        w[b - 1] += 1
    if b >= 2:
        w[b - 2] -= 1
    return tuple(w)


def monomial_weight_shift(n: int, pairs):
    """sum wt(e_a) - sum wt(e_b): the weight a U-word must add to pair nonzero."""
    out = [0] * n
    for a, b in pairs:
        wa, wb = weight_of_index(n, a), weight_of_index(n, b)
        for k in range(n):
            out[k] += wa[k] - wb[k]
    return tuple(out)


def word_weight(n: int, word):
    out = [0] * n
    for name, i in word:
        a = simple_root(n, i)
        s = 1 if name == "E" else (-1 if name == "F" else 0)
        for k in range(n):
            out[k] += s * a[k]
    return tuple(out)


def pbw_words(n: int, max_exp: int = 3):
    """All words F_i^a K_j^b E_k^c with 1 <= i, j, k <= n and 0 <= a, b, c <= max_exp."""
    out = []
    seen = set()
    for i, j, k in itertools.product(range(1, n + 1), repeat=3):
        for a, b, c in itertools.product(range(max_exp + 1), repeat=3):
            w = tuple([("F", i)] * a + [("K", j)] * b + [("E", k)] * c)
            if w not in seen:
                seen.add(w)
                out.append(list(w))
    return out


def coproduct_word(word):
    """Delta of a U-word as a list of (sign-free) pairs (word1, word2)."""
    terms = [((), ())]
    for name, i in word:
        if name == "E":
            parts = [((name, i), ("Kinv", i)), (None, (name, i))]
        elif name == "F":
            parts = [((name, i), None), (("K", i), (name, i))]
        else:
            parts = [((name, i), (name, i))]
        nxt = []
        for w1, w2 in terms:
            for a, b in parts:
                nxt.append((w1 + ((a,) if a else ()), w2 + ((b,) if b else ())))
        terms = nxt
    return [(list(a), list(b)) for a, b in terms]


def counit_word(alg: FRTAlgebra, word):
    """epsilon(word): 0 if any E or F occurs, else 1."""
    return alg.one if all(name in ("K", "Kinv") for name, _ in word) else 0
