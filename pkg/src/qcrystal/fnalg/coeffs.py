"""Matrix coefficients of modules realized inside V(varpi_1)^{(x) m}."""
from __future__ import annotations

import itertools

from ..linalg import matvec
from ..repth.forms import polarization
from ..repth.module import Rep, Span
from .frt import FnAlgElem, FRTAlgebra


def _multi_index(k: int, N: int, m: int):
    """Tensor basis index -> tuple of 1-based factor indices (lexicographic)."""
    out = []
    for _ in range(m):
        k, r = divmod(k, N)
        out.append(r + 1)
    return tuple(reversed(out))


def ambient_functional(rep: Rep, f):
    """Extend a functional on rep (dual-basis coordinates) to its ambient space."""
    if rep.embedding is None:
        return list(f)
    sp = Span(rep.embedding)
    out = [0] * rep.ambient.dim
    for b, r in enumerate(sp.rows_used):
        acc = 0
        for a in range(rep.dim):
            if f[a] and sp.inv[a][b]:
                acc = acc + f[a] * sp.inv[a][b]
        out[r] = acc
    return out


def ambient_vector(rep: Rep, v):
    if rep.embedding is None:
        return list(v)
    out = [0] * rep.ambient.dim
    for c, a in zip(rep.embedding, v):
        if a:
            for k, x in enumerate(c):
                if x:
                    out[k] = out[k] + a * x
    return out


def coefficient_functional(rep: Rep, f, v, alg: FRTAlgebra) -> FnAlgElem:
    """The element a -> <f, a v> of O_t(SL(n+1)).

    ``f`` is given in dual-basis coordinates of ``rep`` and ``v`` in the
    basis of ``rep``; ``rep`` must be V(varpi_1)^{(x) m} or embedded in it.
    """
    m = rep.tensor_power
    if m is None:
        raise ValueError("module is not realized inside a tensor power of V(varpi_1)")
    N = rep.n + 1
    fa = ambient_functional(rep, f)
    va = ambient_vector(rep, v)
    out = alg.zero()
    terms: dict = {}
    for A, x in enumerate(fa):
        if not x:
            continue
        ia = _multi_index(A, N, m)
        for B, y in enumerate(va):
            if not y:
                continue
            ib = _multi_index(B, N, m)
            key = tuple(zip(ia, ib))
            c = alg.coerce(x * y)
            terms[key] = terms.get(key, 0) + c
    for key, c in terms.items():
        if c:
            out = out + alg.normal_form(list(key)).scale(c)
    return out


def matrix_coeff(rep: Rep, i: int, j: int, alg: FRTAlgebra = None, gram=None) -> FnAlgElem:
    """C_{i,j}: a -> (v_i, a v_j) with the polarization of rep (1-based i, j).

    For the vector representation this is the generator u_ij.
    """
    if not (1 <= i <= rep.dim and 1 <= j <= rep.dim):
        raise IndexError(f"matrix coefficient ({i},{j}) out of range for dim {rep.dim}")
    alg = alg or FRTAlgebra(rep.n)
    G = gram if gram is not None else polarization(rep)
    f = matvec(G, rep.basis_vector(i - 1))
    return coefficient_functional(rep, f, rep.basis_vector(j - 1), alg)


def coproduct_paths(N: int, i: int, j: int, legs: int):
    """Index paths (i, k1, ..., k_{legs-1}, j) of the iterated coproduct of u_ij."""
    for mid in itertools.product(range(1, N + 1), repeat=legs - 1):
        path = (i,) + mid + (j,)
        yield [(path[a], path[a + 1]) for a in range(legs)]
