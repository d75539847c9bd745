"""Kashiwara operators and lower crystal lattices."""
from __future__ import annotations

from ..linalg import A0Basis, SMat, a0_basis, inverse, matmul, nullspace, transpose
from ..ratfield import ONE
from .module import Rep, divided_power


def _adapted_basis(rep: Rep, i: int):
    """Columns F_i^{(k)} h over a basis of ker E_i, with string data.

    Returns (cols, data) where data[c] = (string id, k, length).
    """
    cols, data = [], []
    Ei = rep.E[i - 1]
    sid = 0
    weights = sorted(set(rep.weights), key=lambda w: tuple(w))
    for mu in weights:
        m = mu[i - 1]
        if m < 0:
            continue
        idx = rep.indices_of_weight(mu)
        rows = []
        for r, cs in Ei.rows.items():
            row = [cs.get(k, 0) for k in idx]
            if any(row):
                rows.append(row)
        if rows:
            kern = nullspace(rows, ncols=len(idx))
        else:
            kern = [[ONE if a == b else 0 for a in range(len(idx))] for b in range(len(idx))]
        for kv in kern:
            h = [0] * rep.dim
            for k, x in zip(idx, kv):
                h[k] = x
            for k in range(m + 1):
                cols.append(divided_power(rep, i, k, h))
                data.append((sid, k, m))
            sid += 1
    if len(cols) != rep.dim:
        raise ValueError("module is not integrable on the given basis")
    return cols, data


class KashiwaraOps:
    """Matrices of the Kashiwara operators E~_i, F~_i in the module basis.

    A vector is decomposed into i-strings u = sum_k F_i^{(k)} u_k with
    E_i u_k = 0, and F~_i u = sum_k F_i^{(k+1)} u_k, E~_i u = sum_k F_i^{(k-1)} u_k.
    These operators are Q(t)-linear once the string decomposition is fixed
    by the weight grading, so they are stored as matrices.
    """

    def __init__(self, rep: Rep):
        self.rep = rep
        self.Et, self.Ft = [], []
        for i in range(1, rep.n + 1):
            cols, data = _adapted_basis(rep, i)
            B = transpose(cols)
            Binv = inverse(B)
            pos = {(s, k): c for c, (s, k, _) in enumerate(data)}
            up, down = {}, {}
            for c, (s, k, m) in enumerate(data):
                if k < m:
                    down.setdefault(pos[(s, k + 1)], {})[c] = ONE
                if k > 0:
                    up.setdefault(pos[(s, k - 1)], {})[c] = ONE
            d = rep.dim
            Fs = SMat(d, d, down).to_dense()
            Es = SMat(d, d, up).to_dense()
            self.Ft.append(SMat.from_dense(matmul(matmul(B, Fs), Binv)))
            self.Et.append(SMat.from_dense(matmul(matmul(B, Es), Binv)))

    def F(self, i: int, v):
        return self.Ft[i - 1] @ v

    def E(self, i: int, v):
        return self.Et[i - 1] @ v


def kashiwara_ops(rep: Rep) -> KashiwaraOps:
    return KashiwaraOps(rep)


def crystal_lattice(rep: Rep, generators, ops: KashiwaraOps = None) -> A0Basis:
    """A0-span of all F~_{j1}...F~_{js} g over the given generator vectors.

    The span is grown until it is closed under every F~_i and reduced to an
    A0-basis.  Raises ValueError if the result does not span the module.
    """
    ops = ops or KashiwaraOps(rep)
    vecs = [list(g) for g in generators]
    basis = a0_basis(vecs, rep.dim)
    while True:
        new = []
        for b in basis.vectors:
            for i in range(1, rep.n + 1):
                img = ops.F(i, b)
                if any(img) and not basis.contains(img):
                    new.append(img)
        if not new:
            break
        vecs = basis.vectors + new
        basis = a0_basis(vecs, rep.dim)
    if basis.rank != rep.dim:
        raise ValueError(f"generators span rank {basis.rank} < dim {rep.dim}")
    return basis


def is_crystal_closed(basis: A0Basis, ops: KashiwaraOps) -> bool:
    """E~_i L subset L and F~_i L subset L for all i."""
    for b in basis.vectors:
        for i in range(1, ops.rep.n + 1):
            if not basis.contains(ops.E(i, b)) or not basis.contains(ops.F(i, b)):
                return False
    return True


def standard_lattice(dim: int) -> A0Basis:
    """A0-span of the coordinate basis."""
    vecs = [[ONE if a == b else 0 for a in range(dim)] for b in range(dim)]
    return a0_basis(vecs, dim)


def congruent_mod_tL(lattice: A0Basis, u, v) -> bool:
    """u = v modulo t L."""
    diff = [a - b for a, b in zip(u, v)]
    c = lattice.coords(diff)
    return c is not None and all(x == 0 or _val(x) >= 1 for x in c)


def _val(x):
    from ..ratfield import RatFunc
    return RatFunc.coerce(x).valuation()
