"""Contravariant forms, dual modules and lattice decompositions."""
from __future__ import annotations

from dataclasses import dataclass

from ..cartan import Weight, int_pairing, minus_w0, rho
from ..linalg import (
    A0Basis,
    SMat,
    a0_basis,
    det,
    inverse,
    matvec,
    nullspace,
    transpose,
)
from ..ratfield import ONE, RatFunc
from .crystal import crystal_lattice
from .module import Rep, Span, generate_submodule, tpow


def _val(x):
    return RatFunc.coerce(x).valuation()


def in_one_plus_tA0(x) -> bool:
    """x - 1 has positive valuation."""
    return _val(RatFunc.coerce(x) - 1) >= 1


def _two_rho_pairing(n):
    r2 = rho(n) * 2
    return lambda w: int_pairing(w, r2)


def _rho_pairing(n):
    r = rho(n)
    return lambda w: int_pairing(w, r)


# ---------------------------------------------------------------------------
# polarization
# ---------------------------------------------------------------------------

def star_matrices(rep: Rep, i: int):
    """Matrices of E_i* = t F_i K_i^-1 and F_i* = t^-1 K_i E_i."""
    Es = (rep.F[i - 1] @ rep.Kinv(i)).scale(tpow(1))
    Fs = (rep.K(i) @ rep.E[i - 1]).scale(tpow(-1))
    return Es, Fs


def is_contravariant(rep: Rep, gram) -> tuple:
    """Check (x u, v) = (u, x* v) for x in E_i, F_i, K_i; returns (ok, witness)."""
    G = SMat.from_dense(gram)
    for i in range(1, rep.n + 1):
        Es, Fs = star_matrices(rep, i)
        for name, X, Xs in (("E", rep.E[i - 1], Es), ("F", rep.F[i - 1], Fs), ("K", rep.K(i), rep.K(i))):
            lhs = X.transpose() @ G
            rhs = G @ Xs
            if lhs != rhs:
                return False, f"{name}_{i} at entry {lhs.first_difference(rhs)}"
    return True, ""


def polarization(rep: Rep, hw_index: int = None):
    """The symmetric contravariant form normalized by (v_hw, v_hw) = 1.

    Solves the contravariance equations for the E_i and F_i (weight spaces
    are orthogonal) over Q(t).  Raises ValueError unless the solution space
    is one-dimensional, which happens exactly for irreducible modules.
    """
    hw = rep.hw_index if hw_index is None else hw_index
    d = rep.dim
    unknowns = {}
    for a in range(d):
        for b in range(a, d):
            if rep.weights[a] == rep.weights[b]:
                unknowns[(a, b)] = len(unknowns)

    def var(a, b):
        return unknowns.get((a, b) if a <= b else (b, a))

    eqs = []
    for i in range(1, rep.n + 1):
        Es, Fs = star_matrices(rep, i)
        for X, Xs in ((rep.E[i - 1], Es), (rep.F[i - 1], Fs)):
            XT = X.transpose()
            # (X^T G - G Xs)[a][b] = sum_r X[r][a] G[r][b] - sum_s G[a][s] Xs[s][b]
            Xs_cols = Xs.transpose()
            for a in range(d):
                for b in range(d):
                    row = {}
                    for r, x in XT.rows.get(a, {}).items():
                        k = var(r, b)
                        if k is not None:
                            row[k] = row.get(k, 0) + x
                    for s, y in Xs_cols.rows.get(b, {}).items():
                        k = var(a, s)
                        if k is not None:
                            row[k] = row.get(k, 0) - y
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        eqs.append([row.get(k, 0) for k in range(len(unknowns))])
    kern = nullspace(eqs, ncols=len(unknowns))
    if len(kern) != 1:
        raise ValueError("contravariant form is not unique: module is not irreducible")
    sol = kern[0]
    norm = sol[unknowns[(hw, hw)]]
    if not norm:
        raise ValueError("highest weight vector is isotropic")
    G = [[0] * d for _ in range(d)]
    for (a, b), k in unknowns.items():
        x = sol[k] / norm if sol[k] else 0
        G[a][b] = x
        G[b][a] = x
    return G


def product_form(gram_a, gram_b):
    """Gram matrix of the tensor product form (Kronecker product)."""
    return SMat.from_dense(gram_a).kron(SMat.from_dense(gram_b)).to_dense()


def tensor_power_form(n: int, m: int):
    """Product form on V(varpi_1)^{(x) m}; the vector-representation Gram is the identity."""
    d = (n + 1) ** m
    return [[ONE if a == b else 0 for a in range(d)] for b in range(d)]


def restricted_form(gram, cols):
    """Gram matrix of the form restricted to the span of the given columns."""
    gc = [matvec(gram, c) for c in cols]
    return [[sum((x * y for x, y in zip(u, w) if x and y), 0) for w in gc] for u in cols]


# ---------------------------------------------------------------------------
# dual modules
# ---------------------------------------------------------------------------

def dual_module(rep: Rep) -> Rep:
    """V* with (a.f)(v) = f(S(a) v), in coordinates of the dual basis.

    S(E_i) = -E_i K_i and S(F_i) = -K_i^-1 F_i, so the actions are the
    transposes of these operators; K_i acts through the negated weights.
    """
    E, F = [], []
    for i in range(1, rep.n + 1):
        E.append((rep.E[i - 1] @ rep.K(i)).transpose().scale(-1))
        F.append((rep.Kinv(i) @ rep.F[i - 1]).transpose().scale(-1))
    weights = [-w for w in rep.weights]
    labels = [f"{l}^o" for l in rep.labels]
    return Rep(rep.n, weights, E, F, labels, hw_index=rep.dim - 1, name=f"dual({rep.name})")


@dataclass
class DualData:
    """The dual V(Lambda)* with its normalized form and the star maps.

    ``gram`` is the form on V(Lambda) (the polarization), ``dual_gram`` the
    normalized form on the dual in dual-basis coordinates, ``c`` the
    lowest-weight norm and ``lam`` the highest weight.
    """

    rep: Rep
    dual: Rep
    gram: list
    dual_gram: list
    c: RatFunc
    lam: Weight

    def star(self, v):
        """v* = (v, .) in dual-basis coordinates."""
        return matvec(self.gram, v)

    def double_star(self, v):
        """(v*)* as a vector of V (identifying V** with V)."""
        return matvec(self.dual_gram, self.star(v))

    def dual_norm(self, f, g=None):
        g = f if g is None else g
        return sum((x * y for x, y in zip(f, matvec(self.dual_gram, g)) if x and y), 0)

    def v1_dual(self):
        """t^{(w0 Lambda - Lambda, rho)} (v_n)*, the dual highest weight vector."""
        n = self.rep.n
        low = self.rep.weights[-1]  # w0 Lambda
        e = int_pairing(low - self.lam, rho(n))
        s = tpow(e)
        return [s * x if x else 0 for x in self.star(self.rep.basis_vector(self.rep.dim - 1))]

    def w_vector(self, k: int):
        """w_k = t^{(wt(v_{N+1-k}) - Lambda, rho)} (v_{N+1-k})*, k = 1..N."""
        N = self.rep.dim
        j = N - k
        e = int_pairing(self.rep.weights[j] - self.lam, rho(self.rep.n))
        s = tpow(e)
        return [s * x if x else 0 for x in self.star(self.rep.basis_vector(j))]

    def w_weight(self, k: int) -> Weight:
        return -self.rep.weights[self.rep.dim - k]

    def w_basis(self):
        return [self.w_vector(k) for k in range(1, self.rep.dim + 1)]

    def raw_duals(self):
        return [self.star(self.rep.basis_vector(j)) for j in range(self.rep.dim)]


def dual_rep(rep: Rep, gram=None) -> DualData:
    """Dual module with the normalized dual form.

    (u*, v*) = c^-1 t^{(Lambda, 2 rho)} (K^{-2 rho} u, v), c = (v_N, v_N).
    In dual-basis coordinates u* = G u, so the dual Gram matrix is
    c^-1 t^{(Lambda,2rho)} G^-1 D with D = diag t^{-(wt, 2rho)}.
    """
    G = gram if gram is not None else polarization(rep)
    lam = rep.weights[rep.hw_index if rep.hw_index is not None else 0]
    p2 = _two_rho_pairing(rep.n)
    N = rep.dim
    c = RatFunc.coerce(G[N - 1][N - 1])
    Ginv = inverse(G)
    scale = tpow(p2(lam)) / c
    Gd = [[scale * Ginv[a][b] * tpow(-p2(rep.weights[b])) if Ginv[a][b] else 0 for b in range(N)] for a in range(N)]
    return DualData(rep, dual_module(rep), G, Gd, c, lam)


def double_dual_scalar(data: DualData, i: int) -> RatFunc:
    """c^-1 t^{(Lambda - mu, 2 rho)} for mu = wt(v_i) (0-based i)."""
    p2 = _two_rho_pairing(data.rep.n)
    return tpow(p2(data.lam - data.rep.weights[i])) / data.c


def check_double_dual(data: DualData) -> tuple:
    """((v_i)*)* = c^-1 t^{(Lambda-mu,2rho)} v_i for every basis vector."""
    for i in range(data.rep.dim):
        lhs = data.double_star(data.rep.basis_vector(i))
        s = double_dual_scalar(data, i)
        rhs = [s * x if x else 0 for x in data.rep.basis_vector(i)]
        if any(a != b for a, b in zip(lhs, rhs)):
            return False, f"v{i+1}: got {[str(x) for x in lhs]}"
    return True, ""


@dataclass
class DualLatticeReport:
    ok: bool
    norms: list
    exponents: list
    spans_lattice: bool
    weight_refined: bool
    strict_witnesses: list
    v1_norm: RatFunc
    change_of_basis_ok: bool
    witness: str = ""


def dual_lattice_basis(data: DualData) -> A0Basis:
    """A0-basis {w_k} of the dual lattice (returned after column reduction)."""
    return a0_basis(data.w_basis(), data.rep.dim)


def dual_global_basis(data: DualData) -> Rep:
    """Distinguished basis of the dual generated from v1_dual (see generate_submodule)."""
    lam_dual = minus_w0(data.lam)
    return generate_submodule(data.dual, data.v1_dual(), lam_dual, name=f"dual-global({data.rep.name})")


def check_dual_lattice(data: DualData) -> DualLatticeReport:
    """Verify the dual-lattice statements for an irreducible module.

    * each w_k has dual norm in 1 + tA0 and the exponent (Lambda - wt(v_k), rho)
      is a nonnegative integer;
    * the A0-span of {w_k} equals the crystal lattice of the dual generated
      by the dual highest weight vector through the Kashiwara operators,
      weight space by weight space;
    * the A0-span of the raw duals (v_k)* is strictly smaller (witnesses are
      the w_k outside it);
    * the matrix expressing the w_k in the distinguished basis of the dual
      has A0 entries and unit determinant.
    """
    rep = data.rep
    N = rep.dim
    rp = _rho_pairing(rep.n)
    ws = data.w_basis()
    norms = [data.dual_norm(w) for w in ws]
    exps = [rp(data.lam - rep.weights[j]) for j in range(N)]
    witness = []
    ok_norms = all(in_one_plus_tA0(x) for x in norms)
    if not ok_norms:
        witness.append("some w_k has norm outside 1+tA0")
    ok_exp = all(e >= 0 for e in exps)
    v1 = data.v1_dual()
    v1n = RatFunc.coerce(data.dual_norm(v1))
    L = crystal_lattice(data.dual, [v1])
    Lw = a0_basis(ws, N)
    spans = Lw.equals(L)
    # weight refinement: both lattices are graded, compare per weight
    refined = True
    for mu in set(data.dual.weights):
        Lmu = [b for b in L.vectors if data.dual.vector_weight(b) == mu]
        Wmu = [ws[k - 1] for k in range(1, N + 1) if data.w_weight(k) == mu]
        if not a0_basis(Lmu, N).equals(a0_basis(Wmu, N)):
            refined = False
    raw = a0_basis(data.raw_duals(), N)
    strict = [k for k in range(1, N + 1) if not raw.contains(ws[k - 1])]
    gb = dual_global_basis(data)
    sp = Span(gb.embedding)
    M = [sp.coords(w) for w in ws]
    cob_ok = all(r is not None for r in M)
    if cob_ok:
        cob_ok = all(x == 0 or _val(x) >= 0 for r in M for x in r) and _val(det(M)) == 0
    ok = ok_norms and ok_exp and spans and refined and bool(strict) and v1n == 1 and cob_ok
    return DualLatticeReport(ok, norms, exps, spans, refined, strict, v1n, cob_ok, "; ".join(witness))


def intertwiners(A: Rep, B: Rep):
    """Basis of weight-preserving maps T: A -> B commuting with all E_i, F_i."""
    unknowns = {}
    for b in range(B.dim):
        for a in range(A.dim):
            if A.weights[a] == B.weights[b]:
                unknowns[(b, a)] = len(unknowns)
    eqs = []
    for i in range(1, A.n + 1):
        for XA, XB in ((A.E[i - 1], B.E[i - 1]), (A.F[i - 1], B.F[i - 1])):
            XAt = XA.transpose()
            # (T XA - XB T)[b][a] = sum_c T[b][c] XA[c][a] - sum_c XB[b][c] T[c][a]
            for b in range(B.dim):
                for a in range(A.dim):
                    row = {}
                    for c, x in XAt.rows.get(a, {}).items():
                        k = unknowns.get((b, c))
                        if k is not None:
                            row[k] = row.get(k, 0) + x
                    for c, y in XB.rows.get(b, {}).items():
                        k = unknowns.get((c, a))
                        if k is not None:
                            row[k] = row.get(k, 0) - y
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        eqs.append([row.get(k, 0) for k in range(len(unknowns))])
    kern = nullspace(eqs, ncols=len(unknowns)) if eqs else []
    out = []
    for kv in kern:
        T = [[0] * A.dim for _ in range(B.dim)]
        for (b, a), k in unknowns.items():
            T[b][a] = kv[k]
        out.append(T)
    return out


# ---------------------------------------------------------------------------
# orthogonal decomposition
# ---------------------------------------------------------------------------

@dataclass
class Decomposition:
    W: list
    W_perp: list
    L_W: A0Basis
    L_perp: A0Basis
    restricted_det: RatFunc
    splits: bool
    witness: str = ""


def orthogonal_decompose(rep: Rep, gram, W_cols, lattice: A0Basis) -> Decomposition:
    """Split V = W + W-perp and the lattice L = (L cap W) + (L cap W-perp).

    Raises ValueError when the form restricted to W is degenerate.
    """
    d = rep.dim
    W_cols = [list(c) for c in W_cols]
    GW = restricted_form(gram, W_cols)
    dW = det(GW) if W_cols else ONE
    if not dW:
        raise ValueError("form restricted to W is degenerate")
    # W-perp = {x : W^T G x = 0}
    rows = [matvec(transpose(gram), c) for c in W_cols]
    perp = nullspace(rows, ncols=d) if rows else [[ONE if a == b else 0 for a in range(d)] for b in range(d)]
    if perp:
        dP = det(restricted_form(gram, perp))
        if not dP:
            raise ValueError("form restricted to W-perp is degenerate")
    # projection onto W along W-perp: P x = W GW^-1 W^T G x
    GWi = inverse(GW) if W_cols else []
    proj_W, proj_P = [], []
    for b in lattice.vectors:
        coeff = matvec(GWi, [sum((x * y for x, y in zip(c, matvec(gram, b)) if x and y), 0) for c in W_cols]) if W_cols else []
        pw = [0] * d
        for c, a in zip(W_cols, coeff):
            if a:
                for k in range(d):
                    if c[k]:
                        pw[k] = pw[k] + a * c[k]
        proj_W.append(pw)
        proj_P.append([x - y for x, y in zip(b, pw)])
    witness = ""
    splits = True
    for k, (pw, pp) in enumerate(zip(proj_W, proj_P)):
        if not lattice.contains(pw) or not lattice.contains(pp):
            splits = False
            witness = f"projection of lattice basis vector {k} leaves the lattice"
            break
    LW = a0_basis(proj_W, d)
    LP = a0_basis(proj_P, d)
    if splits:
        total = a0_basis(LW.vectors + LP.vectors, d)
        if not (total.equals(lattice) and LW.rank + LP.rank == lattice.rank):
            splits = False
            witness = "lattice pieces do not recombine"
    return Decomposition(W_cols, perp, LW, LP, RatFunc.coerce(dW), splits, witness)
