"""Finite-dimensional weight modules of U_t(sl_{n+1}) with exact action matrices."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..cartan import Weight, cartan_matrix, fundamental_weight, simple_root, zero_weight
from ..linalg import SMat, nullspace, rref, transpose
from ..ratfield import ONE, T, RatFunc


@lru_cache(maxsize=None)
def tpow(k: int) -> RatFunc:
    return RatFunc.t_pow(k)


@lru_cache(maxsize=None)
def qint(k: int) -> RatFunc:
    """Balanced quantum integer [k] = (t^k - t^-k)/(t - t^-1)."""
    return (tpow(k) - tpow(-k)) / (T - tpow(-1))


@lru_cache(maxsize=None)
def qfact(k: int) -> RatFunc:
    out = ONE
    for j in range(1, k + 1):
        out = out * qint(j)
    return out


@dataclass
class Rep:
    """A U_t(sl_{n+1})-module given by weight vectors and E_i, F_i matrices.

    K_i is not stored: it acts on a basis vector of weight ``mu`` by
    ``t**mu[i-1]``.  ``embedding`` (optional) holds the basis vectors as
    coordinate columns in ``ambient``; ``tensor_power`` records m when the
    ambient (or the module itself) is V(varpi_1)^{(x) m}.
    """

    n: int
    weights: list
    E: list
    F: list
    labels: list = None
    hw_index: int = None
    ambient: "Rep" = None
    embedding: list = None
    tensor_power: int = None
    name: str = ""

    def __post_init__(self):
        if self.labels is None:
            self.labels = [f"b{k}" for k in range(len(self.weights))]

    @property
    def dim(self) -> int:
        return len(self.weights)

    def K(self, i: int) -> SMat:
        return SMat.diag([tpow(w[i - 1]) for w in self.weights])

    def Kinv(self, i: int) -> SMat:
        return SMat.diag([tpow(-w[i - 1]) for w in self.weights])

    def K_weight(self, exponent) -> SMat:
        """Diagonal operator t^{exponent(wt)} on weight vectors."""
        return SMat.diag([tpow(exponent(w)) for w in self.weights])

    def identity(self) -> SMat:
        return SMat.identity(self.dim, ONE)

    def op(self, name: str, i: int) -> SMat:
        if name == "E":
            return self.E[i - 1]
        if name == "F":
            return self.F[i - 1]
        if name == "K":
            return self.K(i)
        if name == "Kinv":
            return self.Kinv(i)
        raise ValueError(f"unknown generator {name}")

    def indices_of_weight(self, mu) -> list:
        return [k for k, w in enumerate(self.weights) if w == mu]

    def weight_multiplicities(self) -> dict:
        out: dict = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out

    def vector_weight(self, vec):
        """Weight of a nonzero weight vector (error if not homogeneous)."""
        ws = {self.weights[k] for k, x in enumerate(vec) if x}
        if len(ws) != 1:
            raise ValueError("not a nonzero weight vector")
        return ws.pop()

    def basis_vector(self, k: int) -> list:
        v = [0] * self.dim
        v[k] = ONE
        return v

    def ambient_vector(self, k: int) -> list:
        return self.embedding[k] if self.embedding is not None else self.basis_vector(k)


def fundamental_rep(n: int) -> Rep:
    """The vector representation V(varpi_1) with basis e_1, ..., e_{n+1}.

    E_i e_{i+1} = e_i and F_i e_i = e_{i+1}; weights start at varpi_1 and
    drop by alpha_j from e_j to e_{j+1}.
    """
    dim = n + 1
    weights = [fundamental_weight(n, 1)]
    for j in range(1, n + 1):
        weights.append(weights[-1] - simple_root(n, j))
    E = [SMat(dim, dim, {i - 1: {i: ONE}}) for i in range(1, n + 1)]
    F = [SMat(dim, dim, {i: {i - 1: ONE}}) for i in range(1, n + 1)]
    labels = [f"e{j}" for j in range(1, dim + 1)]
    return Rep(n, weights, E, F, labels, hw_index=0, tensor_power=1, name=f"fund({n})")


def trivial_rep(n: int) -> Rep:
    return Rep(n, [zero_weight(n)], [SMat(1, 1) for _ in range(n)], [SMat(1, 1) for _ in range(n)],
               ["1"], hw_index=0, tensor_power=0, name="trivial")


def tensor_rep(A: Rep, B: Rep) -> Rep:
    """Tensor product with E -> E(x)K^-1 + 1(x)E, F -> F(x)1 + K(x)F.

    The basis is ordered lexicographically in the factor indices.
    """
    if A.n != B.n:
        raise ValueError("tensor factors have different rank")
    n = A.n
    IA, IB = A.identity(), B.identity()
    E, F = [], []
    for i in range(1, n + 1):
        E.append(A.E[i - 1].kron(B.Kinv(i)) + IA.kron(B.E[i - 1]))
        F.append(A.F[i - 1].kron(IB) + A.K(i).kron(B.F[i - 1]))
    weights = [a + b for a in A.weights for b in B.weights]
    labels = [f"{a}*{b}" for a in A.labels for b in B.labels]
    tp = None
    if A.tensor_power is not None and B.tensor_power is not None and A.embedding is None and B.embedding is None:
        tp = A.tensor_power + B.tensor_power
    hw = None
    if A.hw_index is not None and B.hw_index is not None:
        hw = A.hw_index * B.dim + B.hw_index
    return Rep(n, weights, E, F, labels, hw_index=hw, tensor_power=tp,
               name=f"tensor({A.name},{B.name})")


def tensor_power(n: int, m: int) -> Rep:
    if m == 0:
        return trivial_rep(n)
    rep = fundamental_rep(n)
    for _ in range(m - 1):
        rep = tensor_rep(rep, fundamental_rep(n))
    return rep


# ---------------------------------------------------------------------------
# relation verifier
# ---------------------------------------------------------------------------

@dataclass
class RelationReport:
    ok: bool
    checked: int = 0
    relation: str = ""
    witness: str = ""


def _diff_witness(rel, lhs, rhs):
    pos = lhs.first_difference(rhs)
    return RelationReport(False, relation=rel, witness=f"{rel} fails at matrix entry {pos}")


def verify_uq_relations(rep: Rep) -> RelationReport:
    """Check the defining relations of U_t(sl_{n+1}) as exact matrix identities.

    Relations, in order: K-invertibility and commutation, the K-conjugation
    of E_j and F_j, the E-F commutator, and the quantum Serre relations for
    E and for F.  Returns the first failing relation with the matrix entry
    where the two sides differ.
    """
    n = rep.n
    C = cartan_matrix(n)
    I = rep.identity()
    K = [rep.K(i) for i in range(1, n + 1)]
    Ki = [rep.Kinv(i) for i in range(1, n + 1)]
    E, F = rep.E, rep.F
    checked = 0
    zero = SMat(rep.dim, rep.dim)
    two = qint(2)
    for i in range(n):
        checked += 1
        if K[i] @ Ki[i] != I:
            return _diff_witness(f"K-invertibility K_{i+1}K_{i+1}^-1 = 1", K[i] @ Ki[i], I)
        for j in range(n):
            checked += 1
            if K[i] @ K[j] != K[j] @ K[i]:
                return _diff_witness(f"K-commutation K_{i+1}K_{j+1}", K[i] @ K[j], K[j] @ K[i])
    for i in range(n):
        for j in range(n):
            a = C.matrix[i][j]
            lhs = K[i] @ E[j] @ Ki[i]
            rhs = E[j].scale(tpow(a))
            checked += 1
            if lhs != rhs:
                return _diff_witness(f"K-conjugation K_{i+1}E_{j+1}K_{i+1}^-1 = t^a E_{j+1}", lhs, rhs)
            lhs = K[i] @ F[j] @ Ki[i]
            rhs = F[j].scale(tpow(-a))
            checked += 1
            if lhs != rhs:
                return _diff_witness(f"K-conjugation K_{i+1}F_{j+1}K_{i+1}^-1 = t^-a F_{j+1}", lhs, rhs)
    denom = T - tpow(-1)
    for i in range(n):
        for j in range(n):
            lhs = E[i] @ F[j] - F[j] @ E[i]
            rhs = (K[i] - Ki[i]).scale(1 / denom) if i == j else zero
            checked += 1
            if lhs != rhs:
                return _diff_witness(f"EF-commutator E_{i+1}F_{j+1} - F_{j+1}E_{i+1}", lhs, rhs)
    for X, name in ((E, "E"), (F, "F")):
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                a = C.matrix[i][j]
                if a == 0:
                    lhs, rhs = X[i] @ X[j], X[j] @ X[i]
                elif a == -1:
                    lhs = X[i] @ X[i] @ X[j] + X[j] @ X[i] @ X[i]
                    rhs = (X[i] @ X[j] @ X[i]).scale(two)
                else:
                    raise NotImplementedError("only simply-laced type A")
                checked += 1
                if lhs != rhs:
                    return _diff_witness(f"Serre-{name} ({i+1},{j+1})", lhs, rhs)
    return RelationReport(True, checked=checked)


# ---------------------------------------------------------------------------
# coordinates in a subspace
# ---------------------------------------------------------------------------

class Span:
    """Q(t)-coordinates with respect to a list of linearly independent columns."""

    def __init__(self, cols):
        self.cols = [list(c) for c in cols]
        d = len(self.cols)
        if d == 0:
            self.rows_used, self.inv = [], []
            return
        # independent rows of the column matrix
        _, piv = rref(self.cols)
        if len(piv) < d:
            raise ValueError("columns are linearly dependent")
        self.rows_used = piv
        sub = [[c[r] for c in self.cols] for r in piv]
        from ..linalg import inverse
        self.inv = inverse(sub)

    def coords(self, v, check=True):
        x = [sum((self.inv[a][b] * v[r] for b, r in enumerate(self.rows_used) if v[r] and self.inv[a][b]), 0)
             for a in range(len(self.cols))]
        if check:
            back = combine(self.cols, x, len(v))
            if any(p != q for p, q in zip(back, v)):
                return None
        return x


def combine(cols, coeffs, dim):
    out = [0] * dim
    for c, a in zip(cols, coeffs):
        if a:
            for k, x in enumerate(c):
                if x:
                    out[k] = out[k] + a * x
    return out


def apply(M: SMat, v):
    return M @ v


def is_zero_vec(v) -> bool:
    return not any(v)


def normalize_first(v):
    """Scale so that the first nonzero coordinate is 1."""
    for x in v:
        if x:
            inv = 1 / RatFunc.coerce(x)
            return [y * inv if y else 0 for y in v]
    raise ValueError("zero vector")


# ---------------------------------------------------------------------------
# submodules
# ---------------------------------------------------------------------------

def singular_vectors(rep: Rep, lam) -> list:
    """Basis of {x of weight lam : E_i x = 0 for all i}, in ambient coordinates."""
    idx = rep.indices_of_weight(Weight(lam))
    if not idx:
        return []
    rows = []
    for Ei in rep.E:
        for r, cols in Ei.rows.items():
            row = [cols.get(k, 0) for k in idx]
            if any(row):
                rows.append(row)
    kern = nullspace(rows, ncols=len(idx)) if rows else [[ONE if a == b else 0 for a in range(len(idx))] for b in range(len(idx))]
    out = []
    for kv in kern:
        v = [0] * rep.dim
        for k, x in zip(idx, kv):
            v[k] = x
        out.append(normalize_first(v))
    return out


def divided_power(rep: Rep, i: int, k: int, v):
    out = v
    for _ in range(k):
        out = rep.F[i - 1] @ out
    if k > 1:
        inv = 1 / qfact(k)
        out = [x * inv if x else 0 for x in out]
    return out


def _height(lam, mu, n):
    diff = Weight(lam) - Weight(mu)
    from ..cartan import _root_coords
    return int(sum(_root_coords(n, diff)))


def generate_submodule(rep: Rep, hw_vec, lam, name=""):
    """Submodule generated by a singular vector, with a distinguished basis.

    Basis vectors are produced by divided powers F_i^{(k)} applied to vectors
    at the top of their i-strings (E_i u = 0), falling back to plain F_i
    when that does not exhaust a weight space.  For minuscule modules this
    is the set of F-path images and for sl_2 the divided-power basis
    F^{(k)} v, i.e. the lower global basis in both cases.  The order is by
    depth below the highest weight, then discovery order.
    """
    n = rep.n
    lam = Weight(lam)
    found = [(hw_vec, lam)]
    by_weight = {lam: [hw_vec]}
    frontier = [(hw_vec, lam)]

    def _try_add(v, mu):
        if not any(v):
            return False
        cur = by_weight.get(mu, [])
        if cur:
            _, piv = rref(cur + [v])
            if len(piv) <= len(cur):
                return False
        by_weight.setdefault(mu, []).append(v)
        found.append((v, mu))
        frontier.append((v, mu))
        return True

    while frontier:
        batch, frontier[:] = list(frontier), []
        for v, mu in batch:
            for i in range(1, n + 1):
                m = mu[i - 1]
                if m > 0 and not any(rep.E[i - 1] @ v):
                    for k in range(1, m + 1):
                        _try_add(divided_power(rep, i, k, v), mu - simple_root(n, i) * k)
        if not frontier:
            for v, mu in list(found):
                for i in range(1, n + 1):
                    _try_add(rep.F[i - 1] @ v, mu - simple_root(n, i))
    order = sorted(range(len(found)), key=lambda k: (_height(lam, found[k][1], n), k))
    cols = [found[k][0] for k in order]
    wts = [found[k][1] for k in order]
    return restrict(rep, cols, wts, name=name or f"hw({rep.name},{lam.to_str()})")


def restrict(rep: Rep, cols, wts, name=""):
    """Submodule spanned by the given weight vectors (must be invariant)."""
    blocks: dict = {}
    for k, mu in enumerate(wts):
        blocks.setdefault(mu, []).append(k)
    spans = {mu: Span([cols[k] for k in ks]) for mu, ks in blocks.items()}
    d = len(cols)
    E, F = [], []
    for i in range(1, rep.n + 1):
        for X, sign, out in ((rep.E[i - 1], 1, E), (rep.F[i - 1], -1, F)):
            rows: dict = {}
            for k, v in enumerate(cols):
                img = X @ v
                if not any(img):
                    continue
                mu = wts[k] + simple_root(rep.n, i) * sign
                if mu not in spans:
                    raise ValueError("vectors do not span a submodule")
                c = spans[mu].coords(img)
                if c is None:
                    raise ValueError("vectors do not span a submodule")
                for a, x in zip(blocks[mu], c):
                    if x:
                        rows.setdefault(a, {})[k] = x
            out.append(SMat(d, d, rows))
    if rep.embedding is not None:
        # compose embeddings so coordinates always refer to the outermost space
        amb = rep.ambient
        cols_out = [combine(rep.embedding, c, amb.dim) for c in cols]
    else:
        amb, cols_out = rep, cols
    return Rep(rep.n, list(wts), E, F, [f"v{k+1}" for k in range(d)], hw_index=0,
               ambient=amb, embedding=cols_out, tensor_power=amb.tensor_power, name=name)


def highest_weight_submodule(rep: Rep, lam, choice: int = 0) -> Rep:
    """Irreducible submodule generated by a singular vector of weight lam.

    When the singular space has dimension > 1, ``choice`` selects a basis
    vector of it (after normalization).  Raises ValueError if there is no
    singular vector of that weight.
    """
    sv = singular_vectors(rep, lam)
    if not sv:
        raise ValueError(f"no singular vector of weight {Weight(lam).to_str()}")
    return generate_submodule(rep, sv[choice], lam)


def irreducible(n: int, lam) -> Rep:
    """V(lam) realized inside V(varpi_1)^{(x) m}, m = total box count of lam.

    The tensor power is the smallest one containing lam as a dominant weight
    of the form sum_k k * m_k (for type A, a Young diagram with m boxes).
    """
    lam = Weight(lam)
    if not lam.is_dominant():
        raise ValueError("highest weight must be dominant")
    m = sum((k + 1) * c for k, c in enumerate(lam))
    if m == 0:
        return trivial_rep(n)
    if m == 1:
        return fundamental_rep(n)
    return highest_weight_submodule(tensor_power(n, m), lam)


def lowest_index(rep: Rep) -> int:
    return rep.dim - 1


def full_matrix(rep: Rep, word):
    """Dense action matrix of a word of generators, e.g. [("F",1),("K",2)]."""
    M = rep.identity()
    for name, i in word:
        M = M @ rep.op(name, i)
    return M


def to_dense_cols(rep: Rep):
    return transpose([rep.ambient_vector(k) for k in range(rep.dim)])
