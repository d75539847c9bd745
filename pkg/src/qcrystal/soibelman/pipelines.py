"""The Soibelman representation and the two crystal-limit pipelines.

Legs: one half-line leg per letter of a reduced word of w0 (acting through
pi_q o phi_{i_a}), followed by n window legs (chi_q o phi_b).  The
generator u_ij maps to the sum over coproduct paths of the tensor products
of the leg images.

Two routes to the q -> 0 limit are implemented:

* the global route (``psi_q``): specialize t -> q on the whole element,
  then apply the representation, which is an algebra map, generator by
  generator;
* the per-leg route (``per_leg_operator``): expand the iterated coproduct of each
  monomial, project every leg to the rank-one algebra O_t(SL(2)), rewrite it
  there into normal form, and only then specialize each leg, writing u12 as
  -t (u21)* so that each leg is a polynomial in u11, u21 and their adjoints
  with coefficients that must be regular at 0.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..cartan import is_longest_word, longest_word
from ..fnalg.frt import FnAlgElem, FRTAlgebra
from ..ratfield import PoleError, RatFunc
from .leading import CancellationError, DivergenceError, LeadingOrder
from .truncop import BlockOp, TruncOp, TruncSpace, make_mode

DEFAULT_CUTOFF = 16
DEFAULT_WINDOW = 8
DEFAULT_Q_SEQUENCE = (Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10000))


# ---------------------------------------------------------------------------
# layout of the representation space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Layout:
    """Leg structure of the Soibelman representation for sl_{n+1}."""

    n: int
    word: tuple
    cutoff: int = DEFAULT_CUTOFF
    window: int = DEFAULT_WINDOW

    @classmethod
    def default(cls, n: int, cutoff: int = DEFAULT_CUTOFF, window: int = DEFAULT_WINDOW, word=None) -> "Layout":
        w = tuple(word) if word is not None else tuple(longest_word(n))
        if word is not None and not is_longest_word(w, n):
            raise ValueError(f"{w} is not a reduced expression of the longest element for rank {n}")
        return cls(n, w, cutoff, window)

    @property
    def legs(self):
        return tuple([TruncSpace.half_line(self.cutoff)] * len(self.word)
                     + [TruncSpace.window(self.window)] * self.n)

    @property
    def leg_index(self):
        """(kind, i) per leg: the simple root used by the projection phi_i."""
        return tuple([("half", i) for i in self.word] + [("window", b) for b in range(1, self.n + 1)])

    @property
    def n_legs(self) -> int:
        return len(self.word) + self.n


# ---------------------------------------------------------------------------
# rank-one building blocks
# ---------------------------------------------------------------------------

def _rank_one_shifts(mode, space: TruncSpace, r: int, s: int):
    """pi_q(u_rs) on a half-line leg or chi_q(u_rs) on a window leg, as (d, w) pairs."""
    n = space.dim
    ks = np.arange(n)
    if space.kind == "half":
        if (r, s) == (1, 1):
            # S sqrt(1 - q^{2N}): e_k -> sqrt(1 - q^{2k}) e_{k-1}
            return [(-1, mode.sqrt_one_minus(2 * ks))]
        if (r, s) == (2, 2):
            # sqrt(1 - q^{2N}) S*: e_k -> sqrt(1 - q^{2k+2}) e_{k+1}
            w = mode.sqrt_one_minus(2 * ks + 2)
            return [(1, mode.mask(w, ks + 1 < n))]
        if (r, s) == (1, 2):
            return [(0, mode.qpow(ks + 1, -1))]
        if (r, s) == (2, 1):
            return [(0, mode.qpow(ks, 1))]
    else:
        if (r, s) == (1, 1):
            # S*: e_j -> e_{j+1}
            return [(1, mode.mask(mode.ones(n), ks + 1 < n))]
        if (r, s) == (2, 2):
            # S: e_j -> e_{j-1}
            return [(-1, mode.mask(mode.ones(n), ks >= 1))]
        if (r, s) in ((1, 2), (2, 1)):
            return []
    raise IndexError(f"rank-one generator u({r},{s}) out of range")


def _leg_op(mode, space: TruncSpace, r: int, s: int) -> TruncOp:
    return TruncOp.from_leg_sums([space], mode, [_rank_one_shifts(mode, space, r, s)])


def pi_q(i: int, j: int, q=None, space: TruncSpace = None, mode: str = "float") -> TruncOp:
    """pi_q(u_ij) of O_q(SU(2)) on the truncated half-line."""
    space = space or TruncSpace.half_line(DEFAULT_CUTOFF)
    if space.kind != "half":
        raise ValueError("pi_q acts on a half-line space")
    return _leg_op(make_mode(mode, q), space, i, j)


def chi_q(i: int, j: int, space: TruncSpace = None, mode: str = "float", q=None) -> TruncOp:
    """chi_q(u_ij) on the truncated integer window; independent of q."""
    space = space or TruncSpace.window(DEFAULT_WINDOW)
    if space.kind != "window":
        raise ValueError("chi_q acts on a window space")
    return _leg_op(make_mode(mode, q if q is not None else 0.5), space, i, j)


# ---------------------------------------------------------------------------
# coproduct and projections
# ---------------------------------------------------------------------------

def iterated_coproduct(i: int, j: int, legs: int, n: int):
    """Paths of Delta^{(legs-1)}(u_ij): lists [(i,k1), (k1,k2), ..., (k_{legs-1}, j)]."""
    if legs < 1:
        raise ValueError("at least one leg is required")
    N = n + 1
    out = []
    for mid in itertools.product(range(1, N + 1), repeat=legs - 1):
        path = (i,) + mid + (j,)
        out.append([(path[a], path[a + 1]) for a in range(legs)])
    return out


def project_leg(i: int, a: int, b: int):
    """phi_i(u_ab): ("gen", (r, s)) in the rank-one algebra, or ("scalar", 0 or 1)."""
    if a in (i, i + 1) and b in (i, i + 1):
        return ("gen", (a - i + 1, b - i + 1))
    return ("scalar", 1 if a == b else 0)


def project_interval(F, a: int, b: int):
    """phi_F(u_ab) for an increasing tuple F of indices."""
    F = tuple(F)
    if a in F and b in F:
        return ("gen", (F.index(a) + 1, F.index(b) + 1))
    return ("scalar", 1 if a == b else 0)


# ---------------------------------------------------------------------------
# specialization maps on the algebra
# ---------------------------------------------------------------------------

def theta_q(x: FnAlgElem, q) -> FnAlgElem:
    """Specialize t -> q coefficientwise; raises PoleError at a pole."""
    target = x.alg.specialize(q)
    return x.map_coefficients(target, lambda c: RatFunc.coerce(c).eval_at(q))


def phi_F(x: FnAlgElem, F, target: FRTAlgebra = None) -> FnAlgElem:
    """Apply the generator map phi_F to each normal-ordered monomial of x."""
    F = tuple(F)
    alg = x.alg
    if target is None:
        target = FRTAlgebra(len(F) - 1, q=alg.q, impose_det=alg.impose_det)
    out = target.zero()
    for mono, c in x.terms.items():
        img = target.scalar(c)
        for g in mono:
            kind, v = project_interval(F, *alg.ij(g))
            if kind == "scalar":
                if v == 0:
                    img = target.zero()
                    break
                continue
            img = img * target.u(*v)
        out = out + img
    return out


@dataclass
class SquareReport:
    ok: bool
    checked: int
    failures: list = field(default_factory=list)
    non_homomorphic: list = field(default_factory=list)


def commuting_square(n: int, q=Fraction(1, 2), subsets=None, degree: int = 1) -> SquareReport:
    """theta o phi_F == phi_F o theta on every monomial of the given degree.

    ``subsets`` defaults to all F of size 2..n+1.  Degree 1 covers the
    generators; for higher degrees the map phi_F is also checked to be
    multiplicative (it is for intervals F, but not for every subset).
    """
    alg = FRTAlgebra(n)
    N = n + 1
    if subsets is None:
        subsets = [F for m in range(2, N + 1) for F in itertools.combinations(range(1, N + 1), m)]
    gens = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    failures, nonhom = [], []
    checked = 0
    for F in subsets:
        tgt = FRTAlgebra(len(F) - 1)
        tgtq = tgt.specialize(q)
        for word in itertools.product(gens, repeat=degree):
            x = alg.unit()
            for g in word:
                x = x * alg.u(*g)
            lhs = theta_q(phi_F(x, F, tgt), q)
            rhs = phi_F(theta_q(x, q), F, tgtq)
            checked += 1
            if lhs != rhs:
                failures.append((F, word, str(lhs), str(rhs)))
            if degree > 1:
                prod = tgt.unit()
                for g in word:
                    prod = prod * phi_F(alg.u(*g), F, tgt)
                if prod != phi_F(x, F, tgt):
                    nonhom.append((F, word))
    return SquareReport(not failures, checked, failures, nonhom)


# ---------------------------------------------------------------------------
# the global route: psi^{(q)} o theta_q
# ---------------------------------------------------------------------------

class Soibelman:
    """psi^{(q)} on a fixed layout and entry mode, with cached generator images."""

    def __init__(self, layout: Layout, mode: str = "float", q=None):
        if mode != "leading" and q is None:
            raise ValueError("a numeric q is required outside leading mode")
        if q is not None and not (0 < Fraction(q) < 1):
            raise ValueError("q must lie in (0, 1)")
        self.layout = layout
        self.mode_name = mode
        self.q = q
        self.mode = make_mode(mode, q)
        self.legs = layout.legs
        self._gen: dict = {}
        self._shifts: dict = {}

    def _shifts_for(self, leg: int, r: int, s: int):
        key = (self.legs[leg], r, s)
        if key not in self._shifts:
            self._shifts[key] = _rank_one_shifts(self.mode, self.legs[leg], r, s)
        return self._shifts[key]

    def _ident(self, leg: int):
        key = (self.legs[leg], "id")
        if key not in self._shifts:
            self._shifts[key] = [(0, self.mode.ones(self.legs[leg].dim))]
        return self._shifts[key]

    def generator(self, i: int, j: int) -> TruncOp:
        """psi(u_ij) = sum over coproduct paths of the tensor product of leg images."""
        if (i, j) in self._gen:
            return self._gen[(i, j)]
        lay = self.layout
        out = TruncOp.zero(self.legs, self.mode)
        for path in iterated_coproduct(i, j, lay.n_legs, lay.n):
            sums = []
            for leg, ((_, idx), (a, b)) in enumerate(zip(lay.leg_index, path)):
                kind, v = project_leg(idx, a, b)
                if kind == "scalar":
                    sums.append(self._ident(leg) if v else [])
                else:
                    sums.append(self._shifts_for(leg, *v))
                if not sums[-1]:
                    break
            else:
                out = out + TruncOp.from_leg_sums(self.legs, self.mode, sums)
        self._gen[(i, j)] = out
        return out

    def scalar(self, c):
        try:
            return self.mode.scalar(c)
        except PoleError as e:
            raise PoleError(f"coefficient {c} cannot be specialized: {e}") from None

    def __call__(self, x: FnAlgElem) -> TruncOp:
        """psi(theta_q(x)): coefficients specialized, generators multiplied as operators."""
        if x.alg.n != self.layout.n:
            raise ValueError("element and representation have different ranks")
        out = TruncOp.zero(self.legs, self.mode)
        for mono, c in x.sorted_terms():
            op = TruncOp.identity(self.legs, self.mode)
            for g in mono:
                op = op @ self.generator(*x.alg.ij(g))
            out = out + op.scale(self.scalar(c))
        return out


def psi_q(x: FnAlgElem, q=None, layout: Layout = None, mode: str = "float") -> TruncOp:
    layout = layout or Layout.default(x.alg.n)
    return Soibelman(layout, mode, q)(x)


# ---------------------------------------------------------------------------
# the per-leg route
# ---------------------------------------------------------------------------

class PerLeg:
    """Per-leg projection, rank-one rewriting and specialization.

    Coefficients handed to the specialization must be regular at t = 0
    (in A0); a coefficient with a pole at 0 raises DivergenceError in
    leading mode and is reported as a non-A0 input.
    """

    def __init__(self, layout: Layout, mode: str = "float", q=None):
        self.psi = Soibelman(layout, mode, q)
        self.layout = layout
        self.mode = self.psi.mode
        self.legs = layout.legs
        self.rank_one = FRTAlgebra(1)
        self._leg_cache: dict = {}
        self._nf_cache: dict = {}

    def _check_a0(self, c):
        rc = RatFunc.coerce(c)
        if not rc.is_zero() and rc.valuation() < 0:
            raise DivergenceError(f"coefficient {rc} has a pole at t = 0 (negative leading exponent)")

    def _leg_normal_form(self, idx: int, gens) -> FnAlgElem:
        """Normal form in O_t(SL(2)) of phi_idx applied to a product of generators."""
        key = (idx, tuple(gens))
        if key in self._nf_cache:
            return self._nf_cache[key]
        word = []
        res = None
        for a, b in gens:
            kind, v = project_leg(idx, a, b)
            if kind == "scalar":
                if v == 0:
                    res = self.rank_one.zero()
                    break
                continue
            word.append(v)
        if res is None:
            res = self.rank_one.normal_form(word) if word else self.rank_one.unit()
        self._nf_cache[key] = res
        return res

    def _vartheta_leg(self, leg: int, y: FnAlgElem) -> TruncOp:
        """Image of a rank-one element written over u11, u21, u11* = u22, u21* = -t^{-1} u12."""
        key = (self.legs[leg], tuple(y.sorted_terms()))
        if key in self._leg_cache:
            return self._leg_cache[key]
        space = (self.legs[leg],)
        alg = self.rank_one
        u12 = alg.gen(1, 2)
        out = TruncOp.zero(space, self.mode)
        for mono, c in y.sorted_terms():
            k = sum(1 for g in mono if g == u12)
            # u12 = -t (u21)*, and pi(u21)* = pi(u21), chi(u21)* = chi(u21) = 0
            coeff = RatFunc.coerce(c) * RatFunc.t_pow(k, (-1) ** k)
            self._check_a0(coeff)
            op = TruncOp.identity(space, self.mode)
            for g in mono:
                r, s = alg.ij(g)
                if (r, s) == (1, 2):
                    r, s = 2, 1  # adjoint of the self-adjoint image of u21
                op = op @ TruncOp.from_leg_sums(space, self.mode,
                                                [self.psi._shifts_for(leg, r, s)])
            out = out + op.scale(self.psi.scalar(coeff))
        self._leg_cache[key] = out
        return out

    def __call__(self, x: FnAlgElem) -> TruncOp:
        lay = self.layout
        alg = x.alg
        if alg.n != lay.n:
            raise ValueError("element and representation have different ranks")
        out = TruncOp.zero(self.legs, self.mode)
        for mono, c in x.sorted_terms():
            self._check_a0(c)
            coeff = self.psi.scalar(c)
            per_gen = [iterated_coproduct(*alg.ij(g), lay.n_legs, lay.n) for g in mono]
            for choice in itertools.product(*per_gen):
                leg_sums = []
                for leg, (_, idx) in enumerate(lay.leg_index):
                    gens = [path[leg] for path in choice]
                    y = self._leg_normal_form(idx, gens)
                    if y.is_zero():
                        leg_sums = None
                        break
                    lop = self._vartheta_leg(leg, y)
                    pairs = [(d[0], ws[0]) for d, tl in lop.terms.items() for ws in tl]
                    if not pairs:
                        leg_sums = None
                        break
                    leg_sums.append(pairs)
                if leg_sums is None:
                    continue
                out = out + TruncOp.from_leg_sums(self.legs, self.mode, leg_sums, coeff)
        return out


def per_leg_operator(x: FnAlgElem, q=None, layout: Layout = None, mode: str = "float") -> TruncOp:
    layout = layout or Layout.default(x.alg.n)
    return PerLeg(layout, mode, q)(x)


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

@dataclass
class LimitResult:
    """Interior blocks of a q -> 0 limit, with the entries resolved numerically."""

    blocks: BlockOp
    numeric_entries: int = 0
    method: str = "leading"


def _default_margin(x: FnAlgElem) -> int:
    return max(1, x.degree())


def _leading_limit(op: TruncOp, margin: int, numeric_fallback):
    """Exact limit of a leading-order operator; cancelled entries use the fallback."""
    blocks = {}
    pending = []
    for d in op.offsets():
        b = op.block(d, margin)
        if b is None:
            continue
        unc = b.uncertain_at_limit()
        if unc.any():
            pending.append((d, unc))
            b = b.copy()
            b.uncertain[...] = False
            b.num[unc] = 0
        blocks[d] = b.limit()
    count = 0
    if pending:
        est = numeric_fallback()
        for d, unc in pending:
            fb = est.blocks.get(d)
            for idx in zip(*np.nonzero(unc)):
                v = 0.0 if fb is None else float(fb[idx])
                blocks[d][idx] = v
                count += 1
    return BlockOp(op.legs, margin, blocks), count


def _numeric_limit(make_op, margin: int, qs) -> BlockOp:
    """Entrywise extrapolation to q = 0 from operators at the given q values.

    Uses the Neville polynomial through the sample points and requires the
    differences between successive samples to shrink.
    """
    samples = [BlockOp.from_op(make_op(q), margin, to_float=True) for q in qs]
    legs = samples[0].legs
    offsets = sorted(set().union(*[s.blocks for s in samples]))
    xs = [float(q) for q in qs]
    out = {}
    for d in offsets:
        ref = next(s.blocks[d] for s in samples if d in s.blocks)
        vals = [s.blocks.get(d, np.zeros_like(ref)) for s in samples]
        if len(vals) >= 3:
            for a in range(len(vals) - 2):
                d1 = np.abs(vals[a + 1] - vals[a])
                d2 = np.abs(vals[a + 2] - vals[a + 1])
                if np.any(d2 > d1 + 1e-12):
                    raise ArithmeticError(f"non-convergent entry at offset {d}")
        out[d] = _neville_at_zero(xs, vals)
    return BlockOp(legs, margin, out)


def _neville_at_zero(xs, ys):
    p = [np.array(y, dtype=float) for y in ys]
    m = len(xs)
    for k in range(1, m):
        for a in range(m - k):
            b = a + k
            p[a] = (0.0 - xs[b]) * p[a] / (xs[a] - xs[b]) + (xs[a] - 0.0) * p[a + 1] / (xs[a] - xs[b])
    return p[0]


def pi0_per_leg(x: FnAlgElem, layout: Layout = None, margin: int = None) -> LimitResult:
    """q -> 0 limit of the per-leg pipeline, exact in leading-order arithmetic."""
    layout = layout or Layout.default(x.alg.n)
    margin = margin if margin is not None else _default_margin(x)
    op = PerLeg(layout, "leading")(x)
    fallback = functools.partial(_numeric_limit, lambda q: PerLeg(layout, "float", q)(x), margin,
                                 (Fraction(1, 1000), Fraction(1, 10000)))
    blocks, count = _leading_limit(op, margin, fallback)
    return LimitResult(blocks, count, "leading")


def pi0_global(x: FnAlgElem, layout: Layout = None, margin: int = None, mode: str = "leading",
           q_sequence=DEFAULT_Q_SEQUENCE) -> LimitResult:
    """q -> 0 limit of psi^{(q)} o theta_q(x).

    ``mode="leading"`` computes it exactly; ``mode="numeric"`` extrapolates
    from ``q_sequence``.  Scaled generators with Laurent coefficients such as
    t^{-1} u_12 are accepted.
    """
    layout = layout or Layout.default(x.alg.n)
    margin = margin if margin is not None else _default_margin(x)
    numeric = functools.partial(_numeric_limit, lambda q: Soibelman(layout, "float", q)(x), margin)
    if mode == "numeric":
        return LimitResult(numeric(tuple(q_sequence)), 0, "numeric")
    if mode != "leading":
        raise ValueError(f"unknown limit mode {mode!r}")
    op = Soibelman(layout, "leading")(x)
    blocks, count = _leading_limit(op, margin, lambda: numeric((Fraction(1, 1000), Fraction(1, 10000))))
    return LimitResult(blocks, count, "leading")


def scaled_generator(alg: FRTAlgebra, i: int, j: int) -> FnAlgElem:
    """t^{min(i-j, 0)} u_ij."""
    e = min(i - j, 0)
    return alg.u(i, j).scale(RatFunc.t_pow(e))


# ---------------------------------------------------------------------------
# comparisons
# ---------------------------------------------------------------------------

@dataclass
class PipelineComparison:
    n: int
    q: object
    cutoff: int
    window: int
    fixed_q: dict
    limits: dict
    ok: bool
    max_error: float
    tolerance: float = 1e-12

    def failures(self):
        out = [f"fixed-q {k}: {v}" for k, v in self.fixed_q.items() if v > self.tolerance]
        out += [f"limit {k}" for k, v in self.limits.items() if not v]
        return out


def compare_pipelines(n: int, q=Fraction(1, 2), cutoff: int = DEFAULT_CUTOFF, window: int = DEFAULT_WINDOW,
                      mode: str = "float", elements=None, tolerance: float = 1e-12,
                      limits: bool = True) -> PipelineComparison:
    """Per-leg route versus global route for every generator (and optional extra elements).

    At the fixed q both routes are evaluated on interior blocks; in
    leading-order mode their q -> 0 limits must agree exactly.
    """
    layout = Layout.default(n, cutoff, window)
    alg = FRTAlgebra(n)
    xs = {f"u{i}{j}": alg.u(i, j) for i in range(1, n + 2) for j in range(1, n + 2)}
    if elements:
        xs.update(elements)
    glob = Soibelman(layout, mode, q)
    per = PerLeg(layout, mode, q)
    fixed, lim = {}, {}
    worst = 0.0
    for name, x in xs.items():
        m = _default_margin(x)
        a = BlockOp.from_op(glob(x), m)
        b = BlockOp.from_op(per(x), m)
        if mode == "exact":
            dev = 0.0 if a.equals(b) else a.max_deviation(b)
        else:
            dev = a.max_deviation(b)
        fixed[name] = dev
        worst = max(worst, dev)
    if limits:
        for name, x in xs.items():
            try:
                lm = pi0_per_leg(x, layout)
                lg = pi0_global(x, layout)
                lim[name] = lm.blocks.equals(lg.blocks) and lm.numeric_entries == 0 and lg.numeric_entries == 0
            except (DivergenceError, CancellationError):
                lim[name] = False
    ok = all(v <= tolerance for v in fixed.values()) and all(lim.values())
    return PipelineComparison(n, q, cutoff, window, fixed, lim, ok, worst, tolerance)


@dataclass
class StarCheck:
    ok: bool
    deviations: dict
    max_error: float
    involutive: bool


def star_compatibility(n: int, q=Fraction(1, 2), cutoff: int = None, window: int = None,
                       tolerance: float = 1e-12) -> StarCheck:
    """psi(star(u_rs)) against the transpose of psi(u_rs) on interior blocks."""
    cutoff = cutoff or (DEFAULT_CUTOFF if n <= 2 else 8)
    window = window or (DEFAULT_WINDOW if n <= 2 else 4)
    layout = Layout.default(n, cutoff, window)
    alg = FRTAlgebra(n)
    psi = Soibelman(layout, "float", q)
    devs = {}
    invol = True
    for r in range(1, n + 2):
        for s in range(1, n + 2):
            x = alg.u(r, s)
            xs = alg.star(x)
            invol = invol and alg.star(xs) == x
            m = max(1, xs.degree())
            lhs = BlockOp.from_op(psi(xs), m)
            rhs = BlockOp.from_op(psi(x).adjoint(), m)
            devs[f"u{r}{s}"] = lhs.max_deviation(rhs)
    worst = max(devs.values())
    return StarCheck(worst <= tolerance and invol, devs, worst, invol)


def leading_of(x) -> LeadingOrder:
    return LeadingOrder.of(x)
