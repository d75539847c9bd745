"""Named verification suites; each returns a list of CheckReports."""
from __future__ import annotations

import random
from fractions import Fraction

from .cartan import Weight, fundamental_weight
from .fnalg.decompose import (CoeffTable, NoDecompositionError, certify_star_generators,
                              generation_witness, rstar_scaling_check, triangular_all)
from .fnalg.frt import FRTAlgebra
from .fnalg.pairing import evaluate_pairing, monomial_weight_shift, pair_monomial, pbw_words, word_weight
from .linalg import det
from .repth.crystal import standard_lattice
from .repth.forms import (check_double_dual, check_dual_lattice, dual_rep, orthogonal_decompose,
                          polarization, restricted_form, tensor_power_form)
from .repth.module import highest_weight_submodule, irreducible, tensor_power, verify_uq_relations
from .report import CheckReport, status_of
from .soibelman.pipelines import (Layout, commuting_square, compare_pipelines, pi0_global,
                                  pi0_per_leg, scaled_generator, star_compatibility)

DEFAULT_SEED = 42

# modules with one-dimensional weight spaces used by the dual-lattice checks
DUAL_CASES = [(1, (1,)), (2, (1, 0)), (3, (1, 0, 0)), (2, (0, 1)), (1, (2,))]


class UsageError(ValueError):
    """Unknown suite or invalid parameters."""


def _int(params, key, default):
    v = params.get(key, default)
    try:
        return int(v)
    except (TypeError, ValueError):
        raise UsageError(f"parameter {key} must be an integer, got {v!r}") from None


def _frac(params, key, default):
    v = params.get(key, default)
    try:
        return Fraction(str(v))
    except (TypeError, ValueError, ZeroDivisionError):
        raise UsageError(f"parameter {key} must be a rational number, got {v!r}") from None


def _weight(params, key, n, default=None):
    v = params.get(key, default)
    if v is None:
        return None
    if isinstance(v, (tuple, list, Weight)):
        w = Weight(v)
    else:
        try:
            w = Weight.parse(str(v))
        except ValueError as e:
            raise UsageError(str(e)) from None
    if len(w) != n:
        raise UsageError(f"weight {key}={v} has {len(w)} coordinates, expected {n}")
    return w


def _n_values(params, default):
    if "n" in params:
        n = _int(params, "n", None)
        if n < 1:
            raise UsageError("n must be at least 1")
        return [n]
    return list(default)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_uq_relations(params, seed):
    out = []
    powers = [_int(params, "power", None)] if "power" in params else [1, 2, 3]
    for n in _n_values(params, (1, 2, 3)):
        for m in powers:
            rep = tensor_power(n, m)
            r = verify_uq_relations(rep)
            out.append(CheckReport("uq-relations", {"n": n, "power": m}, status_of(r.ok),
                                   witness=r.witness or f"{r.checked} relations exact"))
    return out


def suite_frt_confluence(params, seed):
    """Random words: two reduction orders agree and match the pairing oracle."""
    count = _int(params, "words", 200)
    max_len = _int(params, "max_len", 6)
    max_exp = _int(params, "max_exp", 3)
    ns = _n_values(params, (1, 2))
    rng = random.Random(seed)
    out = []
    per_n = {n: 0 for n in ns}
    for k in range(count):
        per_n[ns[k % len(ns)]] += 1
    for n in ns:
        alg = FRTAlgebra(n)
        N = n + 1
        uwords = pbw_words(n, max_exp)
        by_weight = {}
        for w in uwords:
            by_weight.setdefault(word_weight(n, w), []).append(w)
        conf_fail, oracle_fail, compared = None, None, 0
        for _ in range(per_n[n]):
            length = rng.randint(1, max_len)
            word = [(rng.randint(1, N), rng.randint(1, N)) for _ in range(length)]
            nf = alg.normal_form(word)
            alt = alg.normal_form_random(word, rng)
            if nf != alt and conf_fail is None:
                conf_fail = f"word {word}: {nf} vs {alt}"
            shift = monomial_weight_shift(n, word)
            for uw in by_weight.get(shift, []):
                compared += 1
                if evaluate_pairing(nf, uw) != pair_monomial(alg, word, uw) and oracle_fail is None:
                    oracle_fail = f"word {word} against {uw}"
        p = {"n": n, "words": per_n[n], "max_len": max_len, "seed": seed}
        out.append(CheckReport("frt-confluence", p, status_of(conf_fail is None),
                               witness=conf_fail or "all reduction orders agree"))
        out.append(CheckReport("frt-oracle", dict(p, max_exp=max_exp), status_of(oracle_fail is None),
                               witness=oracle_fail or f"{compared} pairings agree"))
    return out


def suite_qdet(params, seed):
    out = []
    for n in _n_values(params, (1, 2)):
        alg = FRTAlgebra(n)
        D = alg.qdet()
        raw = alg.qdet_unreduced()
        ok = D == alg.unit()
        out.append(CheckReport("qdet", {"n": n}, status_of(ok), witness=f"{raw} = {D}"))
        free = FRTAlgebra(n, impose_det=False)
        Dfree = free.qdet()
        bad = [f"u{i}{j}" for i in range(1, n + 2) for j in range(1, n + 2)
               if Dfree * free.u(i, j) != free.u(i, j) * Dfree]
        out.append(CheckReport("qdet-central", {"n": n}, status_of(not bad),
                               witness=("fails for " + ", ".join(bad)) if bad else "D commutes with every generator"))
    return out


def suite_star(params, seed):
    q = _frac(params, "q", "1/2")
    out = []
    for n in _n_values(params, (1, 2)):
        res = star_compatibility(n, q)
        worst = max(res.deviations, key=res.deviations.get)
        out.append(CheckReport("star", {"n": n, "q": q}, status_of(res.ok), max_error=res.max_error,
                               witness=f"involutive={res.involutive}; worst entry {worst}"))
    return out


def _dual_cases(params):
    if "n" in params or "lam" in params:
        n = _int(params, "n", 1)
        lam = _weight(params, "lam", n, ",".join(["1"] + ["0"] * (n - 1)))
        return [(n, tuple(lam))]
    return DUAL_CASES


def suite_dual_lattice(params, seed):
    out = []
    for n, lam in _dual_cases(params):
        rep = irreducible(n, lam)
        data = dual_rep(rep, polarization(rep))
        r = check_dual_lattice(data)
        w = (f"norms={[str(x) for x in r.norms]}; strict witnesses w_{r.strict_witnesses}; "
             f"span={r.spans_lattice}; weight-refined={r.weight_refined}; change-of-basis={r.change_of_basis_ok}")
        out.append(CheckReport("dual-lattice", {"n": n, "lam": Weight(lam).to_str()}, status_of(r.ok), witness=w))
    return out


def suite_double_dual(params, seed):
    out = []
    for n, lam in _dual_cases(params):
        rep = irreducible(n, lam)
        data = dual_rep(rep, polarization(rep))
        ok, w = check_double_dual(data)
        out.append(CheckReport("double-dual", {"n": n, "lam": Weight(lam).to_str()}, status_of(ok),
                               witness=w or f"c={data.c}"))
    return out


def suite_orthogonal_split(params, seed):
    out = []
    for n in _n_values(params, (1, 2)):
        V2 = tensor_power(n, 2)
        G = tensor_power_form(n, 2)
        L = standard_lattice(V2.dim)
        # W = the submodule generated by the top vector, i.e. V(2 varpi_1)
        W = highest_weight_submodule(V2, 2 * fundamental_weight(n, 1))
        dec = orthogonal_decompose(V2, G, W.embedding, L)
        nondeg = det(restricted_form(G, W.embedding)) != 0 and det(restricted_form(G, dec.W_perp)) != 0
        ok = dec.splits and nondeg
        out.append(CheckReport("orthogonal-split", {"n": n}, status_of(ok),
                               witness=dec.witness or f"dim W={len(dec.W)}, dim W-perp={len(dec.W_perp)}, "
                                                      f"restricted det={dec.restricted_det}"))
    return out


def _triangular_cases(params):
    if "algebra" in params or "omega" in params or "n" in params:
        alg = str(params.get("algebra", ""))
        n = 1 if alg == "sl2" else _int(params, "n", 1)
        if alg and alg != f"sl{n + 1}":
            raise UsageError(f"algebra {alg} does not match n={n}")
        omega = _weight(params, "omega", n, ",".join(["1"] + ["0"] * (n - 1)))
        return [(n, tuple(omega))]
    return [(1, (1,)), (1, (2,)), (2, (1, 0)), (2, (0, 1))]


def suite_triangular(params, seed):
    order = str(params.get("order", "plus-minus"))
    if order not in ("plus-minus", "minus-plus"):
        raise UsageError("order must be plus-minus or minus-plus")
    out = []
    for n, omega in _triangular_cases(params):
        table = CoeffTable(FRTAlgebra(n))
        try:
            res = triangular_all(omega, table=table, order=order)
        except NoDecompositionError as e:
            out.append(CheckReport("triangular", {"n": n, "omega": Weight(omega).to_str(), "order": order},
                                   "fail", witness=str(e)))
            continue
        bad = [r for r in res if r.status != "pass"]
        ok = not bad
        w = (f"{len(res)} certificates; " + "; ".join(r.witness() for r in res)) if ok else \
            f"{len(bad)} of {len(res)} fail: " + "; ".join(f"[{r.status}] {r.witness()}" for r in bad)
        out.append(CheckReport("triangular", {"n": n, "omega": Weight(omega).to_str(), "order": order},
                               status_of(ok), witness=w))
    return out


def suite_rstar(params, seed):
    out = []
    for n, lam in _dual_cases(params):
        table = CoeffTable(FRTAlgebra(n))
        r = rstar_scaling_check(n, lam, table=table)
        signs = sorted({e["scalar"] for e in r.entries})
        out.append(CheckReport("rstar", {"n": n, "lam": Weight(lam).to_str()}, status_of(r.ok),
                               witness=r.witness or f"{len(r.entries)} entries, scalars {signs}; "
                                                    f"{len(r.span_checks)} span checks"))
    for n in sorted({n for n, _ in _dual_cases(params) if n <= 2}):
        table = CoeffTable(FRTAlgebra(n))
        gens = [generation_witness(fundamental_weight(n, 1), i, j, table)
                for i in range(1, n + 2) for j in range(1, n + 2)]
        bad = [g for g in gens if not g.ok]
        out.append(CheckReport("generation", {"n": n}, status_of(not bad),
                               witness=("; ".join(f"u{g.i}{g.j}: {g.text}" for g in bad)) if bad
                               else f"all {len(gens)} generators expressed over R+ and star(R+) with A0 coefficients"))
    return out


def suite_scaled_generation(params, seed):
    out = []
    for n in _n_values(params, (1, 2)):
        alg = FRTAlgebra(n)
        certs = certify_star_generators(alg)
        bad = [(rs, c) for rs, c in certs if not c.ok]
        low = min(min(a["exponent"] for a in c.audit) for _, c in certs)
        w = ("; ".join(f"(u{r}{s})*: min valuation {c.min_valuation}" for (r, s), c in bad) if bad else
             f"{len(certs)} certificates, minimum audited exponent {low}")
        out.append(CheckReport("scaled-generation", {"n": n}, status_of(not bad), witness=w))
    return out


def suite_commuting_square(params, seed):
    q = _frac(params, "q", "1/2")
    out = []
    for n in _n_values(params, (1, 2, 3)):
        r = commuting_square(n, q)
        out.append(CheckReport("commuting-square", {"n": n, "q": q}, status_of(r.ok),
                               witness=str(r.failures[0]) if r.failures else f"{r.checked} generator images agree"))
    return out


def _layout_params(params, n):
    cutoff = _int(params, "cutoff", 16 if n <= 2 else 6)
    window = _int(params, "window", 8 if n <= 2 else 3)
    return cutoff, window


def suite_pipelines(params, seed):
    qs = [_frac(params, "q", None)] if "q" in params else [Fraction(1, 2), Fraction(1, 10)]
    out = []
    for n in _n_values(params, (1, 2)):
        cutoff, window = _layout_params(params, n)
        for q in qs:
            c = compare_pipelines(n, q, cutoff, window, limits=False)
            worst = max(c.fixed_q, key=c.fixed_q.get)
            out.append(CheckReport("pipelines", {"n": n, "q": q, "cutoff": cutoff, "window": window},
                                   status_of(c.ok), max_error=c.max_error,
                                   witness=f"worst generator {worst}"))
    return out


def suite_crystal_limit(params, seed):
    scaled = bool(params.get("scaled", False))
    out = []
    for n in _n_values(params, (1, 2)):
        cutoff, window = _layout_params(params, n)
        layout = Layout.default(n, cutoff, window)
        alg = FRTAlgebra(n)
        mismatch, numeric_dev, fallbacks = [], 0.0, 0
        for i in range(1, n + 2):
            for j in range(1, n + 2):
                x = scaled_generator(alg, i, j) if scaled else alg.u(i, j)
                g = pi0_global(x, layout)
                fallbacks += g.numeric_entries
                if not scaled:
                    m = pi0_per_leg(x, layout)
                    fallbacks += m.numeric_entries
                    if not m.blocks.equals(g.blocks):
                        mismatch.append(f"u{i}{j}")
                num = pi0_global(x, layout, mode="numeric")
                numeric_dev = max(numeric_dev, num.blocks.max_deviation(g.blocks))
        ok = not mismatch and fallbacks == 0 and numeric_dev <= 1e-6
        w = (f"mismatch at {mismatch}" if mismatch else
             f"exact agreement on interiors; numeric cross-check {numeric_dev:.1e}")
        out.append(CheckReport("crystal-limit", {"n": n, "cutoff": cutoff, "window": window, "scaled": scaled},
                               status_of(ok), max_error=numeric_dev, witness=w))
    return out


SUITES = {
    "uq-relations": suite_uq_relations,
    "frt-confluence": suite_frt_confluence,
    "qdet": suite_qdet,
    "star": suite_star,
    "dual-lattice": suite_dual_lattice,
    "double-dual": suite_double_dual,
    "orthogonal-split": suite_orthogonal_split,
    "triangular": suite_triangular,
    "rstar": suite_rstar,
    "scaled-generation": suite_scaled_generation,
    "commuting-square": suite_commuting_square,
    "pipelines": suite_pipelines,
    "crystal-limit": suite_crystal_limit,
}


def run_suite(name: str, params: dict = None, seed: int = DEFAULT_SEED):
    """Run one named suite (or ``all``, which uses every suite's defaults)."""
    params = dict(params or {})
    if name == "all":
        if params:
            raise UsageError("the all suite takes no parameters")
        out = []
        for key in SUITES:
            out.extend(SUITES[key]({}, seed))
        return out
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    return SUITES[name](params, seed)


def suite_names():
    return list(SUITES) + ["all"]
