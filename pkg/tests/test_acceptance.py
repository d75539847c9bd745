"""Acceptance criteria, one test each, at the stated tolerances and time limits.

Every test prints a single ``ACCEPTANCE <k> PASS|FAIL`` line (visible with
``pytest -v``) before asserting.
"""
import time
from fractions import Fraction

import pytest

from qcrystal.fnalg.frt import FRTAlgebra
from qcrystal.linalg import det
from qcrystal.repth.crystal import standard_lattice
from qcrystal.repth.forms import orthogonal_decompose, restricted_form, tensor_power_form
from qcrystal.repth.module import highest_weight_submodule, tensor_power, verify_uq_relations
from qcrystal.suites import run_suite


@pytest.fixture
def report(capsys):
    def _report(k, title, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {k:2d} {'PASS' if ok else 'FAIL'} {title}" + (f" :: {detail}" if detail else ""))
        return ok
    return _report


def _summary(reports):
    bad = [r for r in reports if not r.passed]
    if bad:
        return "; ".join(r.to_text() for r in bad)
    return f"{len(reports)} checks pass"


def test_01_uq_relations(report):
    start = time.perf_counter()
    results = {(n, m): verify_uq_relations(tensor_power(n, m)) for n in (1, 2, 3) for m in (1, 2, 3)}
    elapsed = time.perf_counter() - start
    bad = {k: r.witness for k, r in results.items() if not r.ok}
    ok = not bad and elapsed < 30
    assert report(1, "U_t relations on V(varpi_1)^m, n<=3, m<=3", ok, f"{bad or 'all exact'}; {elapsed:.1f}s"), bad


def test_02_frt_oracle(report):
    start = time.perf_counter()
    reps = run_suite("frt-confluence", {"words": 200, "max_len": 6, "max_exp": 3})
    elapsed = time.perf_counter() - start
    words = sum(r.params["words"] for r in reps if r.check == "frt-confluence")
    ok = all(r.passed for r in reps) and words == 200 and elapsed < 60
    assert report(2, "FRT confluence and pairing oracle, 200 words", ok, f"{_summary(reps)}; {elapsed:.1f}s")


def test_03_quantum_determinant(report):
    reps = run_suite("qdet", {})
    ok = all(r.passed for r in reps) and {r.params["n"] for r in reps} == {1, 2}
    assert report(3, "D = 1 and D central before reduction, n in {1,2}", ok, _summary(reps))


def test_04_star_cofactor(report):
    reps = run_suite("star", {"q": "1/2"})
    ok = all(r.passed and r.max_error <= 1e-12 for r in reps) and len(reps) == 2
    worst = max(r.max_error for r in reps)
    assert report(4, "star involutive and adjoint-compatible at q=1/2, n<=2", ok, f"max deviation {worst:.1e}")


def test_05_dual_lattice(report):
    reps = run_suite("dual-lattice", {})
    ok = all(r.passed for r in reps) and len(reps) == 5
    assert report(5, "dual lattice: norms, span, weight refinement, strict inclusion", ok, _summary(reps))


def test_06_double_dual(report):
    reps = run_suite("double-dual", {})
    ok = all(r.passed for r in reps) and len(reps) == 5
    assert report(6, "double dual identity", ok, _summary(reps))


def test_07_orthogonal_decomposition(report):
    reps = run_suite("orthogonal-split", {})
    ok = all(r.passed for r in reps)
    # the other summands as W, with nondegeneracy on W and W-perp
    extra = []
    for n, lam in ((1, (0,)), (2, (0, 1))):
        V2 = tensor_power(n, 2)
        G = tensor_power_form(n, 2)
        W = highest_weight_submodule(V2, lam)
        dec = orthogonal_decompose(V2, G, W.embedding, standard_lattice(V2.dim))
        good = dec.splits and det(restricted_form(G, dec.W)) != 0 and det(restricted_form(G, dec.W_perp)) != 0
        extra.append(good)
    ok = ok and all(extra)
    assert report(7, "orthogonal lattice splitting of V(x)V, n in {1,2}", ok, f"{_summary(reps)}; extra summands {extra}")


def test_08_triangular_decomposition(report):
    start = time.perf_counter()
    reps = run_suite("triangular", {"order": "plus-minus"})
    elapsed = time.perf_counter() - start
    cases = {(r.params["n"], r.params["omega"]) for r in reps}
    ok = all(r.passed for r in reps) and cases == {(1, "1"), (1, "2"), (2, "1,0"), (2, "0,1")} and elapsed < 120
    assert report(8, "triangular decomposition over R+ R- with A0 coefficients", ok,
                  f"{_summary(reps)}; {elapsed:.1f}s")


def test_09_star_scaling(report):
    reps = run_suite("rstar", {})
    ok = all(r.passed for r in reps) and any(r.check == "generation" for r in reps)
    assert report(9, "star scaling, R-span exchange and generator-level inclusion", ok, _summary(reps))


def test_10_scaled_generation(report):
    reps = run_suite("scaled-generation", {"n": 2})
    ok = all(r.passed for r in reps)
    assert report(10, "scaled generation of all nine (u_rs)* for n=2", ok, _summary(reps))


def test_11_commuting_square(report):
    reps = run_suite("commuting-square", {"q": "1/2"})
    ok = all(r.passed for r in reps) and {r.params["n"] for r in reps} == {1, 2, 3}
    assert report(11, "theta_q o phi_F = phi_F o theta_q on generators, n<=3", ok, _summary(reps))


def test_12_pipelines_fixed_q(report):
    reps = run_suite("pipelines", {})
    combos = {(r.params["n"], r.params["q"], r.params["cutoff"], r.params["window"]) for r in reps}
    want = {(n, q, 16, 8) for n in (1, 2) for q in ("1/2", "1/10")}
    ok = all(r.passed and r.max_error <= 1e-12 for r in reps) and combos == want
    worst = max(r.max_error for r in reps)
    assert report(12, "per-leg = global pipeline at q in {1/2, 1/10}", ok, f"max deviation {worst:.1e}")


def test_13_crystallization(report):
    start = time.perf_counter()
    reps = run_suite("crystal-limit", {})
    elapsed = time.perf_counter() - start
    ok = (all(r.passed and r.max_error <= 1e-6 for r in reps) and {r.params["n"] for r in reps} == {1, 2}
          and elapsed < 120)
    assert report(13, "exact equality of the two q->0 limits, n<=2", ok, f"{_summary(reps)}; {elapsed:.1f}s")
