import pytest

from qcrystal.cartan import Weight, fundamental_weight
from qcrystal.fnalg.decompose import (CoeffTable, candidate_pairs, certify_star_generators, generation_witness,
                                      rstar_scaling_check, scaled_generation_certificate, star_cofactor_audit,
                                      triangular_all, triangular_decompose)
from qcrystal.fnalg.frt import FRTAlgebra
from qcrystal.ratfield import ONE, T


def test_triangular_fundamental_is_a_unit_vector():
    r = triangular_decompose((1,), 1, 1, lam=(1,), gam=(0,))
    assert r.status == "pass"
    assert r.coeffs == {(1, 1): ONE}


@pytest.mark.parametrize("omega", [(1, 0), (0, 1)])
def test_triangular_sl3_fundamentals(omega):
    res = triangular_all(omega)
    assert len(res) == 9
    assert all(r.status == "pass" and r.verified for r in res)


def test_triangular_sl3_second_fundamental_pair_found_by_search():
    r = triangular_decompose((0, 1), 1, 2)
    assert (r.lam, r.gam) == (Weight((1, 0)), Weight((0, 1)))


def test_triangular_sl2_adjoint_plus_minus_has_coefficients_outside_A0():
    # frozen: three entries of C^{2 varpi} need t^{-1} under the R+ R- product order
    res = triangular_all((2,))
    bad = sorted((r.i, r.j) for r in res if r.status != "pass")
    assert bad == [(1, 2), (2, 2), (3, 2)]
    r = next(r for r in res if (r.i, r.j) == (1, 2))
    assert min(c.valuation() for c in r.coeffs.values()) == -1


def test_triangular_sl2_adjoint_minus_plus_order():
    res = triangular_all((2,), order="minus-plus")
    assert all(r.status == "pass" for r in res)


def test_candidate_pairs_respect_difference():
    for lam, gam in candidate_pairs((1, -1), max_degree=4):
        assert lam - gam == Weight((1, -1))
        assert lam.is_dominant() and gam.is_dominant()


def test_scaled_generation_examples():
    a = FRTAlgebra(1)
    c = scaled_generation_certificate(a.u(1, 2))
    assert c.ok and list(c.terms.values()) == [T]
    c = scaled_generation_certificate(a.star(a.u(2, 1)))
    assert c.ok and list(c.terms.values()) == [-ONE]


def test_scaled_generation_sl3_star_generators():
    certs = certify_star_generators(FRTAlgebra(2))
    assert len(certs) == 9
    assert all(c.ok for _, c in certs)
    assert all(a["exponent"] >= 0 for _, c in certs for a in c.audit)


def test_cofactor_audit_term_count():
    assert len(star_cofactor_audit(2, 1, 3)) == 2
    assert len(star_cofactor_audit(3, 2, 2)) == 6


@pytest.mark.parametrize("n,lam", [(1, (1,)), (2, (1, 0)), (2, (0, 1)), (3, (1, 0, 0)), (1, (2,))])
def test_star_scaling(n, lam):
    r = rstar_scaling_check(n, lam)
    assert r.ok, r.witness
    assert all(e["exact"] and e["unit"] and e["one_plus_tA0"] for e in r.entries)
    assert all(s["ok"] for s in r.span_checks)


def test_star_scaling_exponents():
    r = rstar_scaling_check(2, (1, 0))
    e = {(x["r"], x["s"]): x for x in r.entries}
    assert e[(2, 1)]["exponent"] == -1
    assert all(e[(k, k)]["exponent"] == 0 and e[(k, k)]["scalar"] == "1" for k in (1, 2, 3))
    # the off-diagonal scalar carries the antipode sign
    assert e[(1, 2)]["scalar"] == "-1"


@pytest.mark.parametrize("n", [1, 2])
def test_generation_witness(n):
    table = CoeffTable(FRTAlgebra(n))
    for i in range(1, n + 2):
        for j in range(1, n + 2):
            assert generation_witness(fundamental_weight(n, 1), i, j, table).ok
