import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcrystal.fnalg.frt import FRTAlgebra
from qcrystal.ratfield import T
from qcrystal.soibelman.leading import CancellationError, DivergenceError, LeadingArray, LeadingOrder
from qcrystal.soibelman.pipelines import (Layout, Soibelman, chi_q, commuting_square, compare_pipelines,
                                          iterated_coproduct, pi0_global, pi0_per_leg, pi_q, project_interval,
                                          project_leg, scaled_generator, star_compatibility)
from qcrystal.soibelman.surd import Surd
from qcrystal.soibelman.truncop import MAX_ENTRIES, BlockOp, TruncOp, TruncSpace, make_mode

H8 = TruncSpace.half_line(8)
W4 = TruncSpace.window(4)
Q = Fraction(1, 2)


def _e(k, dim):
    v = np.zeros(dim)
    v[k] = 1.0
    return v


# -- rank-one legs ------------------------------------------------------------

def test_pi_examples():
    u21 = pi_q(2, 1, Q, H8).to_dense()
    for k in range(8):
        assert np.allclose(u21 @ _e(k, 8), 0.5 ** k * _e(k, 8))
    u11 = pi_q(1, 1, Q, H8).to_dense()
    assert not np.any(u11 @ _e(0, 8))
    assert np.allclose(u11 @ _e(3, 8), math.sqrt(1 - 0.5 ** 6) * _e(2, 8))


def test_pi_unitarity_on_interior():
    a, b = pi_q(1, 1, Q, H8).to_dense(), pi_q(1, 2, Q, H8).to_dense()
    lhs = a @ a.T + b @ b.T
    assert np.max(np.abs(lhs[:7, :7] - np.eye(7))) < 1e-12


def test_chi_examples():
    s11 = chi_q(1, 1, W4).to_dense()
    e0 = _e(4, 9)  # label 0 sits in the middle of the window
    assert np.allclose(s11 @ e0, _e(5, 9))
    assert not chi_q(1, 2, W4).terms and not chi_q(2, 1, W4).terms
    prod = chi_q(2, 2, W4).to_dense() @ s11
    assert np.allclose(prod[:8, :8], np.eye(8))


def test_space_validation():
    with pytest.raises(ValueError):
        TruncSpace.half_line(3)
    with pytest.raises(ValueError):
        TruncSpace.window(1)
    with pytest.raises(ValueError):
        pi_q(1, 1, Q, W4)
    assert W4.label(0) == -4 and W4.interior(1) == (1, 7)
    assert H8.interior(2) == (0, 5)


def test_dense_cap():
    legs = [TruncSpace.half_line(40)] * 3
    op = TruncOp.identity(legs, make_mode("float", Q))
    assert op.dim ** 2 > MAX_ENTRIES
    with pytest.raises(MemoryError):
        op.to_dense()


# -- coproduct and projections -------------------------------------------------

def test_iterated_coproduct():
    assert iterated_coproduct(1, 1, 2, 1) == [[(1, 1), (1, 1)], [(1, 2), (2, 1)]]
    assert len(iterated_coproduct(1, 1, 3, 2)) == 9
    with pytest.raises(ValueError):
        iterated_coproduct(1, 1, 0, 1)


def test_projections():
    assert project_leg(1, 3, 3) == ("scalar", 1)
    assert project_leg(1, 1, 2) == ("gen", (1, 2))
    assert project_leg(2, 1, 2) == ("scalar", 0)
    assert project_interval((1, 3), 3, 1) == ("gen", (2, 1))


# -- psi at fixed q ------------------------------------------------------------

def test_psi_u11_sl2_is_a_tensor_product():
    lay = Layout.default(1, 8, 4)
    op = Soibelman(lay, "float", Q).generator(1, 1).to_dense()
    expect = np.kron(pi_q(1, 1, Q, H8).to_dense(), chi_q(1, 1, W4).to_dense())
    assert np.allclose(op, expect)


@pytest.mark.parametrize("word", [[(1, 1), (2, 1)], [(2, 2), (1, 1)], [(1, 2), (2, 1), (1, 1)], [(2, 2), (1, 2)]])
def test_psi_respects_relations(word):
    lay = Layout.default(1, 10, 5)
    psi = Soibelman(lay, "float", Q)
    a = FRTAlgebra(1)
    raw = TruncOp.identity(lay.legs, psi.mode)
    for g in word:
        raw = raw @ psi.generator(*g)
    m = len(word)
    assert BlockOp.from_op(psi(a.normal_form(word)), m).max_deviation(BlockOp.from_op(raw, m)) < 1e-12


@pytest.mark.parametrize("n", [1, 2])
def test_psi_of_qdet_is_identity(n):
    lay = Layout.default(n, 8, 4)
    psi = Soibelman(lay, "float", Q)
    a = FRTAlgebra(n, impose_det=False)
    ident = TruncOp.identity(lay.legs, psi.mode)
    m = n + 1
    assert BlockOp.from_op(psi(a.qdet()), m).max_deviation(BlockOp.from_op(ident, m)) < 1e-12


def test_exact_and_float_modes_agree():
    lay = Layout.default(2, 6, 3)
    ex = BlockOp.from_op(Soibelman(lay, "exact", Fraction(1, 10)).generator(1, 2), 1, to_float=True)
    fl = BlockOp.from_op(Soibelman(lay, "float", Fraction(1, 10)).generator(1, 2), 1)
    assert ex.max_deviation(fl) < 1e-15


def test_q_validation():
    lay = Layout.default(1, 8, 4)
    with pytest.raises(ValueError):
        Soibelman(lay, "float", None)
    with pytest.raises(ValueError):
        Soibelman(lay, "float", Fraction(3, 2))
    with pytest.raises(ValueError):
        Layout.default(2, word=(1, 1, 2))


@pytest.mark.parametrize("n", [1, 2])
def test_star_compatibility(n):
    r = star_compatibility(n, Q, 10, 5)
    assert r.involutive and r.ok, r.deviations


def test_pipelines_sl2_exact():
    c = compare_pipelines(1, Q, 10, 5, mode="exact")
    assert c.ok and c.max_error == 0


def test_pipelines_sl3_small_cutoff():
    c = compare_pipelines(2, Fraction(1, 10), 12, 6, limits=False)
    assert c.ok and c.max_error <= 1e-12


def test_commuting_square_generators():
    for n in (1, 2):
        r = commuting_square(n, Q)
        assert r.ok and r.checked == len(_subsets(n + 1)) * (n + 1) ** 2


def _subsets(N):
    import itertools
    return [F for m in range(2, N + 1) for F in itertools.combinations(range(1, N + 1), m)]


def test_non_interval_projection_is_not_multiplicative():
    r = commuting_square(2, Q, subsets=[(1, 3)], degree=2)
    assert r.ok
    assert ((1, 3), ((2, 3), (1, 2))) in r.non_homomorphic
    assert not commuting_square(2, Q, subsets=[(1, 2), (2, 3)], degree=2).non_homomorphic


# -- leading order and limits --------------------------------------------------

def test_leading_order_arithmetic():
    a = LeadingOrder.of(3 * T ** 2 + T ** 3)
    b = LeadingOrder.of(-T)
    assert (a + b) == b
    assert (a * b) == LeadingOrder.term(-3, 3)
    assert LeadingOrder.of(1 / (1 - T)).limit() == 1
    with pytest.raises(CancellationError):
        LeadingOrder.term(1, 1) + LeadingOrder.term(-1, 1)
    with pytest.raises(DivergenceError):
        LeadingOrder.term(2, -1).limit()


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 4)), min_size=1, max_size=6))
def test_leading_array_matches_scalar_rule(terms):
    arr = LeadingArray.from_terms([LeadingOrder.term(c, e) for c, e in terms])
    for k, (c, e) in enumerate(terms):
        assert arr.entry(k) == LeadingOrder.term(c, e)
    sq = arr * arr
    for k, (c, e) in enumerate(terms):
        assert sq.entry(k) == LeadingOrder.term(c, e) * LeadingOrder.term(c, e)


def test_leading_array_cancellation_is_flagged():
    a = LeadingArray.from_terms([LeadingOrder.term(1, 1), LeadingOrder.term(2, 0)])
    b = LeadingArray.from_terms([LeadingOrder.term(-1, 1), LeadingOrder.term(1, 0)])
    s = a + b
    assert s.uncertain.tolist() == [True, False]
    assert s.uncertain_at_limit().tolist() == [False, False]


def test_pi0_sl2_examples():
    lay = Layout.default(1, 8, 4)
    a = FRTAlgebra(1)
    r11 = pi0_per_leg(a.u(1, 1), lay)
    assert r11.blocks.nonzero_offsets() == [(-1, 1)]
    assert all(v == 1 for _, v in r11.blocks.entries((-1, 1)))
    r21 = pi0_per_leg(a.u(2, 1), lay)
    assert r21.blocks.nonzero_offsets() == [(0, 1)]
    # P0 (x) S*: only the vacuum of the half-line survives
    assert {lab[0] for lab, _ in r21.blocks.entries((0, 1))} == {0}
    assert pi0_per_leg(a.u(1, 2), lay).blocks.nonzero_offsets() == []


def test_pi0_routes_agree_sl2():
    lay = Layout.default(1, 8, 4)
    a = FRTAlgebra(1)
    for i in (1, 2):
        for j in (1, 2):
            x = a.u(i, j)
            assert pi0_per_leg(x, lay).blocks.equals(pi0_global(x, lay).blocks)


def test_scaled_limit_is_nonzero():
    lay = Layout.default(1, 8, 4)
    x = scaled_generator(FRTAlgebra(1), 1, 2)
    r = pi0_global(x, lay)
    assert r.blocks.nonzero_offsets() == [(0, -1)]
    assert {v for _, v in r.blocks.entries((0, -1))} == {-1}


def test_numeric_limit_agrees_with_exact():
    lay = Layout.default(2, 8, 4)
    x = FRTAlgebra(2).u(1, 1)
    exact = pi0_global(x, lay)
    num = pi0_global(x, lay, mode="numeric", q_sequence=(Fraction(1, 1000), Fraction(1, 10000)))
    assert num.blocks.max_deviation(exact.blocks) < 1e-6


def test_per_leg_rejects_poles():
    lay = Layout.default(1, 8, 4)
    x = FRTAlgebra(1).u(1, 2).scale(T ** -2)
    with pytest.raises(DivergenceError):
        pi0_per_leg(x, lay)


# -- exact surds ---------------------------------------------------------------

def test_surd_arithmetic():
    r2 = Surd.sqrt(2)
    assert r2 * r2 == 2
    assert Surd.sqrt(8) == 2 * r2
    assert Surd.sqrt(Fraction(1, 4)) == Fraction(1, 2)
    assert abs(float(r2 + 1) - (math.sqrt(2) + 1)) < 1e-15
    assert (r2 - r2) == 0 and not (r2 - r2)
    with pytest.raises(ValueError):
        Surd.sqrt(-1)


def test_surd_handles_large_radicands():
    x = Surd.sqrt(1 - Fraction(1, 10) ** 32)
    assert abs(float(x) - 1) < 1e-15
    assert x * x == 1 - Fraction(1, 10) ** 32


@given(st.fractions(min_value=0, max_value=10, max_denominator=50),
       st.fractions(min_value=0, max_value=10, max_denominator=50))
def test_surd_products_square_correctly(a, b):
    p = Surd.sqrt(a) * Surd.sqrt(b)
    assert p * p == a * b
