import random

import pytest

from qcrystal.fnalg.coeffs import coproduct_paths, matrix_coeff
from qcrystal.fnalg.frt import FRTAlgebra
from qcrystal.fnalg.pairing import (coproduct_word, counit_word, evaluate_pairing, monomial_weight_shift,
                                    pbw_words, word_weight)
from qcrystal.linalg import matvec
from qcrystal.ratfield import T
from qcrystal.repth.forms import polarization
from qcrystal.repth.module import fundamental_rep, highest_weight_submodule, tensor_power


def test_pairing_examples():
    a = FRTAlgebra(1)
    assert evaluate_pairing(a.u(1, 1), [("K", 1)]) == T
    assert evaluate_pairing(a.u(1, 2), []) == 0
    assert evaluate_pairing(a.u(1, 2), [("E", 1)]) == 1


def test_qdet_pairs_as_counit():
    a = FRTAlgebra(1, impose_det=False)
    D = a.qdet()
    rng = random.Random(7)
    gens = [("E", 1), ("F", 1), ("K", 1), ("Kinv", 1)]
    for _ in range(50):
        w = [rng.choice(gens) for _ in range(rng.randint(0, 4))]
        assert evaluate_pairing(D, w) == counit_word(a, w)


def test_pairing_respects_the_coproduct():
    # <xy, a> = <x, a1><y, a2>
    a = FRTAlgebra(2)
    x, y = a.u(1, 2), a.u(2, 3) + a.u(3, 3)
    for w in ([("E", 1), ("E", 2)], [("F", 2), ("K", 1), ("E", 1)], [("E", 2), ("E", 1)]):
        lhs = evaluate_pairing(x * y, w)
        rhs = sum((evaluate_pairing(x, w1) * evaluate_pairing(y, w2) for w1, w2 in coproduct_word(w)), 0)
        assert lhs == rhs


def test_weight_bookkeeping():
    assert monomial_weight_shift(2, [(1, 2)]) == word_weight(2, [("E", 1)])
    assert len(pbw_words(1, 1)) == 8


def test_matrix_coeff_examples():
    a = FRTAlgebra(1)
    V = fundamental_rep(1)
    for i in (1, 2):
        for j in (1, 2):
            assert matrix_coeff(V, i, j, a) == a.u(i, j)
    R = highest_weight_submodule(tensor_power(1, 2), (2,))
    assert matrix_coeff(R, 1, 1, a) == a.u(1, 1) ** 2
    with pytest.raises(IndexError):
        matrix_coeff(R, 4, 1, a)


def test_matrix_coeff_against_module_action():
    a = FRTAlgebra(1)
    R = highest_weight_submodule(tensor_power(1, 2), (2,))
    G = polarization(R)
    C21 = matrix_coeff(R, 2, 1, a)
    direct = sum((x * y for x, y in zip(matvec(G, R.basis_vector(1)), R.F[0] @ R.basis_vector(0)) if x and y), 0)
    assert evaluate_pairing(C21, [("F", 1)]) == direct


def test_coproduct_paths():
    assert list(coproduct_paths(2, 1, 1, 2)) == [[(1, 1), (1, 1)], [(1, 2), (2, 1)]]
    assert len(list(coproduct_paths(3, 1, 1, 3))) == 9


def test_coassociativity_of_paths():
    # (Delta (x) id) Delta and (id (x) Delta) Delta give the same 3-leg paths
    N = 3
    paths3 = list(coproduct_paths(N, 1, 2, 3))
    via_left = sorted((p[0], p[1], p[2]) for p in paths3)
    via_right = sorted((q[0], r[0], r[1]) for q in coproduct_paths(N, 1, 2, 2)
                       for r in coproduct_paths(N, q[1][0], q[1][1], 2))
    via_left2 = sorted((r[0], r[1], q[1]) for q in coproduct_paths(N, 1, 2, 2)
                       for r in coproduct_paths(N, q[0][0], q[0][1], 2))
    assert via_left == via_right == via_left2
