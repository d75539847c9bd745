from fractions import Fraction

from hypothesis import given, strategies as st

from qcrystal.cartan import (Weight, act, cartan_matrix, fundamental_weight, is_longest_word,
                             longest_word, minus_w0, rho, simple_root, w0_action, weight_pairing)
from qcrystal.linalg import det


def test_cartan_matrix_examples():
    assert cartan_matrix(1).matrix == ((2,),)
    assert cartan_matrix(2).matrix == ((2, -1), (-1, 2))
    A = cartan_matrix(5)
    assert all(A.a(i, j) == A.a(j, i) for i in range(1, 6) for j in range(1, 6))


def test_pairing_examples():
    for n in (1, 2, 3):
        assert weight_pairing(simple_root(n, 1), simple_root(n, 1)) == 2
    assert weight_pairing(fundamental_weight(2, 1), simple_root(2, 2)) == 0
    assert weight_pairing(fundamental_weight(2, 1), simple_root(2, 1)) == 1
    assert weight_pairing(Weight((1,)), Weight((1,))) == Fraction(1, 2)


def test_rho():
    assert rho(2) == Weight((1, 1))
    assert all(weight_pairing(rho(3), simple_root(3, i)) == 1 for i in (1, 2, 3))
    assert weight_pairing(2 * rho(1), simple_root(1, 1)) == 2


def test_longest_word():
    assert longest_word(1) == [1]
    assert longest_word(2) == [1, 2, 1]
    assert len(longest_word(3)) == 6
    for n in range(1, 5):
        assert is_longest_word(longest_word(n), n)
    assert is_longest_word([2, 1, 2], 2)
    assert not is_longest_word([1, 1, 2], 2)


def test_minus_w0_examples():
    assert minus_w0(Weight((1, 0))) == Weight((0, 1))
    assert minus_w0(Weight((3,))) == Weight((3,))
    assert minus_w0(rho(3)) == rho(3)


def test_pairing_is_positive_definite():
    for n in range(1, 5):
        basis = [fundamental_weight(n, i) for i in range(1, n + 1)]
        gram = [[weight_pairing(a, b) for b in basis] for a in basis]
        for k in range(1, n + 1):
            assert det([row[:k] for row in gram[:k]]) > 0


weights3 = st.lists(st.integers(-3, 3), min_size=3, max_size=3).map(Weight)


@given(weights3, weights3)
def test_minus_w0_is_an_isometric_involution(mu, nu):
    assert minus_w0(minus_w0(mu)) == mu
    assert weight_pairing(minus_w0(mu), minus_w0(nu)) == weight_pairing(mu, nu)
    # oracle: -w0 through the reduced word
    assert minus_w0(mu) == -w0_action(mu)


@given(weights3, st.lists(st.integers(1, 3), max_size=5))
def test_weyl_action_preserves_pairing(mu, word):
    assert weight_pairing(act(word, mu), act(word, mu)) == weight_pairing(mu, mu)
