import pytest

from qcrystal.linalg import a0_basis
from qcrystal.ratfield import T
from qcrystal.repth.crystal import (congruent_mod_tL, crystal_lattice, is_crystal_closed, kashiwara_ops,
                                    standard_lattice)
from qcrystal.repth.module import fundamental_rep, highest_weight_submodule, singular_vectors, tensor_power


def test_fundamental_operators():
    V = fundamental_rep(1)
    ops = kashiwara_ops(V)
    assert ops.F(1, V.basis_vector(0)) == V.basis_vector(1)
    assert not any(ops.E(1, V.basis_vector(0)))


def test_tensor_square_F_tilde_on_top_vector():
    V = tensor_power(1, 2)
    ops = kashiwara_ops(V)
    L = standard_lattice(V.dim)
    img = ops.F(1, V.basis_vector(0))
    # frozen: t e1(x)e2 + e2(x)e1, i.e. e2 (x) e1 modulo tL under this coproduct
    assert img == [0, T, 1, 0]
    assert congruent_mod_tL(L, img, V.basis_vector(2))
    assert not congruent_mod_tL(L, img, V.basis_vector(1))


@pytest.mark.parametrize("rep", [fundamental_rep(1), fundamental_rep(2), highest_weight_submodule(tensor_power(1, 3), (3,))])
def test_E_tilde_inverts_F_tilde_on_highest_weight_vector(rep):
    ops = kashiwara_ops(rep)
    v = rep.basis_vector(0)
    for i in range(1, rep.n + 1):
        if any(ops.F(i, v)):
            assert ops.E(i, ops.F(i, v)) == v


@pytest.mark.parametrize("n", [1, 2, 3])
def test_minuscule_lattice_is_standard(n):
    V = fundamental_rep(n)
    L = crystal_lattice(V, [V.basis_vector(0)])
    assert L.equals(standard_lattice(V.dim))


def test_tensor_square_lattice_rank_and_closure():
    V = tensor_power(1, 2)
    gens = [V.basis_vector(0)] + singular_vectors(V, (0,))
    L = crystal_lattice(V, gens)
    assert L.rank == 4
    assert is_crystal_closed(L, kashiwara_ops(V))


def test_closure_for_n2_tensor_square():
    V = tensor_power(2, 2)
    gens = [V.basis_vector(0)] + singular_vectors(V, (0, 1))
    L = crystal_lattice(V, gens)
    assert L.rank == 9
    assert is_crystal_closed(L, kashiwara_ops(V))


def test_lattice_must_span():
    V = tensor_power(1, 2)
    with pytest.raises(ValueError):
        crystal_lattice(V, [V.basis_vector(0)])


def test_a0_basis_membership():
    B = a0_basis([[1, T], [0, 1 + T]])
    assert B.contains([1, 0])
    assert not B.contains([1 / T, 0])
