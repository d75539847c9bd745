import pytest

from qcrystal.cartan import Weight
from qcrystal.linalg import SMat
from qcrystal.ratfield import ONE, T
from qcrystal.repth.module import (Rep, fundamental_rep, highest_weight_submodule, irreducible,
                                   singular_vectors, tensor_power, tensor_rep, verify_uq_relations)
from qcrystal.repth.parse import parse_rep


def test_fundamental_rep_n1():
    V = fundamental_rep(1)
    e1, e2 = V.basis_vector(0), V.basis_vector(1)
    assert V.E[0] @ e2 == e1
    assert V.F[0] @ e1 == e2
    assert V.K(1) @ e1 == [T, 0]
    assert V.weights == [Weight((1,)), Weight((-1,))]


def test_fundamental_weights_descend_by_simple_roots():
    V = fundamental_rep(3)
    assert V.dim == 4
    assert V.weights == [Weight((1, 0, 0)), Weight((-1, 1, 0)), Weight((0, -1, 1)), Weight((0, 0, -1))]


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_relations_on_tensor_powers(n, m):
    r = verify_uq_relations(tensor_power(n, m))
    assert r.ok, r.witness


def test_perturbed_F_fails_with_named_relation():
    V = fundamental_rep(1)
    F = [SMat(2, 2, {1: {0: ONE + T}})]
    bad = Rep(1, V.weights, V.E, F)
    r = verify_uq_relations(bad)
    assert not r.ok
    assert "EF-commutator" in r.relation
    assert "entry" in r.witness


def test_tensor_rep_dimensions_and_multiplicities():
    V = fundamental_rep(2)
    assert tensor_rep(V, V).dim == 9
    mult = tensor_power(1, 2).weight_multiplicities()
    assert mult == {Weight((2,)): 1, Weight((0,)): 2, Weight((-2,)): 1}


def test_highest_weight_submodules():
    V2 = tensor_power(1, 2)
    assert highest_weight_submodule(V2, (2,)).dim == 3
    W0 = highest_weight_submodule(V2, (0,))
    assert W0.dim == 1
    # e1 (x) e2 - t e2 (x) e1, normalized so the first nonzero coordinate is 1
    assert W0.embedding == [[0, ONE, -T, 0]]
    V = tensor_power(2, 2)
    assert highest_weight_submodule(V, (2, 0)).dim == 6
    assert highest_weight_submodule(V, (0, 1)).dim == 3
    with pytest.raises(ValueError):
        highest_weight_submodule(V2, (1,))


def test_singular_vectors_are_killed_by_E():
    V = tensor_power(2, 3)
    for lam in [(3, 0), (1, 1), (0, 0)]:
        for v in singular_vectors(V, lam):
            assert all(not any(E @ v) for E in V.E)


@pytest.mark.parametrize("n,lam,dim", [(1, (2,), 3), (1, (3,), 4), (2, (1, 1), 8), (2, (0, 1), 3), (3, (0, 1, 0), 6)])
def test_irreducible_dimensions_and_relations(n, lam, dim):
    R = irreducible(n, lam)
    assert R.dim == dim
    assert verify_uq_relations(R).ok


def test_parse_rep_expressions():
    assert parse_rep("fund(2)").dim == 3
    assert parse_rep("tensor(fund(1),fund(1))").dim == 4
    W = parse_rep("hw(tensor(fund(1),fund(1)),2)")
    assert W.dim == 3 and W.weights[0] == Weight((2,))
    assert parse_rep("irr(2,1,1)").dim == 8
    assert parse_rep("power(1,3)").dim == 8
    for bad in ["fund(", "tensor(fund(1))x", "nope(1)", ""]:
        with pytest.raises(ValueError):
            parse_rep(bad)
