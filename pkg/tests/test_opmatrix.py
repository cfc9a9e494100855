import pytest

from qoslab.laurent import P_Q, P_Q2
from qoslab.algebra import Algebra, commutator
from qoslab.opmatrix import OpMatrix, kron, embed, reshape_sum_to_tensor, chain
from qoslab.matrices import (
    L_matrix,
    M_matrix,
    E_matrix,
    X_block_matrix,
    P_block_matrix,
)


@pytest.fixture
def alg():
    return Algebra({"x": P_Q, "y": P_Q})


def test_identity_and_matmul(alg):
    shape = (("a", 2), ("b", 2))
    eye = OpMatrix.identity(alg, shape)
    L = L_matrix(alg, "x", ("a", "b"))
    assert eye @ L == L
    assert L @ eye == L


def test_matmul_associative(alg):
    shape = (("a", 2), ("b", 2))
    L = L_matrix(alg, "x", ("a", "b"))
    M = M_matrix(alg, "y", ("a", "b"))
    E = kron(E_matrix(alg, 2, "a"), E_matrix(alg, 3, "b"))
    assert (L @ M) @ E == L @ (M @ E)


def test_kron_vs_embed(alg):
    shape = (("a", 2), ("b", 2))
    Ea = E_matrix(alg, 5, "a")
    Eb = E_matrix(alg, 7, "b")
    assert kron(Ea, Eb) == embed(Ea, ("a",), shape) @ embed(Eb, ("b",), shape)


def test_embed_spectator_commutes(alg):
    shape = (("a", 2), ("b", 2), ("c", 2))
    La = embed(L_matrix(alg, "x", ("r", "s")), ("a", "b"), shape)
    Ec = embed(E_matrix(alg, 3, "c"), ("c",), shape)
    assert La @ Ec == Ec @ La


def test_reshape_direct_sum_blocks(alg):
    x = X_block_matrix(alg, "x", 4, 0, 3)  # block on (alpha, delta)
    t = reshape_sum_to_tensor(x)
    # alpha -> (0,0) and delta -> (1,1): corners of the tensor basis
    assert t.entries[(0, 0)] == alg.gen("x", "k")
    assert t.entries[(0, 3)] == alg.gen("x", "ap")
    assert t.entries[(3, 0)] == alg.gen("x", "am")
    assert t.entries[(3, 3)] == alg.gen("x", "kp")


def test_permutation_blocks(alg):
    p = P_block_matrix(alg, 4, 1, 2)
    assert p @ p == OpMatrix.identity(alg, (("s", 4),))


def test_chain_matches_matmul(alg):
    L = L_matrix(alg, "x", ("a", "b"))
    M = M_matrix(alg, "y", ("a", "b"))
    assert chain([L, M, L]) == L @ M @ L


def test_matrix_entries_act_on_left_factor_first(alg):
    """Row = incoming, column = outgoing: entries of a product multiply the
    left factor's entries on the left."""
    A = L_matrix(alg, "x", ("a", "b"))
    B = L_matrix(alg, "y", ("a", "b"))
    prod = A @ B
    # entry (1,1): sum_k A[1,k] B[k,1] with A entries leftmost
    expected = (alg.gen("x", "kp") * alg.gen("y", "kp")
                + alg.gen("x", "am") * alg.gen("y", "ap"))
    assert (prod.entries[(1, 1)] - expected).is_zero()
