import random

import pytest

from tlhom.diagram import catalan
from tlhom.errors import BadRange, NotWellDefined
from tlhom.induced import (
    commutes_with_subalgebra,
    ideal_basis,
    induced_basis,
    left_action_matrix,
    lift,
    reduce,
    right_mult_map,
    vector_to_element,
)
from tlhom.tlalg import TLElement, generator, multiply, multiply_all


@pytest.mark.parametrize("n", range(1, 6))
def test_induced_bases_at_the_extremes(n):
    assert len(induced_basis(n, 0)) == catalan(n)
    assert len(induced_basis(n, 1)) == catalan(n)
    assert len(induced_basis(n, n)) == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_ideal_and_induced_bases_partition_the_jones_basis(n):
    for m in range(n + 1):
        assert len(induced_basis(n, m)) + len(ideal_basis(n, m)) == catalan(n)


def test_induced_basis_for_tl3_over_tl2():
    assert induced_basis(3, 2).labels() == ["1", "(U1 U2)", "(U2)"]


def test_induced_basis_range():
    with pytest.raises(BadRange):
        induced_basis(3, 4)


def test_lift_then_reduce(q1):
    basis = induced_basis(4, 2)
    for k in range(len(basis)):
        assert reduce(q1, lift(q1, basis, k), 2) == {k: q1.ring.one}


def test_reduce_kills_the_subalgebra(q1):
    # x U_1 (x) 1 = x (x) U_1 1 = 0 in TL_3 (x)_{TL_2} 1
    x = multiply(q1, generator(q1, 3, 2), generator(q1, 3, 1))
    assert reduce(q1, x, 2) == {}


def test_vector_to_element_inverts_reduce(q1):
    basis = induced_basis(3, 1)
    vec = {0: q1.ring(2), 3: q1.ring(-1)}
    assert reduce(q1, vector_to_element(q1, basis, vec), 1) == vec


def test_left_action_on_free_module(z1):
    # on TL_2 itself U_1 sends 1 to U_1 and U_1 to a U_1
    A = left_action_matrix(z1, 2, 0, generator(z1, 2, 1))
    assert A.dense_rows() == [[0, 0], [1, 2]]


def test_commutation_check(q1):
    assert commutes_with_subalgebra(q1, 4, 2, generator(q1, 4, 3))
    assert not commutes_with_subalgebra(q1, 4, 2, generator(q1, 4, 2))


def test_right_multiplication_needs_commutation(q1):
    with pytest.raises(NotWellDefined):
        right_mult_map(q1, 3, 2, 2, generator(q1, 3, 2))


def test_right_multiplication_by_identity_projects(q1):
    one = TLElement.identity(q1.ring, 3)
    M = right_mult_map(q1, 3, 1, 2, one)
    assert M.shape == (3, 5)
    assert M.rank() == 3


def random_element(ctx, n, rng):
    letters = [rng.randint(1, n - 1) for _ in range(rng.randint(1, 4))]
    word = multiply_all(ctx, n, (generator(ctx, n, i) for i in letters))
    return word + TLElement.identity(ctx.ring, n).scale(ctx.ring(rng.randint(-2, 2)))


@pytest.mark.parametrize("n", range(2, 6))
def test_left_action_is_multiplicative(z1, n):
    rng = random.Random(n)
    for m in range(n):
        for _ in range(3):
            g, h = random_element(z1, n, rng), random_element(z1, n, rng)
            A = left_action_matrix(z1, n, m, multiply(z1, g, h))
            assert A == left_action_matrix(z1, n, m, g) @ left_action_matrix(z1, n, m, h), m
