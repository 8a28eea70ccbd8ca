from math import gcd

import pytest

from tlhom.coeff import RingSpec
from tlhom.errors import ParseError
from tlhom.linalg import (
    RingMatrix,
    Submodule,
    image_module,
    kernel_basis,
    load_matrix,
    save_matrix,
    smith_invariants,
    solve,
    span,
)

Z = RingSpec.integers()
Q = RingSpec.rationals()
F3 = RingSpec.prime_field(3)


def matrix(ring, rows):
    return RingMatrix.from_rows(ring, len(rows[0]), [[ring(x) for x in row] for row in rows])


def test_integer_kernel_is_primitive():
    M = matrix(Z, [[2, 4, 6]])
    kernel = kernel_basis(M)
    assert len(kernel) == 2
    for vec in kernel:
        assert M.apply(vec) == {}
    # the lattice {x : 2x_0 + 4x_1 + 6x_2 = 0} contains (-2, 1, 0) and (-3, 0, 1)
    K = span(Z, 3, kernel)
    assert {0: Z(-2), 1: Z(1)} in K
    assert {0: Z(-3), 2: Z(1)} in K


def test_kernel_over_field():
    M = matrix(F3, [[1, 1, 1]])
    kernel = kernel_basis(M)
    assert len(kernel) == 2
    assert all(M.apply(v) == {} for v in kernel)


def test_kernel_of_zero_and_empty_matrices():
    assert len(kernel_basis(RingMatrix.zeros(Q, 2, 3))) == 3
    assert kernel_basis(RingMatrix.zeros(Q, 2, 0)) == []


def test_smith_invariants():
    assert smith_invariants(matrix(Z, [[2, 0], [0, 3]])) == [1, 6]
    assert smith_invariants(matrix(Z, [[2, 4], [4, 8]])) == [2]
    assert smith_invariants(RingMatrix.zeros(Z, 2, 2)) == []


def test_submodule_membership_over_z():
    sub = span(Z, 2, [{0: Z(2)}, {1: Z(2)}])
    assert {0: Z(2), 1: Z(2)} in sub
    assert {0: Z(1)} not in sub
    assert not sub.is_full()
    assert sub.coordinates({0: Z(4), 1: Z(6)}) == [Z(2), Z(3)]


def test_xgcd_echelon_keeps_the_lattice():
    sub = span(Z, 1, [{0: Z(4)}, {0: Z(6)}])
    assert sub.rank == 1
    assert sub.basis() == [{0: Z(2)}]
    assert span(Z, 1, [{0: Z(2)}, {0: Z(3)}]).is_full()


def test_submodule_order():
    small = span(Q, 3, [{0: Q(1), 1: Q(1)}])
    big = span(Q, 3, [{0: Q(1)}, {1: Q(1)}])
    assert small <= big
    assert not big <= small
    assert span(Q, 3, [{0: Q(2)}]) == span(Q, 3, [{0: Q(1)}])


def test_image_module():
    M = matrix(Z, [[1, 1], [1, -1]])
    image = image_module(M)
    assert image.rank == 2
    assert {0: Z(1)} not in image
    assert {0: Z(2)} in image


def test_solve():
    M = matrix(Q, [[1, 1], [0, 2]])
    x = solve(M, {0: Q(3), 1: Q(2)})
    assert x == {0: Q(2), 1: Q(1)}
    assert solve(matrix(Z, [[2]]), {0: Z(1)}) is None
    assert solve(matrix(Q, [[2]]), {0: Q(1)}) == {0: Q(1, 2)}


def test_rank_and_invertibility():
    assert matrix(Z, [[1, 1], [0, 1]]).is_invertible()
    assert not matrix(Z, [[2]]).is_invertible()
    assert matrix(Q, [[2]]).is_invertible()
    assert matrix(F3, [[1, 2], [2, 1]]).rank() == 1


def test_block_and_products():
    A = matrix(Q, [[1, 2]])
    B = matrix(Q, [[3], [4]])
    assert (A @ B).get(0, 0) == Q(11)
    assert A.transpose().shape == (2, 1)
    assert (A - A).is_zero()


def test_matrix_file_round_trip(tmp_path):
    M = matrix(Z, [[1, 0, -3], [0, 5, 0]])
    path = tmp_path / "d_1.tlmat"
    save_matrix(M, path)
    assert path.read_text().splitlines()[0] == "tlmat 2 3 Z"
    assert load_matrix(path) == M


def test_load_matrix_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_matrix(tmp_path / "missing.tlmat")
    bad = tmp_path / "bad.tlmat"
    bad.write_text("matrix 1 1 Z\n")
    with pytest.raises(ParseError):
        load_matrix(bad)


def test_gcd_of_kernel_entries_is_one():
    M = matrix(Z, [[6, 10, 15]])
    for vec in kernel_basis(M):
        g = 0
        for v in vec.values():
            g = gcd(g, int(v))
        assert g == 1
