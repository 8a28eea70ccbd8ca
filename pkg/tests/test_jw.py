import pytest

from tlhom.coeff import DirectA, RingSpec, make_context
from tlhom.diagram import enumerate_diagrams, identity_diagram
from tlhom.errors import BadRange, InvariantViolation, NotAField
from tlhom.jw import (
    DELTA,
    DeltaPoly,
    LaurentPoly,
    balanced_from_gaussian,
    chebyshev,
    check_jw,
    compute_jw,
    evaluate,
    gaussian_binomial,
    jw_exists,
    odd_vanishing_applies,
    qbc_delta_zero,
    quantum_binomial,
    quantum_binomial_laurent,
    quantum_integer,
    to_delta,
)
from tlhom.tlalg import TLElement, generator, multiply, render_element


def test_named_quantum_binomials():
    assert quantum_binomial(3, 1) == DeltaPoly((-1, 0, 1))
    assert quantum_binomial(4, 1) == DeltaPoly((0, -2, 0, 1))
    assert quantum_binomial(4, 2) == DeltaPoly((2, 0, -3, 0, 1))


def test_edges_of_the_row_are_one():
    for n in range(6):
        assert quantum_binomial(n, 0) == DeltaPoly.constant(1)
        assert quantum_binomial(n, n) == DeltaPoly.constant(1)


def test_quantum_integers():
    assert quantum_integer(3) == LaurentPoly({2: 1, 0: 1, -2: 1})
    assert quantum_integer(0).is_zero()
    assert to_delta(quantum_integer(2)) == DELTA
    with pytest.raises(BadRange):
        quantum_integer(-1)


def test_chebyshev_recursion():
    assert chebyshev(0) == DeltaPoly.constant(2)
    assert chebyshev(2) == DeltaPoly((-2, 0, 1))


def test_quantum_binomial_symmetry():
    for n in range(9):
        for r in range(n + 1):
            assert quantum_binomial_laurent(n, r) == quantum_binomial_laurent(n, n - r)


def test_balanced_form_of_gaussian_binomials():
    for n in range(11):
        for r in range(n + 1):
            assert balanced_from_gaussian(n, r) == quantum_binomial_laurent(n, r)


def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 2) == LaurentPoly({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})


def test_delta_zero_closed_forms():
    assert [qbc_delta_zero(4, r) for r in range(5)] == [1, 0, 2, 0, 1]
    for n in range(13):
        for r in range(n + 1):
            assert quantum_binomial(n, r).at_zero() == qbc_delta_zero(n, r)


def test_to_delta_rejects_odd_polynomials():
    with pytest.raises(InvariantViolation):
        to_delta(LaurentPoly.monomial(1))


def test_binomial_range():
    with pytest.raises(BadRange):
        quantum_binomial(3, 4)
    with pytest.raises(BadRange):
        qbc_delta_zero(3, -1)


def test_evaluate():
    Q = RingSpec.rationals()
    assert evaluate(DELTA * DELTA, Q(3), Q) == Q(9)
    assert evaluate(quantum_integer(2), Q(2), Q) == Q(5, 2)


def test_existence_criterion(q1, f5):
    assert jw_exists(q1, 3)
    assert jw_exists(f5, 1)
    assert not jw_exists(f5, 2)


def test_existence_needs_a_field(z1):
    with pytest.raises(NotAField):
        jw_exists(z1, 2)


def test_projector_for_two_strands(q1):
    p = compute_jw(q1, 2)
    assert render_element(p) == "1*1 + -1/2*(U1)"
    assert check_jw(q1, p)
    assert multiply(q1, p, p) == p


@pytest.mark.parametrize("n", range(1, 5))
def test_projector_is_killed_by_generators(q1, n):
    p = compute_jw(q1, n)
    assert p is not None
    for i in range(1, n):
        u = generator(q1, n, i)
        assert multiply(q1, u, p).is_zero()
        assert multiply(q1, p, u).is_zero()
    assert multiply(q1, p, p) == p


def test_no_projector_over_z_when_a_is_not_a_unit(z1):
    assert compute_jw(z1, 2) is None


def test_projector_over_z_with_unit_loop():
    ctx = make_context(RingSpec.integers(), DirectA(1))
    assert render_element(compute_jw(ctx, 2)) == "1*1 + -1*(U1)"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_criterion_agrees_with_solver(p):
    for v in range(1, p):
        ctx = make_context(RingSpec.prime_field(p), DirectA(v))
        for n in range(1, 5):
            assert (compute_jw(ctx, n) is not None) == jw_exists(ctx, n)


def test_identity_is_not_a_projector(q1):
    assert not check_jw(q1, TLElement.identity(q1.ring, 2))


def test_odd_vanishing_conditions(q1, f2, f5, z1):
    assert odd_vanishing_applies(f5, 3)
    assert odd_vanishing_applies(f5, 5)
    assert not odd_vanishing_applies(f2, 5)
    assert odd_vanishing_applies(f2, 3)
    assert not odd_vanishing_applies(f5, 4)
    assert not odd_vanishing_applies(q1, 3)
    assert not odd_vanishing_applies(z1, 3)


@pytest.mark.parametrize("n", range(2, 5))
def test_perturbed_projector_fails_the_check(q1, n):
    p = compute_jw(q1, n)
    one = identity_diagram(n)
    for d in enumerate_diagrams(n):
        if d == one:
            continue
        assert not check_jw(q1, p + TLElement.from_diagram(q1.ring, d, q1.ring(3)))
