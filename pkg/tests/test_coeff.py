import random
from fractions import Fraction

import pytest

from tlhom.coeff import (
    Annihilator,
    DirectA,
    FromUnit,
    RingSpec,
    Theta,
    annihilator_of_a,
    make_context,
    parse_ring_tag,
)
from tlhom.errors import BadPrime, MissingUnit, NonInvertibleA, NonUnit, ParseError, UsageError


def test_parse_ring_tags():
    assert parse_ring_tag("Z").is_integers
    assert parse_ring_tag("Q").is_field
    ring = parse_ring_tag("Fp:7")
    assert ring.characteristic == 7
    assert ring.tag == "Fp:7"


@pytest.mark.parametrize("tag", ["R", "Fp:x", "", "Z/2"])
def test_parse_ring_tag_rejects_garbage(tag):
    with pytest.raises(ParseError):
        parse_ring_tag(tag)


def test_prime_field_needs_prime():
    with pytest.raises(BadPrime):
        parse_ring_tag("Fp:6")


def test_context_from_unit_theta1(z1):
    ring = z1.ring
    assert ring.to_python(z1.a) == 2
    assert ring.to_python(z1.q) == 1
    assert ring.to_python(z1.lam) == -1
    assert ring.to_python(z1.mu) == 1


def test_context_theta2():
    ring = RingSpec.rationals()
    ctx = make_context(ring, FromUnit(2), Theta.THETA2)
    assert ring.to_python(ctx.a) == Fraction(5, 2)
    assert ring.to_python(ctx.lam) == 4
    assert ring.to_python(ctx.mu) == -2


def test_a_vanishes_in_f5(f5):
    assert f5.ring.to_python(f5.a) == 0
    assert annihilator_of_a(f5) is Annihilator.WHOLE_RING
    assert not f5.a_is_unit


def test_v_must_be_a_unit():
    with pytest.raises(NonUnit):
        make_context(RingSpec.integers(), FromUnit(2))


def test_direct_a_has_no_unit(za2):
    assert not za2.has_unit
    with pytest.raises(MissingUnit):
        za2.require_unit()
    with pytest.raises(NonInvertibleA):
        za2.a_inv


def test_parse_value():
    assert RingSpec.rationals().to_python(RingSpec.rationals().parse_value("1/2")) == Fraction(1, 2)
    f5 = RingSpec.prime_field(5)
    assert f5.to_python(f5.parse_value("1/2")) == 3
    assert f5.to_python(f5.parse_value("-1")) == 4
    with pytest.raises(UsageError):
        RingSpec.integers().parse_value("1/2")
    with pytest.raises(ParseError):
        RingSpec.integers().parse_value("seven")


def test_division_and_units():
    Z = RingSpec.integers()
    assert Z.to_python(Z.div(Z(6), Z(3))) == 2
    with pytest.raises(NonUnit):
        Z.div(Z(3), Z(2))
    assert Z.divides(Z(2), Z(4))
    assert not Z.divides(Z(2), Z(3))
    assert Z.is_unit(Z(-1))
    assert not Z.is_unit(Z(2))


def test_ring_axioms_on_random_triples():
    rng = random.Random(11)
    for ring in (RingSpec.integers(), RingSpec.rationals(), RingSpec.prime_field(7)):
        for _ in range(50):
            x, y, z = (ring(rng.randint(-20, 20)) for _ in range(3))
            assert x + y == y + x
            assert x * y == y * x
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z


def test_describe_mentions_parameters(q1):
    text = q1.describe()
    assert "ring=Q" in text
    assert "a=2" in text
    assert "theta1" in text


def test_direct_a_coerces_into_field():
    ctx = make_context(RingSpec.prime_field(3), DirectA(4))
    assert ctx.ring.to_python(ctx.a) == 1
