import pytest

from tlhom.coeff import DirectA, FromUnit, ParamContext, RingSpec, make_context


def unit_context(ring: RingSpec, v: int) -> ParamContext:
    return make_context(ring, FromUnit(v))


@pytest.fixture
def z1() -> ParamContext:
    """Z with v = 1, so a = 2."""
    return unit_context(RingSpec.integers(), 1)


@pytest.fixture
def q1() -> ParamContext:
    """Q with v = 1, so a = 2 is a unit."""
    return unit_context(RingSpec.rationals(), 1)


@pytest.fixture
def f2() -> ParamContext:
    """F_2 with v = 1, so a = 0."""
    return unit_context(RingSpec.prime_field(2), 1)


@pytest.fixture
def f5() -> ParamContext:
    """F_5 with v = 2, so a = 2 + 3 = 0."""
    return unit_context(RingSpec.prime_field(5), 2)


@pytest.fixture
def za2() -> ParamContext:
    """Z with only a = 2 known."""
    return make_context(RingSpec.integers(), DirectA(2))


@pytest.fixture(params=["z1", "q1", "f2", "f5"])
def canonical(request) -> ParamContext:
    return request.getfixturevalue(request.param)
