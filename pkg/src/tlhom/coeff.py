"""
Exact coefficient rings and the parameter bookkeeping a = v + v^-1, q = v^2, (lambda, mu).

Ring values are sympy domain elements (``ZZ``, ``QQ`` or ``GF(p)``), so every
matrix built elsewhere can be handed to ``DomainMatrix`` without conversion.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any

from sympy import isprime
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.domains.domain import Domain
from sympy.polys.polyerrors import ExactQuotientFailed

from .errors import BadPrime, MissingUnit, NonInvertibleA, NonUnit, ParseError

logger = logging.getLogger(__name__)

RingValue = Any


class RingKind(str, Enum):
    """Supported base rings."""
    INTEGERS = "Z"
    RATIONALS = "Q"
    PRIME_FIELD = "Fp"


class Theta(str, Enum):
    """Choice of image of the Hecke generator: s_i = lambda + mu*U_i."""
    THETA1 = "theta1"  # (lambda, mu) = (-1, v)
    THETA2 = "theta2"  # (lambda, mu) = (v^2, -v)


class Annihilator(str, Enum):
    """The annihilator of a in a domain is either zero or everything."""
    ZERO = "zero"
    WHOLE_RING = "whole"


@dataclass(frozen=True)
class RingSpec:
    """One of Z, Q or F_p."""
    kind: RingKind
    p: int | None = None

    def __post_init__(self):
        if self.kind is RingKind.PRIME_FIELD:
            if self.p is None or not isprime(self.p):
                raise BadPrime(f"F_p needs a prime modulus, got {self.p}")
        elif self.p is not None:
            raise BadPrime(f"{self.kind.value} takes no modulus")

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls(RingKind.INTEGERS)

    @classmethod
    def rationals(cls) -> "RingSpec":
        return cls(RingKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "RingSpec":
        return cls(RingKind.PRIME_FIELD, p)

    @cached_property
    def domain(self) -> Domain:
        """The sympy domain realizing this ring."""
        if self.kind is RingKind.INTEGERS:
            return ZZ
        if self.kind is RingKind.RATIONALS:
            return QQ
        return GF(self.p, symmetric=False)

    @property
    def is_field(self) -> bool:
        return self.kind is not RingKind.INTEGERS

    @property
    def is_integers(self) -> bool:
        return self.kind is RingKind.INTEGERS

    @property
    def characteristic(self) -> int:
        return self.p if self.kind is RingKind.PRIME_FIELD else 0

    @property
    def tag(self) -> str:
        if self.kind is RingKind.PRIME_FIELD:
            return f"Fp:{self.p}"
        return self.kind.value

    def __str__(self) -> str:
        return self.tag

    # Element plumbing

    @property
    def zero(self) -> RingValue:
        return self.domain.zero

    @property
    def one(self) -> RingValue:
        return self.domain.one

    def __call__(self, value: int | Fraction | RingValue) -> RingValue:
        """Coerce an int, Fraction or domain element into the ring."""
        if isinstance(value, Fraction):
            if self.kind is RingKind.INTEGERS:
                if value.denominator != 1:
                    raise NonUnit(f"{value} is not an integer")
                return self.domain(value.numerator)
            if self.kind is RingKind.RATIONALS:
                return QQ(value.numerator, value.denominator)
            return self.div(self.domain(value.numerator), self.domain(value.denominator))
        if isinstance(value, int):
            return self.domain(value)
        return self.domain.convert(value)

    def is_zero(self, x: RingValue) -> bool:
        return not x

    def is_unit(self, x: RingValue) -> bool:
        if not x:
            return False
        if self.is_integers:
            return abs(int(x)) == 1
        return True

    def inv(self, x: RingValue) -> RingValue:
        """Multiplicative inverse, raising NonUnit if there is none."""
        if not self.is_unit(x):
            raise NonUnit(f"{self.format(x)} is not a unit in {self.tag}")
        if self.is_integers:
            return x
        return self.domain.quo(self.domain.one, x)

    def div(self, x: RingValue, y: RingValue) -> RingValue:
        """Exact quotient x / y."""
        if not y:
            raise NonUnit("division by zero")
        try:
            return self.domain.exquo(x, y)
        except ExactQuotientFailed as exc:
            raise NonUnit(f"{self.format(y)} does not divide {self.format(x)} in {self.tag}") from exc

    def divides(self, y: RingValue, x: RingValue) -> bool:
        """Whether y divides x."""
        if not y:
            return not x
        if self.is_field:
            return True
        return x % y == 0

    def pow(self, x: RingValue, k: int) -> RingValue:
        if k < 0:
            return self.inv(x) ** (-k)
        return x ** k if k else self.one

    def to_python(self, x: RingValue) -> int | Fraction:
        """Plain int (Z, F_p as 0..p-1) or Fraction (Q)."""
        if self.kind is RingKind.RATIONALS:
            return Fraction(int(x.numerator), int(x.denominator))
        if self.kind is RingKind.PRIME_FIELD:
            return int(x) % self.p
        return int(x)

    def format(self, x: RingValue) -> str:
        return str(self.to_python(x))

    def parse_value(self, text: str) -> RingValue:
        """Parse ``7``, ``-3`` or ``1/2``."""
        try:
            return self(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot read ring value {text!r}") from exc


def parse_ring_tag(tag: str) -> RingSpec:
    """Parse ``Z``, ``Q`` or ``Fp:<p>``."""
    text = tag.strip()
    if text == "Z":
        return RingSpec.integers()
    if text == "Q":
        return RingSpec.rationals()
    if text.startswith("Fp:"):
        try:
            p = int(text[3:])
        except ValueError as exc:
            raise ParseError(f"bad ring tag {tag!r}") from exc
        return RingSpec.prime_field(p)
    raise ParseError(f"bad ring tag {tag!r}; expected Z, Q or Fp:<p>")


@dataclass(frozen=True)
class DirectA:
    """Parameter given as a itself."""
    a: int | Fraction | RingValue


@dataclass(frozen=True)
class FromUnit:
    """Parameter given by a unit v with a = v + v^-1."""
    v: int | Fraction | RingValue


@dataclass(frozen=True)
class ParamContext:
    """A coefficient ring together with a and, when known, v, q, lambda, mu."""
    ring: RingSpec
    a: RingValue
    v: RingValue | None = None
    q: RingValue | None = None
    lam: RingValue | None = None
    mu: RingValue | None = None
    theta: Theta = Theta.THETA1

    @property
    def has_unit(self) -> bool:
        return self.v is not None

    def require_unit(self, what: str = "this operation") -> None:
        if self.v is None:
            raise MissingUnit(f"{what} needs --v (the context only knows a)")

    @property
    def a_inv(self) -> RingValue:
        if not self.ring.is_unit(self.a):
            raise NonInvertibleA(f"a = {self.ring.format(self.a)} is not a unit in {self.ring.tag}")
        return self.ring.inv(self.a)

    @property
    def a_is_unit(self) -> bool:
        return self.ring.is_unit(self.a)

    def describe(self) -> str:
        fmt = self.ring.format
        parts = [f"ring={self.ring.tag}", f"a={fmt(self.a)}"]
        if self.v is not None:
            parts += [f"v={fmt(self.v)}", f"q={fmt(self.q)}",
                      f"lambda={fmt(self.lam)}", f"mu={fmt(self.mu)}", self.theta.value]
        return ", ".join(parts)


def make_context(
    ring: RingSpec,
    param: DirectA | FromUnit,
    theta: Theta = Theta.THETA1,
) -> ParamContext:
    """
    Build a parameter context.

    Args:
        ring: Coefficient ring
        param: Either a directly, or a unit v
        theta: Which image of the Hecke generator to use for s_i

    Returns:
        The populated ParamContext

    Raises:
        NonUnit: If v is not invertible in the ring
    """
    if isinstance(param, DirectA):
        return ParamContext(ring=ring, a=ring(param.a), theta=theta)

    v = ring(param.v)
    v_inv = ring.inv(v)
    a = v + v_inv
    q = v * v
    if theta is Theta.THETA1:
        lam, mu = -ring.one, v
    else:
        lam, mu = q, -v
    ctx = ParamContext(ring=ring, a=a, v=v, q=q, lam=lam, mu=mu, theta=theta)
    logger.debug("context %s", ctx.describe())
    return ctx


def annihilator_of_a(ctx: ParamContext) -> Annihilator:
    """R_a, the kernel of multiplication by a; Z, Q and F_p are domains."""
    return Annihilator.WHOLE_RING if ctx.ring.is_zero(ctx.a) else Annihilator.ZERO
