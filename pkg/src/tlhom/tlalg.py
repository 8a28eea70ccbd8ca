"""
Elements of TL_n(a) as finite sums of diagrams, and the distinguished elements
s_i, their products, the Jacobsthal element and the top differential of W(n).
"""
import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .coeff import ParamContext, RingSpec, RingValue
from .diagram import (
    JonesWord,
    PlanarDiagram,
    compose,
    diagram_to_jones_word,
    enumerate_jacobsthal_sequences,
    generator_diagram,
    identity_diagram,
    jones_word_to_diagram,
)
from .errors import IndexOutOfRange, ParseError, SizeMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreeWord:
    """A monomial U_{i_1} ... U_{i_k} in TL_n; the empty word is the identity."""
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for i in self.letters:
            if not 1 <= i <= self.n - 1:
                raise IndexOutOfRange(f"U_{i} does not exist in TL_{self.n}")

    def render(self) -> str:
        return " ".join(f"U{i}" for i in self.letters) if self.letters else "1"


class TLElement:
    """A finite sum of diagrams with nonzero ring coefficients."""

    __slots__ = ("n", "ring", "_terms")

    def __init__(self, n: int, ring: RingSpec, terms: dict[PlanarDiagram, RingValue] | None = None):
        self.n = n
        self.ring = ring
        self._terms = {d: c for d, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, ring: RingSpec, n: int) -> "TLElement":
        return cls(n, ring)

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "TLElement":
        return cls(n, ring, {identity_diagram(n): ring.one})

    @classmethod
    def from_diagram(cls, ring: RingSpec, d: PlanarDiagram, coeff: RingValue | None = None) -> "TLElement":
        return cls(d.n, ring, {d: ring.one if coeff is None else coeff})

    @classmethod
    def from_jones_word(cls, ring: RingSpec, w: JonesWord, coeff: RingValue | None = None) -> "TLElement":
        return cls.from_diagram(ring, jones_word_to_diagram(w), coeff)

    def items(self) -> Iterator[tuple[PlanarDiagram, RingValue]]:
        return iter(self._terms.items())

    def coefficient(self, d: PlanarDiagram) -> RingValue:
        return self._terms.get(d, self.ring.zero)

    @property
    def support(self) -> list[PlanarDiagram]:
        return list(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: "TLElement") -> None:
        if self.n != other.n:
            raise SizeMismatch(f"elements of TL_{self.n} and TL_{other.n}")

    def __add__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        terms = dict(self._terms)
        for d, c in other._terms.items():
            terms[d] = terms.get(d, self.ring.zero) + c
        return TLElement(self.n, self.ring, terms)

    def __neg__(self) -> "TLElement":
        return TLElement(self.n, self.ring, {d: -c for d, c in self._terms.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, c: RingValue) -> "TLElement":
        return TLElement(self.n, self.ring, {d: c * x for d, x in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"TLElement(n={self.n}, {render_element(self)})"


def element_sum(ring: RingSpec, n: int, parts: Iterable[TLElement]) -> TLElement:
    terms: dict[PlanarDiagram, RingValue] = {}
    for part in parts:
        for d, c in part.items():
            terms[d] = terms.get(d, ring.zero) + c
    return TLElement(n, ring, terms)


def multiply(ctx: ParamContext, x: TLElement, y: TLElement) -> TLElement:
    """Bilinear extension of diagram composition, each loop contributing a factor a."""
    x._check(y)
    ring = ctx.ring
    powers: dict[int, RingValue] = {}
    terms: dict[PlanarDiagram, RingValue] = {}
    for d, c in x.items():
        for e, c2 in y.items():
            product, loops = compose(d, e)
            if loops not in powers:
                powers[loops] = ring.pow(ctx.a, loops)
            terms[product] = terms.get(product, ring.zero) + c * c2 * powers[loops]
    return TLElement(x.n, ring, terms)


def multiply_all(ctx: ParamContext, n: int, factors: Iterable[TLElement]) -> TLElement:
    result = TLElement.identity(ctx.ring, n)
    for f in factors:
        result = multiply(ctx, result, f)
    return result


def generator(ctx: ParamContext, n: int, i: int) -> TLElement:
    return TLElement.from_diagram(ctx.ring, generator_diagram(n, i))


def from_word(ctx: ParamContext, w: FreeWord) -> TLElement:
    """The element a^k * x_w of a monomial."""
    k, jones = jones_normal_form(w)
    return TLElement.from_jones_word(ctx.ring, jones, ctx.ring.pow(ctx.a, k))


def jones_normal_form(w: FreeWord) -> tuple[int, JonesWord]:
    """Return (k, x) with w = a^k * x in TL_n(a) for every a."""
    d = identity_diagram(w.n)
    total = 0
    for i in w.letters:
        d, loops = compose(d, generator_diagram(w.n, i))
        total += loops
    return total, diagram_to_jones_word(d)


def index(w: FreeWord | JonesWord) -> float:
    """Smallest letter subscript, infinite for the identity."""
    if isinstance(w, JonesWord):
        return w.index
    return min(w.letters) if w.letters else math.inf


def terminus(w: FreeWord | JonesWord) -> float:
    """Subscript of the final letter, infinite for the identity."""
    if isinstance(w, JonesWord):
        return w.terminus
    return w.letters[-1] if w.letters else math.inf


def constant_term(x: TLElement) -> RingValue:
    """Coefficient of the identity diagram: the action of x on the trivial module."""
    return x.coefficient(identity_diagram(x.n))


_TOKEN = re.compile(r"U(\d+)")


def parse_word(n: int, text: str) -> FreeWord:
    """Parse ``1`` or whitespace-separated ``U<k>`` tokens (parentheses ignored)."""
    body = text.replace("(", " ").replace(")", " ").split()
    if body in ([], ["1"]):
        return FreeWord(n)
    letters = []
    for token in body:
        match = _TOKEN.fullmatch(token)
        if match is None:
            raise ParseError(f"bad word token {token!r} in {text!r}")
        letters.append(int(match.group(1)))
    try:
        return FreeWord(n, tuple(letters))
    except IndexOutOfRange as exc:
        raise ParseError(str(exc)) from exc


def render_element(x: TLElement) -> str:
    """``c1*<jones-word> + c2*<jones-word> + ...`` in Jones basis order."""
    if x.is_zero():
        return "0"
    rows = sorted(
        ((diagram_to_jones_word(d), c) for d, c in x.items()),
        key=lambda t: t[0].sort_key(),
    )
    return " + ".join(f"{x.ring.format(c)}*{w.render()}" for w, c in rows)


# s-elements


def s_element(ctx: ParamContext, n: int, i: int) -> TLElement:
    """s_i = lambda + mu * U_i."""
    ctx.require_unit("s_i")
    return TLElement.identity(ctx.ring, n).scale(ctx.lam) + generator(ctx, n, i).scale(ctx.mu)


def s_inverse(ctx: ParamContext, n: int, i: int) -> TLElement:
    """s_i^-1 = lambda^-1 + mu^-1 * U_i."""
    ctx.require_unit("s_i^-1")
    ring = ctx.ring
    return (TLElement.identity(ring, n).scale(ring.inv(ctx.lam))
            + generator(ctx, n, i).scale(ring.inv(ctx.mu)))


def _check_s_range(n: int, lo: int, hi: int) -> None:
    if hi >= lo and (lo < 1 or hi > n - 1):
        raise IndexOutOfRange(f"s_{lo}..s_{hi} not all defined in TL_{n}")


@lru_cache(maxsize=None)
def s_product(ctx: ParamContext, n: int, hi: int, lo: int) -> TLElement:
    """s_hi s_{hi-1} ... s_lo (indices decreasing); empty when hi < lo."""
    _check_s_range(n, lo, hi)
    return multiply_all(ctx, n, (s_element(ctx, n, i) for i in range(hi, lo - 1, -1)))


@lru_cache(maxsize=None)
def s_ascending(ctx: ParamContext, n: int, lo: int, hi: int) -> TLElement:
    """s_lo s_{lo+1} ... s_hi (indices increasing); empty when hi < lo."""
    _check_s_range(n, lo, hi)
    return multiply_all(ctx, n, (s_element(ctx, n, i) for i in range(lo, hi + 1)))


def jacobsthal_element(ctx: ParamContext, n: int, ratio: RingValue | None = None) -> TLElement:
    """
    J_n = sum over n > a_1 > ... > a_r > 0 with n - a_1 odd of (-1)^{(r-1)+n} c^r U_{a_1}...U_{a_r}.

    Args:
        ctx: Parameter context (needs v)
        n: Number of strands
        ratio: The scalar c; mu/lambda when omitted

    Returns:
        The Jacobsthal element
    """
    ctx.require_unit("the Jacobsthal element")
    ring = ctx.ring
    c = ring.div(ctx.mu, ctx.lam) if ratio is None else ratio
    parts = []
    for seq in enumerate_jacobsthal_sequences(n):
        r = len(seq)
        sign = ring.one if (r - 1 + n) % 2 == 0 else -ring.one
        parts.append(from_word(ctx, FreeWord(n, seq)).scale(sign * ring.pow(c, r)))
    return element_sum(ring, n, parts)


@lru_cache(maxsize=None)
def top_differential_element(ctx: ParamContext, n: int) -> TLElement:
    """
    The multiplier of the top differential of W(n): sum_j (-1)^j lambda^-j s_j ... s_1.

    Expanding gives the Jacobsthal element with ratio -mu/lambda.
    """
    ctx.require_unit("the top differential")
    ring = ctx.ring
    lam_inv = ring.inv(ctx.lam)
    parts = []
    for j in range(n):
        sign = ring.one if j % 2 == 0 else -ring.one
        parts.append(s_product(ctx, n, j, 1).scale(sign * ring.pow(lam_inv, j)))
    return element_sum(ring, n, parts)


def _has_right_cup_beyond_first(d: PlanarDiagram) -> bool:
    n = d.n
    return any(d.partner[n + j] == n + j + 1 for j in range(1, n - 1))


def in_augmentation_ideal(ctx: ParamContext, x: TLElement) -> bool:
    """
    Whether x lies in TL_n*a + TL_n*U_2 + ... + TL_n*U_{n-1}.

    That left ideal is spanned by a*TL_n and the diagrams with a right cup at
    some position j >= 2.
    """
    ring = ctx.ring
    return all(
        _has_right_cup_beyond_first(d) or ring.divides(ctx.a, c)
        for d, c in x.items()
    )
