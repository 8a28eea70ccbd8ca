"""
Induced modules TL_n (x)_{TL_m} 1 = TL_n / I_m.

The Jones words with terminus > m-1 form a basis of the quotient and the words
with terminus <= m-1 a basis of the left ideal I_m, so reducing an element just
drops the ideal coordinates.
"""
import logging
from dataclasses import dataclass, field
from functools import cache

from .coeff import ParamContext
from .diagram import JonesWord, diagram_to_jones_word, enumerate_jones_words, jones_word_to_diagram
from .errors import BadRange, NotWellDefined, SizeMismatch
from .linalg import RingMatrix, SparseVector
from .tlalg import TLElement, generator, multiply

logger = logging.getLogger(__name__)

__all__ = [
    "InducedBasis",
    "induced_basis",
    "ideal_basis",
    "lift",
    "reduce",
    "left_action_matrix",
    "right_mult_map",
    "commutes_with_subalgebra",
    "vector_to_element",
]


@dataclass(frozen=True)
class InducedBasis:
    """Ordered Jones basis of TL_n (x)_{TL_m} 1."""
    n: int
    m: int
    words: tuple[JonesWord, ...]
    position: dict = field(compare=False, hash=False, repr=False)

    def __len__(self) -> int:
        return len(self.words)

    def labels(self) -> list[str]:
        return [w.render() for w in self.words]


def _check_range(n: int, m: int) -> None:
    if not 0 <= m <= n:
        raise BadRange(f"need 0 <= m <= n, got n={n}, m={m}")


@cache
def induced_basis(n: int, m: int) -> InducedBasis:
    """Jones words of TL_n with terminus > m-1, in canonical order."""
    _check_range(n, m)
    words = tuple(w for w in enumerate_jones_words(n) if w.terminus > m - 1)
    return InducedBasis(n, m, words, {w: k for k, w in enumerate(words)})


@cache
def ideal_basis(n: int, m: int) -> tuple[JonesWord, ...]:
    """Jones words with terminus <= m-1: a basis of the left ideal I_m."""
    _check_range(n, m)
    return tuple(w for w in enumerate_jones_words(n) if w.terminus <= m - 1)


def lift(ctx: ParamContext, basis: InducedBasis, k: int) -> TLElement:
    """The element of TL_n represented by the k-th basis word."""
    return TLElement.from_jones_word(ctx.ring, basis.words[k])


def reduce(ctx: ParamContext, x: TLElement, m: int) -> SparseVector:
    """Coordinates of x (x) 1 in induced_basis(x.n, m)."""
    basis = induced_basis(x.n, m)
    out: SparseVector = {}
    for d, c in x.items():
        k = basis.position.get(diagram_to_jones_word(d))
        if k is not None:
            out[k] = out.get(k, ctx.ring.zero) + c
    return {k: c for k, c in out.items() if c}


def vector_to_element(ctx: ParamContext, basis: InducedBasis, vec: SparseVector) -> TLElement:
    """Lift coordinates back to TL_n along the basis words."""
    terms = {jones_word_to_diagram(basis.words[k]): c for k, c in vec.items() if c}
    return TLElement(basis.n, ctx.ring, terms)


def left_action_matrix(ctx: ParamContext, n: int, m: int, g: TLElement) -> RingMatrix:
    """Matrix of v -> g * v on TL_n (x)_{TL_m} 1."""
    if g.n != n:
        raise SizeMismatch(f"element of TL_{g.n} acting on a TL_{n}-module")
    basis = induced_basis(n, m)
    columns = [reduce(ctx, multiply(ctx, g, lift(ctx, basis, k)), m) for k in range(len(basis))]
    return RingMatrix.from_columns(ctx.ring, len(basis), columns)


def commutes_with_subalgebra(ctx: ParamContext, n: int, m: int, g: TLElement) -> bool:
    """Whether g commutes with U_1, ..., U_{m-1} inside TL_n."""
    for i in range(1, m):
        u = generator(ctx, n, i)
        if multiply(ctx, g, u) != multiply(ctx, u, g):
            return False
    return True


def right_mult_map(ctx: ParamContext, n: int, m_src: int, m_tgt: int, g: TLElement) -> RingMatrix:
    """
    Matrix of x (x) r -> x*g (x) r from TL_n (x)_{TL_m_src} 1 to TL_n (x)_{TL_m_tgt} 1.

    Args:
        ctx: Parameter context
        n: Number of strands
        m_src: Subalgebra index of the source
        m_tgt: Subalgebra index of the target, at least m_src
        g: Right multiplier; must commute with TL_{m_src}

    Returns:
        A |basis(n, m_tgt)| x |basis(n, m_src)| matrix

    Raises:
        NotWellDefined: If g fails the commutation check
    """
    if m_src > m_tgt:
        raise BadRange(f"right multiplication needs m_src <= m_tgt, got {m_src} > {m_tgt}")
    if g.n != n:
        raise SizeMismatch(f"multiplier in TL_{g.n}, modules over TL_{n}")
    if not commutes_with_subalgebra(ctx, n, m_src, g):
        raise NotWellDefined(f"multiplier does not commute with TL_{m_src} inside TL_{n}")
    src = induced_basis(n, m_src)
    tgt = induced_basis(n, m_tgt)
    columns = [reduce(ctx, multiply(ctx, lift(ctx, src, k), g), m_tgt) for k in range(len(src))]
    logger.debug("right_mult_map n=%d %d->%d: %dx%d", n, m_src, m_tgt, len(tgt), len(src))
    return RingMatrix.from_columns(ctx.ring, len(tgt), columns)
