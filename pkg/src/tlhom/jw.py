"""
Quantum integers and binomials, the Jones-Wenzl existence criterion, and
Jones-Wenzl projectors found by solving their defining equations.
"""
import logging
from functools import cache
from math import comb

from .coeff import ParamContext, RingSpec, RingValue
from .diagram import enumerate_jones_words, jones_word_to_diagram
from .errors import BadRange, InvariantViolation, NotAField
from .linalg import RingMatrix, solve
from .tlalg import TLElement, constant_term, generator, multiply

logger = logging.getLogger(__name__)


class LaurentPoly:
    """Integer Laurent polynomial in q, stored as {exponent: coefficient} without zeros."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self._terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max(self._terms)

    def low_degree(self) -> int:
        return min(self._terms)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return LaurentPoly(terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms: dict[int, int] = {}
        for k, c in self._terms.items():
            for l, e in other._terms.items():
                terms[k + l] = terms.get(k + l, 0) + c * e
        return LaurentPoly(terms)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def substitute_power(self, step: int) -> "LaurentPoly":
        """p(q) -> p(q^step)."""
        return LaurentPoly({e * step: c for e, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            if e == 0:
                parts.append(str(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()})"


class DeltaPoly:
    """Integer polynomial in delta = q + q^-1; ``coefficients[k]`` multiplies delta^k."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: list[int] | tuple[int, ...] = ()):
        coeffs = list(coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @classmethod
    def constant(cls, c: int) -> "DeltaPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "DeltaPoly") -> "DeltaPoly":
        size = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (size - len(self.coefficients))
        b = other.coefficients + (0,) * (size - len(other.coefficients))
        return DeltaPoly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "DeltaPoly":
        return DeltaPoly([-c for c in self.coefficients])

    def __sub__(self, other: "DeltaPoly") -> "DeltaPoly":
        return self + (-other)

    def __mul__(self, other: "DeltaPoly") -> "DeltaPoly":
        if self.is_zero() or other.is_zero():
            return DeltaPoly()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, c in enumerate(self.coefficients):
            for j, e in enumerate(other.coefficients):
                out[i + j] += c * e
        return DeltaPoly(out)

    def scale(self, c: int) -> "DeltaPoly":
        return DeltaPoly([c * x for x in self.coefficients])

    def at_zero(self) -> int:
        return self.coefficients[0] if self.coefficients else 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DeltaPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def render(self) -> str:
        """``c0 + c1*d + c2*d^2 + ...`` skipping zero coefficients."""
        parts = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "d" if k == 1 else f"d^{k}"
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"DeltaPoly({self.render()})"


DELTA = DeltaPoly((0, 1))


@cache
def chebyshev(k: int) -> DeltaPoly:
    """P_k with P_k(q + q^-1) = q^k + q^-k: P_0 = 2, P_1 = delta, P_{k+1} = delta P_k - P_{k-1}."""
    if k == 0:
        return DeltaPoly.constant(2)
    if k == 1:
        return DELTA
    return DELTA * chebyshev(k - 1) - chebyshev(k - 2)


def to_delta(p: LaurentPoly) -> DeltaPoly:
    """
    Rewrite a bar-invariant Laurent polynomial as a polynomial in delta.

    Raises:
        InvariantViolation: If p is not a polynomial in q + q^-1
    """
    rest = p
    out = DeltaPoly()
    while not rest.is_zero():
        k = rest.degree()
        c = rest.coefficient(k)
        if k < 0:
            raise InvariantViolation(f"{p.render()} is not a polynomial in delta")
        if k == 0:
            out = out + DeltaPoly.constant(c)
            rest = rest - LaurentPoly.monomial(0, c)
        else:
            out = out + chebyshev(k).scale(c)
            rest = rest - LaurentPoly({k: c, -k: c})
    return out


def quantum_integer(n: int) -> LaurentPoly:
    """[n] = q^{n-1} + q^{n-3} + ... + q^{-(n-1)}."""
    if n < 0:
        raise BadRange(f"quantum integer needs n >= 0, got {n}")
    return LaurentPoly({n - 1 - 2 * j: 1 for j in range(n)})


@cache
def quantum_binomial_laurent(n: int, r: int) -> LaurentPoly:
    """[n r] from [n r] = q^{n-r}[n-1 r-1] + q^{-r}[n-1 r]."""
    if not 0 <= r <= n:
        raise BadRange(f"quantum binomial needs 0 <= r <= n, got n={n}, r={r}")
    if r == 0 or r == n:
        return LaurentPoly.monomial(0)
    return (quantum_binomial_laurent(n - 1, r - 1).shift(n - r)
            + quantum_binomial_laurent(n - 1, r).shift(-r))


@cache
def quantum_binomial(n: int, r: int) -> DeltaPoly:
    """[n r] as a polynomial in delta."""
    return to_delta(quantum_binomial_laurent(n, r))


@cache
def gaussian_binomial(n: int, r: int, step: int = 1) -> LaurentPoly:
    """The Gaussian binomial in p = q^step, from G(n, r) = G(n-1, r-1) + p^r G(n-1, r)."""
    if not 0 <= r <= n:
        raise BadRange(f"Gaussian binomial needs 0 <= r <= n, got n={n}, r={r}")
    if r == 0 or r == n:
        return LaurentPoly.monomial(0)
    return gaussian_binomial(n - 1, r - 1, step) + gaussian_binomial(n - 1, r, step).shift(step * r)


def balanced_from_gaussian(n: int, r: int) -> LaurentPoly:
    """q^{r^2 - nr} times the Gaussian binomial in q^2; equals [n r]."""
    return gaussian_binomial(n, r, 2).shift(r * r - n * r)


def qbc_delta_zero(n: int, r: int) -> int:
    """
    [n r] at delta = 0 in closed form.

    n even, r odd gives 0; n = 2a, r = 2t gives C(a, t); n = 2a+1, r = 2t gives
    (-1)^t C(a, t); n = 2a+1, r = 2t+1 gives (-1)^(a-t) C(a, t).
    """
    if not 0 <= r <= n:
        raise BadRange(f"quantum binomial needs 0 <= r <= n, got n={n}, r={r}")
    a, t = n // 2, r // 2
    if n % 2 == 0:
        return 0 if r % 2 else comb(a, t)
    if r % 2 == 0:
        return (-1) ** t * comb(a, t)
    return (-1) ** (a - t) * comb(a, t)


def evaluate(poly: LaurentPoly | DeltaPoly, value: RingValue, ring: RingSpec) -> RingValue:
    """Evaluate at q = value (Laurent) or delta = value (delta polynomial)."""
    if isinstance(poly, DeltaPoly):
        total = ring.zero
        for c in reversed(poly.coefficients):
            total = total * value + ring(c)
        return total
    total = ring.zero
    for e, c in poly.terms.items():
        total += ring(c) * ring.pow(value, e)
    return total


def _require_field(ctx: ParamContext) -> None:
    if not ctx.ring.is_field:
        raise NotAField(f"the Jones-Wenzl criterion needs a field, got {ctx.ring.tag}")


def jw_exists(ctx: ParamContext, n: int) -> bool:
    """Whether every [n r], 0 <= r <= n, is nonzero at delta = a."""
    _require_field(ctx)
    return all(evaluate(quantum_binomial(n, r), ctx.a, ctx.ring) for r in range(n + 1))


def odd_vanishing_applies(ctx: ParamContext, n: int) -> bool:
    """
    Whether n = 2k+1, a = 0 in a field, and no C(k, r) with 0 <= r <= k vanishes there.

    When this holds, Tor and Ext of the trivial module vanish in degrees 1..n-1.
    """
    if not ctx.ring.is_field or n % 2 == 0 or ctx.a:
        return False
    k = (n - 1) // 2
    p = ctx.ring.characteristic
    return all(p == 0 or comb(k, r) % p for r in range(k + 1))


def check_jw(ctx: ParamContext, e: TLElement) -> bool:
    """Whether e lies in 1 + I_n and U_i e = e U_i = 0 for every i."""
    ring = ctx.ring
    if constant_term(e) != ring.one:
        return False
    for i in range(1, e.n):
        u = generator(ctx, e.n, i)
        if multiply(ctx, u, e) or multiply(ctx, e, u):
            return False
    return True


def compute_jw(ctx: ParamContext, n: int) -> TLElement | None:
    """
    Solve U_i (1 + sum c_d d) = 0 over the non-identity diagrams d.

    Returns:
        The projector, or None when the system has no solution over the ring

    Raises:
        InvariantViolation: If a solution fails two-sidedness or idempotency
    """
    ring = ctx.ring
    identity = TLElement.identity(ring, n)
    if n <= 1:
        return identity
    words = enumerate_jones_words(n)
    position = {jones_word_to_diagram(w): k for k, w in enumerate(words)}
    unknowns = [jones_word_to_diagram(w) for w in words if not w.is_identity]
    size = len(words)

    def stacked(x: TLElement) -> dict[int, RingValue]:
        vec = {}
        for i in range(1, n):
            for d, c in multiply(ctx, generator(ctx, n, i), x).items():
                key = (i - 1) * size + position[d]
                vec[key] = vec.get(key, ring.zero) + c
        return {k: c for k, c in vec.items() if c}

    columns = [stacked(TLElement.from_diagram(ring, d)) for d in unknowns]
    M = RingMatrix.from_columns(ring, (n - 1) * size, columns)
    rhs = {k: -c for k, c in stacked(identity).items()}
    solution = solve(M, rhs)
    if solution is None:
        logger.info("No Jones-Wenzl projector for n=%d over %s", n, ctx.describe())
        return None
    jw = identity + TLElement(n, ring, {unknowns[k]: c for k, c in solution.items()})
    if not check_jw(ctx, jw):
        raise InvariantViolation(f"Jones-Wenzl candidate for n={n} is not two-sided")
    if multiply(ctx, jw, jw) != jw:
        raise InvariantViolation(f"Jones-Wenzl candidate for n={n} is not idempotent")
    return jw
