"""
Exception hierarchy for tlhom.

Usage errors are ValueErrors, internal invariant failures are ArithmeticErrors.
The CLI maps each family to an exit code (see ``exit_code_for``).
"""


class TLHomError(Exception):
    """Base class for every error raised by tlhom."""


# Usage errors (exit code 1)

class UsageError(TLHomError, ValueError):
    """Bad input supplied by the caller."""


class ParseError(UsageError):
    """A ring tag, word or file could not be parsed."""


class NonUnit(UsageError):
    """An element that must be invertible is not."""


class BadPrime(UsageError):
    """A prime field was requested with a non-prime modulus."""


class MissingUnit(UsageError):
    """The operation needs v (and so lambda, mu) but the context has only a."""


class IndexOutOfRange(UsageError):
    """A generator or diagram index lies outside 1..n-1."""


class SizeMismatch(UsageError):
    """Operands live in different TL_n."""


class BadRange(UsageError):
    """Parameters n, m, k or L outside their admissible range."""


class NonInvertibleA(UsageError):
    """The complex C(m) needs a to be a unit."""


class NotAField(UsageError):
    """The operation is only defined over a field."""


# Infeasible configurations (exit code 2)

class InfeasibleError(TLHomError):
    """The request is valid but cannot be carried out in this configuration."""


class UnsupportedRing(InfeasibleError, ValueError):
    """The coefficient ring is not supported for this computation."""


class DimensionBudgetExceeded(InfeasibleError):
    """A resolution stage would exceed the configured dimension budget."""

    def __init__(self, stage: int, dimension: int, budget: int):
        self.stage = stage
        self.dimension = dimension
        self.budget = budget
        super().__init__(
            f"resolution stage {stage} needs R-dimension {dimension}, budget is {budget}"
        )


# Internal invariant failures (exit code 3)

class InvariantViolation(TLHomError, ArithmeticError):
    """An internal consistency check failed."""


class NotWellDefined(InvariantViolation):
    """A right-multiplication map does not descend to the induced modules."""


class NotClosed(InvariantViolation):
    """A label set is not closed under the differential."""


class NotInducedComplex(InvariantViolation):
    """The complex carries no induced-module multipliers."""


def exit_code_for(exc: BaseException) -> int:
    """Return the CLI exit code for an exception."""
    if isinstance(exc, InvariantViolation):
        return 3
    if isinstance(exc, InfeasibleError):
        return 2
    return 1
