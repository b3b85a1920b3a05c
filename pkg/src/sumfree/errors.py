"""Exception types shared across the package."""


class SumFreeError(Exception):
    """Base class for all errors raised by this package."""


class NotPrimeError(SumFreeError):
    """The requested characteristic is not a prime number."""


class ReducibleError(SumFreeError):
    """A supplied modulus polynomial is not irreducible."""


class DegreeMismatchError(SumFreeError):
    """A polynomial does not have the required degree or is not monic."""


class DivisionByZeroError(SumFreeError, ZeroDivisionError):
    """Multiplicative inverse of zero requested (use inv0 for the 0 -> 0 map)."""


class CtxMismatchError(SumFreeError):
    """Operands belong to different field contexts."""


class NotADivisorError(SumFreeError):
    """A subfield degree that does not divide the extension degree."""


class EmptyBasisError(SumFreeError):
    """A basis with no vectors where at least one is required."""


class DependentBasisError(SumFreeError):
    """Vectors that must be linearly independent are not."""


class YInSpanError(SumFreeError):
    """The shift point lies inside the spanned subspace."""


class RequiresChar2Error(SumFreeError):
    """Operation is only defined over fields of characteristic 2."""


class BudgetExceededError(SumFreeError):
    """An exhaustive computation would exceed the configured operation budget."""


class NotAWitnessError(SumFreeError):
    """A claimed witness basis fails re-verification."""


class NoRoomError(SumFreeError):
    """Tower lift requested but the subfield span is already full."""


class PreconditionSumNonzeroError(SumFreeError):
    """A construction requires a zero-sum input space but the sum is nonzero."""


class DimensionProductError(SumFreeError):
    """Composition requires the dimension product to stay below the degree."""


class ParseError(SumFreeError, ValueError):
    """Malformed element, polynomial, or record text."""
