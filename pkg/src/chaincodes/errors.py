"""Exception types shared across the package."""


class ChainCodesError(Exception):
    """Base class for all library errors."""


# ring construction / element level

class RejectedModulus(ChainCodesError):
    """Galois ring modulus whose reduction mod p is reducible."""


class InvalidConvention(ChainCodesError):
    """Representative convention not available for this ring."""


class MixedRings(ChainCodesError):
    """Operands belong to different rings."""


class NotAUnit(ChainCodesError):
    """Inversion requested for a non-unit."""


class DigitNotInT(ChainCodesError):
    """A digit passed to compose() is not in the representative set."""


# matrix level

class NotSquare(ChainCodesError):
    """Square matrix required."""


class ZeroMatrix(ChainCodesError):
    """Standard forms are undefined for the all-zero matrix."""


class MethodPreconditionViolated(ChainCodesError):
    """Fast-path method requested outside its precondition."""


# codes

class InvalidParams(ChainCodesError):
    """Numeric parameters out of range for a bound or construction."""


class BudgetExceeded(ChainCodesError):
    """An exhaustive enumeration would exceed the configured budget."""


class ZeroRow(ChainCodesError):
    """Operation undefined on matrices with zero rows."""


class NotReduced(ChainCodesError):
    """A reduced encoder is required."""


class NotDelayFree(ChainCodesError):
    """A delay-free encoder is required."""


class NuNotDividingK(ChainCodesError):
    """Formula only available when the nilpotency index divides k."""


class PreconditionViolated(ChainCodesError):
    """A hypothesis of the requested characterization fails."""


class UnequalRowDegrees(ChainCodesError):
    """Encoder reversal needs all row degrees equal."""


# constructions

class DependentRows(ChainCodesError):
    """Rows were required to be linearly independent over the ring."""


class BadCounts(ChainCodesError):
    """Layer row counts must be nondecreasing and within range."""


class SizeMismatch(ChainCodesError):
    """Index sets or matrix dimensions do not match."""


class NotSuperregular(ChainCodesError):
    """The supplied Toeplitz matrix is not superregular."""


class InconsistentBlocks(ChainCodesError):
    """Extracted blocks are not Toeplitz-consistent."""


class CodeLoadError(ChainCodesError):
    """A serialized code descriptor failed validation on load."""
