"""Exception hierarchy shared by all blockset modules."""


class BlocksetError(Exception):
    """Base class for all errors raised by this package."""


class NotAPrimePower(BlocksetError):
    """The requested field order is not a prime power."""


class UnsupportedSize(BlocksetError):
    """The requested field order exceeds the supported table size."""


class DimensionMismatch(BlocksetError):
    """Matrix/vector shapes are incompatible."""


class UniverseTooLarge(BlocksetError):
    """The subspace universe exceeds the enumeration budget."""


class CodeTooLarge(BlocksetError):
    """Codeword (or tuple) enumeration exceeds the budget."""


class WrongField(BlocksetError):
    """Operation requires a specific field order."""


class TooManySymbols(BlocksetError):
    """Perfect-hash tuple size exceeds the alphabet size."""


class DegenerateCode(BlocksetError):
    """The code has an identically-zero coordinate."""


class NonSpanningPoints(BlocksetError):
    """A point set that must span the ambient space does not."""


class NotSymmetric(BlocksetError):
    """The point set is not of the form {0} | B | -B."""


class NotBlocking(BlocksetError):
    """The point set fails the required blocking property."""


class RankDeficient(BlocksetError):
    """A matrix that must have full rank does not."""


class GraphTooLarge(BlocksetError):
    """Graph exceeds the exhaustive/branch-and-bound size limit."""


class RetriesExhausted(BlocksetError):
    """Randomized construction failed to verify within the retry cap."""


class UnsupportedStrategy(BlocksetError):
    """The requested construction strategy has no size formula and no user-supplied size."""


class OutOfDomain(BlocksetError):
    """Argument outside the mathematical domain of the function."""


class BracketFailure(BlocksetError):
    """Root bracketing failed."""


class KTooLarge(BlocksetError):
    """Exact-search dimension outside the supported range."""


class TimeLimitExceeded(BlocksetError):
    """Search ran out of time; carries the best bound bracket found so far.

    Attributes:
        lower: best proven lower bound on the optimum.
        upper: size of the best cover found (None if none found).
        incumbent: the best cover found so far, as a list of set indices.
    """

    def __init__(self, message, lower=None, upper=None, incumbent=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.incumbent = incumbent


class InsufficientData(BlocksetError):
    """Required solved values are not available."""
