"""Exception hierarchy shared by the multiset-codes modules."""


class MultisetCodeError(Exception):
    """Base class for all library errors."""
    pass


class ParameterError(MultisetCodeError, ValueError):
    """Raised when arguments violate an operation's preconditions."""
    pass


class AlphabetMismatchError(ParameterError):
    """Raised when two operands are defined over different alphabet sizes."""
    pass


class CardinalityMismatchError(ParameterError):
    """Raised when two operands must share a cardinality but do not."""
    pass


class IndexOutOfRangeError(ParameterError):
    """Raised when a rank or message index falls outside its range."""
    pass


class PatternNotContainedError(ParameterError):
    """Raised when a deletion pattern is not a sub-multiset of the word."""
    pass


class CodeConstructionError(ParameterError):
    """Raised when code parameters are invalid."""
    pass


class BoundNotApplicableError(ParameterError):
    """Raised when a bound is queried outside the regime where it holds."""
    pass


class ResourceLimitError(MultisetCodeError):
    """Raised when an enumeration would exceed its configured cap."""
    pass


class DecodingError(MultisetCodeError):
    """Base class for decoder outcomes that yield no codeword."""
    pass


class TooManyDeletionsError(DecodingError):
    """Raised when the received word lost more symbols than the code corrects."""
    pass


class DecodeFailureError(DecodingError):
    """Raised when no codeword explains the received word."""
    pass
