"""Exception types shared across the package."""


class BFreeError(Exception):
    """Base class for all package-specific errors."""


class RankDeficientError(BFreeError, ValueError):
    """Generators span a subgroup of infinite index (rank below the ambient dimension)."""


class TooLargeError(BFreeError, ValueError):
    """An enumeration or window exceeds the configured size limit."""


class ZeroElementError(BFreeError, ValueError):
    """A nonzero ring element was required."""


class NotCoprimeError(BFreeError, ValueError):
    """Ideals or lattices were required to be coprime but are not."""


class NotPairwiseCoprimeError(NotCoprimeError):
    """An input list failed the pairwise-coprimality precondition."""


class NotEnoughIdealsError(BFreeError, ValueError):
    """Fewer ideals than pattern cells were supplied."""


class NotAZeroWindowError(BFreeError, ValueError):
    """The translate does not place the whole pattern inside the covered set."""


class UnknownPresetError(BFreeError, ValueError):
    """No preset family with the requested name."""


class NotRectangularError(BFreeError, ValueError):
    """The operation requires rectangular (diagonal) family entries."""


class InvalidCoverError(BFreeError, ValueError):
    """Cover list rejected: covers must be proper and must not exhaust the whole group."""


class InconsistencyError(BFreeError, RuntimeError):
    """Exact condition values contradict a proved equivalence; indicates a bug."""


class FactorizationError(BFreeError, RuntimeError):
    """Exact factorization gave up on a value too large to handle honestly."""


class FamilyParseError(BFreeError, ValueError):
    """A family description file could not be parsed."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
