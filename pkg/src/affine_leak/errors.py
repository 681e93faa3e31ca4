"""Exception hierarchy for affine_leak."""


class AffineLeakError(Exception):
    """Base class for every error raised by this package."""


class EmptyInterval(AffineLeakError, ValueError):
    pass


class InvalidDistribution(AffineLeakError, ValueError):
    pass


class PriorDomainMismatch(AffineLeakError, ValueError):
    pass


class NotCoprime(AffineLeakError, ValueError):
    pass


class ZeroCoefficient(AffineLeakError, ValueError):
    pass


class DomainTooLarge(AffineLeakError):
    """Raised when a brute-force routine would exceed the enumeration cap."""

    def __init__(self, pairs, cap):
        super().__init__(f"{pairs} input pairs exceed the enumeration cap of {cap}")
        self.pairs = pairs
        self.cap = cap


class NonPositive(AffineLeakError, ValueError):
    pass


class CenterOutOfRange(AffineLeakError, ValueError):
    pass


class WeightOutOfRange(AffineLeakError, ValueError):
    pass


class DegenerateSupport(AffineLeakError, ValueError):
    pass


class DistributionSyntaxError(AffineLeakError, ValueError):
    """Malformed distribution file; carries the 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SumNotOne(InvalidDistribution):
    def __init__(self, total):
        self.total = total
        self.deficit = 1 - total
        super().__init__(f"probabilities sum to {total}, deficit {self.deficit}")


class SupportMismatch(PriorDomainMismatch):
    pass


class DuplicateValue(DistributionSyntaxError):
    pass
