"""Exception types raised across the package."""


class SemigroupError(Exception):
    """Base class for every error raised here."""


class EmptyGenerators(SemigroupError, ValueError):
    pass


class InfiniteGaps(SemigroupError, ValueError):
    """Generators with gcd > 1 leave infinitely many gaps."""


class NotASemigroup(SemigroupError, ValueError):
    def __init__(self, witness, message=None):
        self.witness = tuple(witness)
        s, t = self.witness
        super().__init__(message or f"{s} + {t} = {s + t} is a gap but {s} and {t} are not")


class CapExceeded(SemigroupError, ValueError):
    pass


class DegenerateInput(SemigroupError, ValueError):
    pass


class IdentityFailed(SemigroupError, AssertionError):
    pass


class UnknownCase(SemigroupError, KeyError):
    pass


class OrderTooSmall(SemigroupError, ValueError):
    pass


class OutOfRange(SemigroupError, IndexError):
    pass


class NotAGap(SemigroupError, ValueError):
    pass


class LowerTermsNonzero(SemigroupError, ValueError):
    def __init__(self, exponent, coefficient):
        self.exponent = exponent
        self.coefficient = coefficient
        super().__init__(f"coefficient of t^{exponent} does not vanish: {coefficient}")


class ValuationMismatch(SemigroupError, ValueError):
    pass


class NotSpanning(SemigroupError, RuntimeError):
    pass


class NoConductor(SemigroupError, ValueError):
    pass
