"""Exception types shared across the package."""


class HyperfactorError(Exception):
    """Base class for all errors raised by this package."""


class NotInvertibleError(HyperfactorError, ValueError):
    """``a`` has no inverse modulo ``m``; ``gcd`` holds the common factor."""

    def __init__(self, a, m, gcd):
        super().__init__(f"{a} is not invertible modulo {m} (gcd {gcd})")
        self.a = a
        self.m = m
        self.gcd = gcd


class CommonFactorError(HyperfactorError, ValueError):
    """Two quantities that must be coprime share ``factor``."""

    def __init__(self, factor, message=None):
        super().__init__(message or f"arguments share the factor {factor}")
        self.factor = factor


class BudgetExceededError(HyperfactorError, ValueError):
    """An enumeration would exceed its configured size budget."""


class SearchExhausted(HyperfactorError):
    """A factor search finished without producing a proper divisor."""

    def __init__(self, message, square_tests=0, modulus=None):
        super().__init__(message)
        self.square_tests = square_tests
        self.modulus = modulus


class LambdaTooSmall(SearchExhausted):
    """Every candidate below the search bound failed the square test."""


class LikelyPrime(SearchExhausted):
    """The auto search passed the largest possible offset bound."""


class InstanceFormatError(HyperfactorError, ValueError):
    """A serialized MCSS instance is malformed; ``location`` points at the culprit."""

    def __init__(self, message, location=None):
        where = f" at {location}" if location is not None else ""
        super().__init__(f"{message}{where}")
        self.location = location
