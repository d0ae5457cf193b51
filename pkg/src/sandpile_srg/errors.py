"""Exception hierarchy.

Every error raised by the library derives from :class:`SandpileError`, which is
itself a :class:`ValueError` so callers that only care about bad input can catch
that.
"""


class SandpileError(ValueError):
    pass


# parameter arithmetic

class InvalidParameters(SandpileError):
    pass


class NonIntegralMultiplicity(SandpileError):
    pass


class ConferenceOddity(SandpileError):
    pass


class NonIntegralOrder(SandpileError):
    pass


class ComplementDegenerate(SandpileError):
    pass


# integer linear algebra

class NotPrime(SandpileError):
    pass


class CapExceeded(SandpileError):
    def __init__(self, p, cap):
        super().__init__(
            f"an invariant factor has {p}-valuation above cap={cap}; raise the cap"
        )
        self.p = p
        self.cap = cap


class OrderTooLarge(SandpileError):
    pass


# groups

class Disconnected(SandpileError):
    pass


class NotLaplacian(SandpileError):
    pass


# predictor

class ConferenceGraph(SandpileError):
    pass


class HypothesisViolation(SandpileError):
    pass


class InconsistentParameters(SandpileError):
    pass


class MuDivisibilityContradiction(SandpileError):
    pass


class E0OutOfRange(SandpileError):
    pass


# graphs and formats

class BadOrder(SandpileError):
    pass


class ParseError(SandpileError):
    """Malformed input. ``line`` and ``pos`` are 1-based when known."""

    def __init__(self, message, line=None, pos=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if pos is not None:
            where.append(f"position {pos}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.pos = pos


class AsymmetricMatrix(ParseError):
    pass


class NonBinaryEntry(ParseError):
    pass
