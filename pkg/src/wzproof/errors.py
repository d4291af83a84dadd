"""Exception types shared across the package."""


class WZError(Exception):
    """Base class for every error raised by wzproof."""


class BothZero(WZError, ValueError):
    pass


class ZeroDenominator(WZError, ZeroDivisionError):
    pass


class DivisionByZero(WZError, ZeroDivisionError):
    pass


class PoleHit(WZError, ZeroDivisionError):
    """A substitution or evaluation made a denominator vanish."""


class IncompatibleShifts(WZError, ValueError):
    pass


class BaseNotParameterOnly(WZError, ValueError):
    pass


class DegenerateTerm(WZError, ValueError):
    """A shift quotient of a hypergeometric term is identically zero."""


class PathPole(WZError, ZeroDivisionError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class XPole(WZError, ZeroDivisionError):
    pass


class NotWZPair(WZError, ValueError):
    pass


class NoCertificate(WZError, LookupError):
    pass


class ParseError(WZError, ValueError):
    """Malformed term or certificate text.

    ``line`` and ``col`` are 1-based; ``expected`` lists the token kinds the
    parser would have accepted at that position.
    """

    def __init__(self, message, line=1, col=1, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        self.message = message
        detail = f"{message} at line {line}, column {col}"
        if self.expected:
            detail += f" (expected {', '.join(self.expected)})"
        super().__init__(detail)


class UnsupportedShift(ParseError):
    pass


class NonAffineExponent(ParseError):
    pass
