"""Exception hierarchy shared by every module."""


class FSingError(Exception):
    """Base class; the CLI maps any subclass to exit code 1."""

    code = "error"


class BadPrime(FSingError):
    code = "BadPrime"


class MixedRings(FSingError):
    code = "MixedRings"


class DegreeOverflow(FSingError):
    code = "DegreeOverflow"


class ParseError(FSingError):
    code = "ParseError"

    def __init__(self, message, line=None, col=None):
        self.msg = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class UnknownName(FSingError):
    code = "UnknownName"


class ZeroDivisorIdeal(FSingError):
    code = "ZeroDivisorIdeal"


class NotZeroDimensional(FSingError):
    code = "NotZeroDimensional"


class QuotientRingUnsupported(FSingError):
    code = "QuotientRingUnsupported"


class InvalidBasisIndex(FSingError):
    code = "InvalidBasisIndex"


class NotMaximal(FSingError):
    code = "NotMaximal"


class NotContaining(FSingError):
    code = "NotContaining"


class ZeroTestElement(FSingError):
    code = "ZeroTestElement"


class NoTestElementFound(FSingError):
    code = "NoTestElementFound"


class NotPrincipal(FSingError):
    code = "NotPrincipal"


class NotIrreducible(FSingError):
    code = "NotIrreducible"


class NotInMaximal(FSingError):
    code = "NotInMaximal"


class NotFPure(FSingError):
    code = "NotFPure"


class NotMonomial(FSingError):
    code = "NotMonomial"


class ZeroMultiplier(FSingError):
    code = "ZeroMultiplier"


class InvalidMap(FSingError):
    code = "InvalidMap"
