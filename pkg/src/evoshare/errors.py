"""Exception hierarchy shared by every evoshare module."""


class EvoshareError(Exception):
    """Base class for all library errors."""


# ring arithmetic

class ModulusMismatch(EvoshareError, ValueError):
    pass


class ZeroPolynomial(EvoshareError, ValueError):
    pass


class NotDivisible(EvoshareError, ValueError):
    pass


class TruncationUnderflow(EvoshareError, ValueError):
    pass


class TruncationLimitExceeded(EvoshareError, ValueError):
    pass


class NonUnit(EvoshareError, ValueError):
    pass


class InconsistentSystem(EvoshareError, ValueError):
    pass


class DegreeBoundViolated(EvoshareError, ValueError):
    pass


# prefix codes

class OutOfDomain(EvoshareError, ValueError):
    pass


class Malformed(EvoshareError, ValueError):
    pass


class Truncated(EvoshareError, ValueError):
    pass


class SymbolOutOfRange(EvoshareError, ValueError):
    pass


class NotPrefixFree(EvoshareError, ValueError):
    pass


# scheme

class ParamMismatch(EvoshareError, ValueError):
    pass


class DuplicateParticipant(EvoshareError, ValueError):
    pass


class CodecMiss(EvoshareError, ValueError):
    pass


class InconsistentShares(EvoshareError, ValueError):
    pass


class ShareCountError(EvoshareError, ValueError):
    pass


class NotEnoughShares(ShareCountError):
    pass


class TooManyShares(ShareCountError):
    pass


class InternalInvariantViolation(EvoshareError, RuntimeError):
    """Raised when a proved inequality fails at runtime (broken codec)."""


class MalformedRecord(EvoshareError, ValueError):
    pass


class HeaderMismatch(EvoshareError, ValueError):
    pass


# secrecy oracle

class BudgetExceeded(EvoshareError, ValueError):
    def __init__(self, p: int, exponent: int, budget: int):
        self.p = p
        self.exponent = exponent
        self.budget = budget
        super().__init__(
            f"enumeration needs {p}^{exponent} states, budget is {budget}"
        )


class DegenerateCodewords(EvoshareError, ValueError):
    pass
