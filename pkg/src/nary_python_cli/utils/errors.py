"""Exception hierarchy shared by the algebra utilities and the commands.

Every exception carries the exit code the CLI uses when it surfaces:
1 for a failed property or precondition, 2 for malformed input and
3 for an inconclusive search.
"""


class NaryError(Exception):
    """Base class for all errors raised by nary."""

    exit_code = 1


class InputError(NaryError):
    """The input is malformed or violates an operation's domain."""

    exit_code = 2


class ParseError(InputError):
    """A structure, witness or Laurent expression could not be parsed."""

    def __init__(self, message: str, line: int = 1, column: int = 1, source: str = ""):
        self.line = line
        self.column = column
        self.source = source
        self.reason = message
        location = f"{source}:" if source else ""
        super().__init__(f"{location}{line}:{column}: {message}")


class DimensionMismatch(InputError):
    pass


class WeightMismatch(InputError):
    pass


class BadPartition(InputError):
    pass


class BadK(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class InfeasibleCounts(InputError):
    pass


class OrderTooLarge(InputError):
    pass


class UnknownProperty(InputError):
    pass


class UnsupportedArity(InputError):
    pass


class NegativeExponent(InputError):
    pass


class NoLimit(InputError):
    """A family constant has a pole at t = 0."""


class NotABasisFamily(InputError):
    """The determinant of a parameterized basis is not a nonzero monomial."""


class SingularMatrix(InputError):
    pass


class ZeroTuple(InputError):
    pass


class ZeroStructure(InputError):
    """A nonzero structure was required."""


class NotKSubalgebra(NaryError):
    pass


class Subalgebraic(NaryError):
    """A non-subalgebraic structure was required."""


class NotFormAlgebra(NaryError):
    """A structure of a nonzero n-linear form was required."""


class NotSubalgebraic(NaryError):
    """A subalgebraic structure was required."""


class ScheduleInvalid(NaryError):
    pass


class InvariantBroken(NaryError):
    """An internal postcondition failed; this always indicates a bug."""


class SearchExhausted(NaryError):
    """A seeded basis search consumed its retry budget."""

    exit_code = 3


class Inconclusive(NaryError):
    exit_code = 3
