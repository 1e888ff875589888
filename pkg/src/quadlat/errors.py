"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`QuadlatError`
so callers (and the command line front end) can separate bad input from bugs.
"""


class QuadlatError(Exception):
    pass


class ResourceBoundExceeded(QuadlatError):
    """An enumeration ran past its configured cap."""


class DegenerateLattice(QuadlatError):
    pass


class OddLattice(QuadlatError):
    pass


class ZeroVector(QuadlatError):
    pass


class IndefiniteLattice(QuadlatError):
    pass


class DefiniteLattice(QuadlatError):
    pass


class CapExceeded(ResourceBoundExceeded):
    pass


class OrderCapExceeded(ResourceBoundExceeded):
    pass


class RankMismatch(QuadlatError):
    pass


class NotTwoElementary(QuadlatError):
    pass


class NotIsotropic(QuadlatError):
    pass


class NotAnIsometry(QuadlatError):
    pass


class NonIntegralReflection(QuadlatError):
    pass


class NotUnimodular(QuadlatError):
    pass


class DiscActionNontrivial(QuadlatError):
    pass


class OddSquare(QuadlatError):
    pass


class MissingU2(QuadlatError):
    pass


class GramMismatch(QuadlatError):
    pass


class UnsupportedType(QuadlatError):
    pass


class UnknownName(QuadlatError):
    pass


class NonIntegralDual(QuadlatError):
    pass


class WrongSquare(QuadlatError):
    pass


class NotPrimitive(QuadlatError):
    pass


class CheckFailed(QuadlatError):
    pass


class ParseError(QuadlatError):
    def __init__(self, offset, expected, text=""):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        self.text = text
        super().__init__(
            f"parse error at offset {offset}: expected one of {', '.join(self.expected)}"
        )


class ConsistencyWarning(UserWarning):
    """Arithmetic succeeded but no lattice with the resulting invariants exists."""
