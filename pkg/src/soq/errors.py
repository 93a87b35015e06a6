"""Exception hierarchy.

Every failure mode has its own class so callers (and the CLI) can tell a
budget problem apart from a mathematical "no".
"""


class SOQError(Exception):
    """Base class for all domain errors raised by this package."""


class DegenerateInput(SOQError, ValueError):
    pass


class FactorizationLimit(SOQError):
    """Trial division could not finish factoring an integer."""


class InvalidPlace(SOQError, ValueError):
    pass


class FieldMismatch(SOQError, ValueError):
    pass


class PIrregular(SOQError):
    """Group order divisible by the field characteristic."""


class NotRepresentable(SOQError):
    pass


class NotIsometric(SOQError):
    pass


class SearchBudgetExceeded(SOQError):
    """A witness exists but was not found below the height budget."""


class NotInGroup(SOQError):
    pass


class OrderMismatch(SOQError):
    pass


class NotEmbeddable(SOQError):
    pass


class ClosureCapExceeded(SOQError):
    pass


class NotInvolution(SOQError):
    pass


class NotKleinFour(SOQError):
    pass


class NotDihedral(SOQError):
    pass


class NotInNormGroup(SOQError):
    pass


class BudgetExceeded(SOQError):
    """Brute-force enumeration refused for a too-large prime."""
