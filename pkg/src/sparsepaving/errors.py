"""Exception types shared across the package."""


class PavingError(Exception):
    """Base class for all package-specific errors."""


class NotStableError(PavingError, ValueError):
    """A family of r-sets contains two members meeting in r-1 elements."""


class NoBasisError(PavingError, ValueError):
    """Every r-subset of the ground set was declared a non-basis."""


class BadCardinalityError(PavingError, ValueError):
    """A subset has the wrong number of elements for the operation."""


class MismatchedAmbientError(PavingError, ValueError):
    """Two subsets live over different ground sets."""


class BudgetExceededError(PavingError, RuntimeError):
    """A search or enumeration would exceed its configured budget."""


class DependentContractionSetError(PavingError, ValueError):
    """The set chosen for contraction is dependent in the matroid."""


class RankDeficientError(PavingError, ValueError):
    """A restriction leaves no independent set of full rank."""


class NotAFortError(PavingError, ValueError):
    """The given subset is not a fort of the matroid."""


class UnknownTargetError(PavingError, ValueError):
    """A census target string does not match any known pattern."""


class MatroidFileError(PavingError, ValueError):
    """A matroid description file is malformed."""
