"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: BudgetError subclasses exit with 3,
every other ToolkitError with 1, and input/schema problems with 2.
"""


class ToolkitError(Exception):
    pass


class BudgetError(ToolkitError):
    pass


# nonarch field layer
class NonSquareResidue(ToolkitError):
    pass


class EvenPrimeUnsupported(ToolkitError):
    pass


class OddValuation(ToolkitError):
    pass


class ZeroPolynomial(ToolkitError):
    pass


# Berkovich disk layer
class ChartMismatch(ToolkitError):
    pass


class SupNormExceedsOne(ToolkitError):
    pass


# rational maps of the line
class DegenerateMap(ToolkitError):
    pass


class DiskNotPreserved(ToolkitError):
    pass


class PoleInDisk(ToolkitError):
    pass


# degree growth
class BudgetExceeded(BudgetError):
    pass


class SingularMatrix(ToolkitError):
    pass


# entropy machinery
class OverlappingCells(ToolkitError):
    pass


class HorizonTooShort(ToolkitError):
    pass


class CompositionNotContained(ToolkitError):
    pass


# finite spectral spaces and rings
class SizeBound(BudgetError):
    pass


class NotAHomomorphism(ToolkitError):
    pass


class NotContinuous(ToolkitError):
    pass


class NotACover(ToolkitError):
    pass


class SearchBudget(BudgetError):
    pass
