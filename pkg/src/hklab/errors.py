"""Exception hierarchy shared by every module."""


class HKLabError(Exception):
    """Base class for all library errors."""


class InputError(HKLabError):
    """Input failed validation (maps to CLI exit code 4)."""


class NumericalFailure(HKLabError):
    """A numerical procedure did not reach its target (CLI exit code 3)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NonSquare(InputError):
    pass


class NotRealSpectrum(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class SizeMismatch(InputError):
    pass


class WrongAlgebra(InputError):
    pass


class UnsupportedForm(InputError):
    pass


class SingularGauge(InputError):
    pass


class RankAmbiguous(NumericalFailure):
    pass


class TemplateResidual(NumericalFailure):
    pass


class IllConditionedSimilarity(NumericalFailure):
    pass


class BalanceFailure(NumericalFailure):
    pass


class MaxIterExceeded(BalanceFailure):
    pass


class DivergingFlow(BalanceFailure):
    pass


class CorrectorStall(NumericalFailure):
    pass


class StepFloorReached(NumericalFailure):
    def __init__(self, message, report=None, path=None):
        super().__init__(message, report)
        self.path = path
