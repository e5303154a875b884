"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`NormRatioError`.
Invalid-input errors additionally derive from :class:`ValueError`; numerical
failures derive from :class:`ArithmeticError`, which lets the CLI map the two
families onto different exit codes.
"""


class NormRatioError(Exception):
    """Base class for all package errors."""


class ParameterError(NormRatioError, ValueError):
    """Invalid distribution parameters."""


class ZeroFactors(ParameterError):
    pass


class LengthMismatch(ParameterError):
    pass


class NonPositiveSigma(ParameterError):
    pass


class NonFiniteSigma(ParameterError):
    pass


class DomainError(NormRatioError, ValueError):
    """Argument outside the domain of a function."""


class PoleInput(DomainError):
    pass


class ParameterPole(DomainError):
    pass


class ZeroInput(DomainError):
    pass


class NonFiniteInput(DomainError):
    pass


class OutOfRangeP(DomainError):
    pass


class CaseMismatch(NormRatioError, ValueError):
    """A closed-form case was asked for an operation or (M, N) it does not cover."""


class SpecUnsupported(NormRatioError, ValueError):
    """Meijer G parameters outside the supported half-integer family."""


class MomentUndefined(NormRatioError, ArithmeticError):
    """The requested absolute moment is infinite."""


class NumericalFailure(NormRatioError, ArithmeticError):
    """A numerical procedure did not reach its tolerance."""


class ContourFailure(NumericalFailure):
    pass


class ConvergenceFailure(NumericalFailure):
    pass


class QuadratureFailure(NumericalFailure):
    pass


class MethodUnsupported(NormRatioError, ValueError):
    """The requested evaluation method does not apply to this operation."""
