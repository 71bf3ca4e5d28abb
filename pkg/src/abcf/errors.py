"""Exception hierarchy.

Every error raised by the library derives from :class:`ABCFError` and carries a
short ``code`` string that the command line tool prints and that tests match on.
"""


class ABCFError(Exception):
    code = "error"


class InvalidDenominator(ABCFError, ZeroDivisionError):
    code = "invalid-denominator"


class UnsupportedField(ABCFError):
    code = "unsupported-field"


class ParseError(ABCFError, ValueError):
    code = "parse-error"


class InvalidParameters(ABCFError, ValueError):
    code = "invalid-parameters"


class UndefinedFloor(ABCFError):
    code = "undefined-floor"


class DomainError(ABCFError, ValueError):
    code = "domain-error"


class DigitUnderflow(ABCFError):
    code = "digit-underflow"


class NonconvergentSequence(ABCFError):
    code = "nonconvergent-sequence"


class DegenerateGeodesic(ABCFError):
    code = "degenerate-geodesic"


class FinitenessUndetected(ABCFError):
    code = "finiteness-undetected"


class CaseMismatch(ABCFError):
    code = "case-mismatch"


class UnsupportedParameters(ABCFError):
    """No exact attractor is known for these parameters; use the simulation oracle."""

    code = "unsupported"


class ExpansionExhausted(ABCFError):
    code = "expansion-exhausted"


class ReductionFailed(ABCFError):
    code = "reduction-failed"


class InversionFailed(ABCFError):
    code = "inversion-failed"


class AmbiguousBoundary(ABCFError):
    code = "ambiguous-boundary"


class NotReduced(ABCFError):
    code = "not-reduced"


class FormulaDomainError(ABCFError):
    code = "formula-domain-error"


class InconsistentDomain(ABCFError):
    code = "inconsistent-domain"


class NotMarkov(ABCFError):
    code = "not-markov"


class MalformedSequence(ABCFError, ValueError):
    code = "malformed-sequence"


class SingularRectangle(ABCFError):
    code = "singular-rectangle"


class InfiniteMeasure(ABCFError):
    code = "infinite-measure"


class UnsupportedCase(ABCFError):
    code = "unsupported-case"


class IllConditionedPoint(ABCFError):
    code = "ill-conditioned-point"


class RationalInput(ABCFError):
    code = "rational-input"


class UseIterateCheck(ABCFError):
    code = "use-iterate-check"


class NoDual(ABCFError):
    code = "no-dual"
