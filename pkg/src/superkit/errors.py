"""Exception hierarchy shared by every superkit module."""

from __future__ import annotations


class SuperkitError(Exception):
    """Base class for all library errors."""


class FieldMismatch(SuperkitError, ValueError):
    pass


class DivisionByZero(SuperkitError, ZeroDivisionError):
    pass


class AmbientMismatch(SuperkitError, ValueError):
    pass


class ShapeError(SuperkitError, ValueError):
    pass


class AlgebraMismatch(SuperkitError, ValueError):
    pass


class MixedParity(SuperkitError, ValueError):
    """An operation needed a parity-pure (homogeneous) input."""


class NotClosed(SuperkitError, ValueError):
    pass


class NotGraded(SuperkitError, ValueError):
    pass


class NotInDerived(SuperkitError, ValueError):
    pass


class CenterNotZero(SuperkitError, ValueError):
    pass


class HypothesisViolated(SuperkitError, ValueError):
    def __init__(self, failed: list[str], message: str | None = None):
        self.failed = list(failed)
        super().__init__(message or "hypotheses not satisfied: " + ", ".join(self.failed))


class NotTripleDerivation(SuperkitError, ValueError):
    pass


class NotTripleHom(SuperkitError, ValueError):
    def __init__(self, witness: tuple[int, int, int], message: str | None = None):
        self.witness = witness
        super().__init__(message or f"triple homomorphism identity fails at basis triple {witness}")


class OddMapUnsupported(SuperkitError, ValueError):
    pass


class LemmaViolation(SuperkitError, AssertionError):
    """A structural identity that must hold under the stated hypotheses did not."""

    def __init__(self, check: str, message: str | None = None):
        self.check = check
        super().__init__(message or f"check failed: {check}")


class ParseError(SuperkitError, ValueError):
    pass


class SkewConflict(ParseError):
    def __init__(self, pair: tuple[str, str], message: str | None = None):
        self.pair = pair
        super().__init__(message or f"brackets [{pair[0]},{pair[1]}] and [{pair[1]},{pair[0]}] violate graded skew-symmetry")


class AxiomViolation(ParseError):
    def __init__(self, report, message: str | None = None):
        self.report = report
        super().__init__(message or f"structure constants violate the superalgebra axioms: {report.summary()}")


class UnknownName(SuperkitError, KeyError):
    pass


class BadParams(SuperkitError, ValueError):
    pass


class DependentGenerators(SuperkitError, ValueError):
    pass
