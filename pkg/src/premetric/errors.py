"""Exception hierarchy for the premetric package.

Every domain error raised by the library derives from PremetricError so the
CLI can map them to exit code 1 with a structured payload.
"""

from __future__ import annotations


class PremetricError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def payload(self) -> dict:
        return {"error": self.code, "message": str(self)}


class ConflictingComponent(PremetricError):
    code = "conflicting_component"


class SingularOperator(PremetricError):
    code = "singular_operator"


class SingularJacobian(PremetricError):
    code = "singular_jacobian"


class ComplexUnsupported(PremetricError):
    code = "complex_unsupported"


class Degenerate(PremetricError):
    code = "degenerate_metric"


class NonPositiveParameter(PremetricError):
    code = "non_positive_parameter"


class ZeroCovector(PremetricError):
    code = "zero_covector"


class DegeneratePolynomial(PremetricError):
    code = "degenerate_polynomial"


class NotSkewonFree(PremetricError):
    code = "not_skewon_free"


class Impossible(PremetricError):
    """The input claims properties the case analysis shows are impossible."""

    code = "impossible_case"


class PreconditionFailed(PremetricError):
    code = "precondition_failed"


class NumericallyDegenerate(PremetricError):
    code = "numerically_degenerate"


class RelationViolated(PremetricError):
    code = "relation_violated"

    def __init__(self, relation: str, message: str = ""):
        super().__init__(message or relation)
        self.relation = relation

    def payload(self) -> dict:
        out = super().payload()
        out["relation"] = self.relation
        return out


class VariableMismatch(PremetricError):
    code = "variable_mismatch"


class EmptyIdeal(PremetricError):
    code = "empty_ideal"


class Timeout(PremetricError):
    code = "timeout"
