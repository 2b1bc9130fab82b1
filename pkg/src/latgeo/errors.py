"""Exception hierarchy shared by every module."""


class LatgeoError(Exception):
    """Base class; ``code`` is the machine-readable name used by the CLI."""

    code = "Error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        out = {"error": self.code, "message": str(self)}
        out.update(self.details)
        return out


class LowerDimensional(LatgeoError):
    code = "LowerDimensional"


class Unbounded(LatgeoError):
    code = "Unbounded"


class Empty(LatgeoError):
    code = "Empty"


class BudgetExceeded(LatgeoError):
    code = "BudgetExceeded"


class ZeroDirection(LatgeoError):
    code = "ZeroDirection"


class IndependenceViolation(LatgeoError):
    code = "IndependenceViolation"


class NotFound(LatgeoError):
    """An honest negative: a sufficient condition failed, not a computation error."""

    code = "NotFound"


class NonLatticePolytope(LatgeoError):
    code = "NonLatticePolytope"


class NotDelzant(LatgeoError):
    code = "NotDelzant"


class WrongDimension(LatgeoError):
    code = "WrongDimension"


class ParameterOutOfRange(LatgeoError):
    code = "ParameterOutOfRange"


class SchemaError(LatgeoError):
    code = "SchemaError"


class VerificationFailed(LatgeoError):
    code = "VerificationFailed"
