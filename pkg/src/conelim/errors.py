"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for invalid input, 3 for a violated mathematical precondition and 4 for an
internal-consistency fault (a certificate that should hold but does not).
"""


class ConelimError(Exception):
    exit_code = 1

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        return {
            "type": type(self).__name__,
            "message": str(self),
            "exit_code": self.exit_code,
            "details": self.details,
        }


class ValidationError(ConelimError, ValueError):
    exit_code = 2


class ParseError(ValidationError):
    pass


class DivisionByZero(ParseError, ZeroDivisionError):
    pass


class DimensionMismatch(ValidationError):
    pass


class DomainError(ConelimError):
    exit_code = 3


class NotPointed(DomainError):
    pass


class NotSolid(DomainError):
    pass


class TrivialCone(DomainError):
    pass


class EpsilonTooLarge(DomainError):
    pass


class NotSeparable(DomainError):
    pass


class EmptyFeasibleSet(DomainError):
    pass


class NonConflictViolated(DomainError):
    pass


class DilatedConflict(DomainError):
    pass


class RetriesExhausted(DomainError):
    pass


class InternalFault(ConelimError):
    exit_code = 4


class AggregateDegenerate(InternalFault):
    pass


class AuditFailure(InternalFault):
    pass


class DDBlowup(InternalFault):
    """Double description exceeded the ray cap (``CONELIM_MAX_DD_RAYS``)."""
