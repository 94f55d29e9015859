"""
Error hierarchy for mpkcheck.

Exceptions signal misuse of the engine (bad indices, mismatched signatures,
unparsable input). A relation that fails to hold is never an exception: it
is recorded in a VerificationReport.

Codes are grouped by domain:
1xxx configuration, 2xxx algebra, 3xxx presentations, 4xxx K-ledger,
5xxx numeric backend, 6xxx expression language.
"""

from enum import Enum
from typing import Any, Dict, Optional


class ErrorSeverity(Enum):
    """Enum representing error severity levels."""

    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class ErrorCode(Enum):
    """Enum of error codes by domain."""

    # Configuration (1000-1999)
    UNKNOWN_ERROR = 1000
    CONFIGURATION_ERROR = 1001
    UNKNOWN_CHECK = 1002
    SUITE_FILE_INVALID = 1003

    # Algebra (2000-2999)
    INCOMPATIBLE_SLOT = 2000
    SIGNATURE_MISMATCH = 2001
    SHAPE_MISMATCH = 2002
    NOT_A_CIRCLE_SLOT = 2003

    # Presentations (3000-3999)
    MISSING_GENERATOR = 3000
    UNKNOWN_MAP = 3001
    UNSUPPORTED_INDEX = 3002
    INVALID_ASSIGNMENT = 3003

    # K-ledger (4000-4999)
    INDEX_OUT_OF_RANGE = 4000

    # Numeric backend (5000-5999)
    SPHERE_BLOCK_NOT_LIFTED = 5000
    INVALID_TRUNCATION = 5001

    # Expression language (6000-6999)
    PARSE_ERROR = 6000


class BaseError(Exception):
    """Base error class for all mpkcheck exceptions."""

    default_code: ErrorCode = ErrorCode.UNKNOWN_ERROR

    def __init__(
        self,
        message: str,
        code: Optional[ErrorCode] = None,
        details: Optional[Dict[str, Any]] = None,
        severity: ErrorSeverity = ErrorSeverity.ERROR,
        cause: Optional[Exception] = None,
    ):
        """
        Args:
            message: Technical error message
            code: Error code; the class default when omitted
            details: Structured context (indices, signatures, offending token)
            severity: Error severity level
            cause: Optional exception that caused this error
        """
        self.code = code or self.default_code
        self.message = message
        self.details = details or {}
        self.severity = severity
        self.cause = cause
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert error to a dictionary for serialization."""
        result: Dict[str, Any] = {
            "code": self.code.value,
            "code_name": self.code.name,
            "error": type(self).__name__,
            "message": self.message,
            "severity": self.severity.value,
        }
        if self.details:
            result["details"] = self.details
        if self.cause:
            result["cause"] = str(self.cause)
        return result


# Domain-specific error classes

class ConfigError(BaseError):
    """Invalid suite configuration, unknown check names, broken suite file."""

    default_code = ErrorCode.CONFIGURATION_ERROR


class AlgebraError(BaseError):
    """Misuse of the Toeplitz / tensor algebra layer."""


class IncompatibleSlot(AlgebraError):
    default_code = ErrorCode.INCOMPATIBLE_SLOT


class SignatureMismatch(AlgebraError):
    default_code = ErrorCode.SIGNATURE_MISMATCH


class ShapeMismatch(AlgebraError):
    default_code = ErrorCode.SHAPE_MISMATCH


class NotACircleSlot(AlgebraError):
    default_code = ErrorCode.NOT_A_CIRCLE_SLOT


class PresentationError(BaseError):
    """Errors building or applying generator assignments."""


class MissingGenerator(PresentationError):
    default_code = ErrorCode.MISSING_GENERATOR


class UnknownMap(PresentationError):
    default_code = ErrorCode.UNKNOWN_MAP


class UnsupportedIndex(PresentationError):
    default_code = ErrorCode.UNSUPPORTED_INDEX


class InvalidAssignment(PresentationError):
    """A named map whose images violate the relations of its domain."""

    default_code = ErrorCode.INVALID_ASSIGNMENT


class LedgerError(BaseError):
    """Errors of the K-theory ledger."""


class IndexOutOfRange(LedgerError):
    default_code = ErrorCode.INDEX_OUT_OF_RANGE


class NumericError(BaseError):
    """Errors of the truncated matrix backend."""


class SphereBlockNotLifted(NumericError):
    default_code = ErrorCode.SPHERE_BLOCK_NOT_LIFTED


class InvalidTruncation(NumericError):
    default_code = ErrorCode.INVALID_TRUNCATION


class ParseError(BaseError):
    """Expression text that does not match the grammar."""

    default_code = ErrorCode.PARSE_ERROR

    def __init__(self, message: str, line: int, column: int, expected: Optional[set] = None, **kwargs: Any):
        self.line = line
        self.column = column
        self.expected = sorted(expected or ())
        details = {"line": line, "column": column, "expected": self.expected}
        details.update(kwargs.pop("details", {}) or {})
        super().__init__(f"{message} at line {line}, column {column}", details=details, **kwargs)


def exit_code_for(error: BaseException) -> int:
    """Process exit status for an error escaping the CLI."""
    return 2 if isinstance(error, BaseError) else 1
