"""
Exception hierarchy shared by every eo_transducer module.

Classes:
    TransducerError: Base exception for all toolkit failures
    InvalidParameterError: A physical parameter violates its invariant
    InvalidProfileError: A tabulated field profile is malformed
    InvalidThresholdError: A readout threshold lies outside the attainable range
    UndefinedBandwidthError: Bandwidth requested at zero peak efficiency
    DivergenceError: Non-finite state met during time integration
    DivisionGuardError: A noise spectrum was evaluated at zero pump strength
    ConfigError: A sweep config could not be parsed or validated
    UsageError: Command-line misuse (unknown figure, bad override)
"""


class TransducerError(Exception):
    """Base exception for all toolkit failures."""


class InvalidParameterError(TransducerError, ValueError):
    """Raised when a physical parameter violates its invariant."""


class InvalidProfileError(InvalidParameterError):
    """Raised when a field profile has too few samples or bad ordering."""


class InvalidThresholdError(InvalidParameterError):
    """Raised when a readout threshold is not below the peak efficiency."""


class UndefinedBandwidthError(TransducerError):
    """Raised when the conversion peak is zero and no FWHM exists."""


class DivergenceError(TransducerError, ArithmeticError):
    """Raised when the integrated state becomes non-finite."""


class DivisionGuardError(TransducerError, ZeroDivisionError):
    """Raised when a noise density is evaluated without pump."""


class ConfigError(TransducerError):
    """
    Raised when a sweep config cannot be parsed or validated.

    Attributes:
        line: 1-based line number of a parse failure, if known
        field: dotted path of the offending field, if known
    """

    def __init__(
        self, message: str, *, line: int | None = None, field: str | None = None
    ) -> None:
        super().__init__(message)
        self.line = line
        self.field = field

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field:
            where.append(f"field '{self.field}'")
        base = super().__str__()
        return f"{base} ({', '.join(where)})" if where else base


class UsageError(TransducerError):
    """Raised on command-line misuse."""
