"""Exception hierarchy shared by every module of the toolkit."""


class PatternError(Exception):
    """Base class for all data errors raised by patternkit."""


class InvalidItemsetError(PatternError, ValueError):
    pass


class InvalidObjectError(PatternError, ValueError):
    pass


class ParseError(PatternError, ValueError):
    """Malformed input text. ``line`` is 1-based, or None when not line-specific."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SpecError(PatternError, ValueError):
    """Invalid generation or discretization parameters."""


class ThresholdError(PatternError, ValueError):
    pass


class InvalidRuleError(PatternError, ValueError):
    pass


class UndefinedConfidenceError(InvalidRuleError):
    pass


class LatticeError(PatternError):
    pass


class FilterError(PatternError, ValueError):
    pass
