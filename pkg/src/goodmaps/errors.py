"""Exception types shared across the package."""


class GoodmapError(Exception):
    pass


class SizeCapError(GoodmapError):
    """A finite space exceeds the configured point cap for exhaustive work."""


class MisuseError(GoodmapError, ValueError):
    """A caller-side precondition does not hold."""


class ResourceLimitError(GoodmapError):
    """A Groebner or image computation crossed a configured guard."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])


class OracleDisagreement(GoodmapError, AssertionError):
    """Two independent deciders returned different answers."""


class TheoremViolation(GoodmapError, AssertionError):
    """A certificate that must exist by theory could not be produced."""


class ParseError(GoodmapError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif column is not None:
            where = f" (column {column})"
        super().__init__(message + where)
