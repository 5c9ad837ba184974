"""Exception hierarchy shared by all bistsim modules."""


class BistError(Exception):
    """Base class for domain errors raised by bistsim."""


class PolyParseError(BistError, ValueError):
    def __init__(self, message, text="", offset=None):
        self.text = text
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset} in {text!r})"
        super().__init__(message)


class PolyDomainError(BistError, ZeroDivisionError):
    """Division or reduction by the zero polynomial."""


class DegreeError(BistError, ValueError):
    """Polynomial degree outside the supported range for an operation."""


class InvalidPolynomialError(BistError, ValueError):
    """Polynomial violates the characteristic-polynomial constraint c_0 = c_n = 1."""


class InvalidSeedError(BistError, ValueError):
    pass


class DimensionError(BistError, ValueError):
    pass


class NetlistError(BistError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FaultError(BistError, ValueError):
    pass


class ReportError(BistError):
    pass
