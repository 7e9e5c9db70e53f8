from __future__ import annotations


class SatCspError(Exception):
    """Base class for every error raised by satcsp_core."""


class DimacsParseError(SatCspError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class CspFormatError(SatCspError):
    pass


class ModelError(SatCspError):
    """Invalid Cnf / Csp construction."""


class PartialAssignmentError(SatCspError):
    pass


class UnsupportedConstraintError(SatCspError):
    """A non-binary constraint reached a binary-only algorithm."""


class EncodingError(SatCspError):
    pass


class OracleCapError(SatCspError):
    pass


class FamilyTooLargeError(SatCspError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"family has {size} instances, cap is {cap}")


class GeneratorError(SatCspError):
    pass
