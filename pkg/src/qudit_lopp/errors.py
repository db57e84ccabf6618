"""Exception hierarchy shared by all modules."""


class QuditError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(QuditError):
    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{message} at {path}" if path else message)


class ArityMismatch(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class MissingAngle(QuditError):
    pass


class DimensionCap(QuditError):
    pass


class ModeCountNotPower(QuditError):
    pass


class OffsetOutOfRange(QuditError):
    pass


class InvalidWord(QuditError):
    pass


class SideConditionViolated(QuditError):
    pass


class NotRotation(QuditError):
    pass


class NotUnitary(QuditError):
    pass


class DimMismatch(QuditError):
    pass


class CircuitSyntaxError(QuditError):
    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")
