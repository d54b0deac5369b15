"""Exception hierarchy shared by the library and the CLI."""


class LambdaMapError(ValueError):
    """Base class for every user-facing error (bad term, bad map, bad flag)."""


class TermSyntaxError(LambdaMapError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class LinearityError(LambdaMapError):
    pass


class VariableUsedTwiceError(LinearityError):
    pass


class UnboundVariableError(LinearityError):
    pass


class UnusedVariableError(LinearityError):
    pass


class DuplicateVariableError(LinearityError):
    pass


class MalformedMapError(LambdaMapError):
    pass


class SmoothingError(LambdaMapError):
    pass


class DisconnectedGraphError(LambdaMapError):
    pass


class OpenTermError(LambdaMapError):
    pass


class BudgetExceededError(LambdaMapError):
    pass


class UnificationError(RuntimeError):
    """Raised when inference fails on a linear term, which indicates a bug."""
