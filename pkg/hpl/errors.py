# hpl/errors.py
from __future__ import annotations


class HplError(Exception):
    """Root of every error raised by hpl."""


# ----- input / validation ----- #


class SchemeSyntaxError(HplError, ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class SchemeValidationError(HplError, ValueError):
    pass


class UnknownSymbol(HplError, ValueError):
    def __init__(self, name: str) -> None:
        super().__init__(f"unknown symbol {name!r}")
        self.name = name


class TypeMismatch(HplError, ValueError):
    pass


class UnknownNonTerminal(HplError, KeyError):
    def __init__(self, name: str) -> None:
        super().__init__(f"unknown non-terminal {name!r}")
        self.name = name

    def __str__(self) -> str:
        return self.args[0]


class PdaSyntaxError(HplError, ValueError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class StackParseError(HplError, ValueError):
    pass


# ----- construction ----- #


class BudgetExceeded(HplError):
    pass


class OrderOverflow(HplError):
    pass


class NotIncrementallyBound(HplError):
    def __init__(self, message: str, violations: list | None = None) -> None:
        super().__init__(message)
        self.violations = violations or []


class NonFunctionDelta(HplError, ValueError):
    pass


class ViewUndefined(HplError):
    pass


# ----- stacks ----- #


class InvalidStackOperation(HplError):
    """A stack operation whose result is undefined on the given stack."""


class EmptyPop(InvalidStackOperation):
    pass


class EmptyTop(InvalidStackOperation):
    pass


class AbsentLink(InvalidStackOperation):
    pass


class DanglingLink(InvalidStackOperation):
    pass


class OccurrenceNotFound(InvalidStackOperation):
    pass
