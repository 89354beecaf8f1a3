"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SwDegreeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SwDegreeError, ValueError):
    """An irrep or element was used with a group it does not belong to."""


class PreconditionError(SwDegreeError, ValueError):
    """Input data violates a documented precondition of a formula or check."""


class UnsupportedOperationError(SwDegreeError, NotImplementedError):
    pass


class InternalCheckError(SwDegreeError, ArithmeticError):
    """A machine-checked identity failed; indicates a bug or an invalid table."""


class NotVirtualCharacterError(SwDegreeError, ValueError):
    def __init__(self, irrep, value):
        self.irrep = irrep
        self.value = value
        super().__init__(f"not a virtual character: multiplicity of irrep {irrep} is {value}")


class ChartabSyntaxError(SwDegreeError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class ChartabValidationError(SwDegreeError, ValueError):
    pass
