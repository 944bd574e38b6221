"""
Exception hierarchy for the toolkit.

Every error carries the CLI exit code it maps to, so `app.py` can translate
exceptions in a single place.
"""


class LieToolkitError(Exception):
    """Base class for all toolkit errors"""

    exit_code = 1


class DimensionMismatchError(LieToolkitError, ValueError):
    """Vectors, matrices or groups do not match the algebra dimension"""


class InvalidInnerProductError(LieToolkitError, ValueError):
    """Gram matrix is not symmetric positive definite"""


class NonIdentityGramError(LieToolkitError, ValueError):
    """Operation needs the input basis to be orthonormal"""


class FlowError(LieToolkitError, ValueError):
    """Invalid flow problem (step, coefficients, initial metric)"""


class LimitExceededError(LieToolkitError):
    """An enumeration or exploration cap was hit"""

    exit_code = 4

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit


class ParseError(LieToolkitError):
    """Input file could not be parsed; keeps file, line and field context"""

    exit_code = 2

    def __init__(self, message, path=None, line=None, field=None):
        self.path = path
        self.line = line
        self.field = field
        super().__init__(self._compose(message))
        self.message = message

    def _compose(self, message):
        where = []
        if self.path:
            where.append(str(self.path))
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field:
            where.append(f"field '{self.field}'")
        if not where:
            return message
        return f"{', '.join(where)}: {message}"


class SingularMatrixError(LieToolkitError, ValueError):
    """Change-of-basis matrix is not invertible"""
