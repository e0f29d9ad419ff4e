"""
OreSolve - Error types
"""


class OreSolveError(Exception):
    """Base class for engine errors"""


class ParseError(OreSolveError):
    """Syntax error in polynomial or operator text"""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at offset {position}")


class AlgebraError(OreSolveError, ValueError):
    """Violated precondition: zero input, singular matrix, bad order"""


class RequiresExtension(OreSolveError):
    """A constant needed by the computation is not rational"""

    def __init__(self, message: str, polynomial=None):
        self.polynomial = polynomial
        super().__init__(message)


class CorpusError(OreSolveError, LookupError):
    """Unknown or malformed corpus entry"""
