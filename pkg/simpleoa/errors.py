"""
Exception hierarchy for simpleoa
The CLI maps each family onto its own exit code
"""


class OAError(Exception):
    """Base class for every error raised by simpleoa"""


class ParameterError(OAError, ValueError):
    """Parameters outside the supported range or mismatched dimensions"""


class FormatError(OAError, ValueError):
    """Malformed input text; `line` is the 1-based line number when known"""

    def __init__(self, message: str, line: int = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VerificationError(OAError):
    """A property check failed (strength, simplicity, certificate, ...)"""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class ConstructionError(VerificationError):
    """A construction produced an array that failed its post-verification"""


class InconclusiveSearch(OAError):
    """The search ran out of node budget before reaching a verdict"""

    def __init__(self, message: str, nodes_visited: int = 0):
        self.nodes_visited = nodes_visited
        super().__init__(message)
