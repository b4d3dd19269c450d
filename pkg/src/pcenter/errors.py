"""Exception hierarchy shared by the package."""


class PCenterError(Exception):
    """Base class for every error raised by pcenter."""


class ParseError(PCenterError, ValueError):
    """Malformed instance text. ``line`` is 1-based, or None for whole-file problems."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceError(PCenterError, ValueError):
    pass


class DisconnectedGraphError(InstanceError):
    def __init__(self, u, v):
        self.pair = (u, v)
        super().__init__(f"graph is disconnected: vertex {v} is unreachable from vertex {u}")


class NoFeasibleRadiusError(PCenterError, ValueError):
    pass


class InvalidBoundsError(PCenterError, ValueError):
    pass


class EnumerationCapError(PCenterError):
    pass


class SolverError(PCenterError):
    pass


class SolverNotFoundError(SolverError):
    pass


class SolverFailedError(SolverError):
    def __init__(self, message, stderr=""):
        self.stderr = stderr
        super().__init__(message)


class SolutionParseError(SolverError):
    pass


class AlgorithmError(PCenterError):
    pass
