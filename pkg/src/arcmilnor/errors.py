"""Exception hierarchy.

`ComputationAbort` subclasses are the ones the CLI maps to exit code 3.
"""


class ArcMilnorError(Exception):
    pass


class ParseError(ArcMilnorError, ValueError):
    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class NotVanishingAtOrigin(ArcMilnorError, ValueError):
    pass


class ResolutionSchemaError(ArcMilnorError, ValueError):
    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class MissingCoverClass(ArcMilnorError):
    pass


class MissingCharts(ArcMilnorError):
    pass


class BadPrime(ArcMilnorError, ValueError):
    pass


class InterpolationError(ArcMilnorError):
    pass


class ComputationAbort(ArcMilnorError):
    pass


class NonRationalCenter(ComputationAbort):
    pass


class MaxBlowupsExceeded(ComputationAbort):
    pass


class WorkBoundExceeded(ComputationAbort):
    def __init__(self, message, nodes=None):
        self.nodes = nodes
        super().__init__(message if nodes is None else f"{message} after {nodes} nodes")
