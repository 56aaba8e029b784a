"""Exception types raised by the triangulation pipeline.

Every error carries a short ``code`` so the command line front end can print
a single greppable line.
"""


class ShullError(Exception):
    code = "E_SHULL"


class InvalidInput(ShullError, ValueError):
    code = "E_INVALID_INPUT"


class TooFewPoints(ShullError, ValueError):
    code = "E_TOO_FEW_POINTS"


class CollinearInput(ShullError, ValueError):
    code = "E_COLLINEAR_INPUT"


class AllCollinear(ShullError, ValueError):
    code = "E_ALL_COLLINEAR"


class DuplicatePoints(ShullError, ValueError):
    code = "E_DUPLICATE_POINTS"

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class NoVisibleEdge(ShullError, RuntimeError):
    code = "E_NO_VISIBLE_EDGE"

    def __init__(self, message, index=-1):
        super().__init__(message)
        self.index = index


class NotAdjacent(ShullError, ValueError):
    code = "E_NOT_ADJACENT"


class DegenerateCocircular(ShullError, ValueError):
    code = "E_DEGENERATE_COCIRCULAR"


class FileWriteError(ShullError, OSError):
    code = "E_FILE_WRITE"


class ParseError(ShullError, ValueError):
    code = "E_PARSE"
