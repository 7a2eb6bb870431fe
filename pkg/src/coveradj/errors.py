"""Exception hierarchy shared by all modules."""


class CoverAdjError(Exception):
    """Base class for every error raised by coveradj."""


class EmptyRow(CoverAdjError, ValueError):
    pass


class BadParameters(CoverAdjError, ValueError):
    pass


class BadIndexSet(CoverAdjError, ValueError):
    pass


class MatrixFormatError(CoverAdjError, ValueError):
    pass


class NotAVertex(CoverAdjError, ValueError):
    pass


class WrongRowSizes(CoverAdjError, ValueError):
    pass


class NotRowCircular(CoverAdjError, ValueError):
    pass


class DependentInequality(CoverAdjError, ValueError):
    pass


class ResourceLimit(CoverAdjError, RuntimeError):
    pass


class InternalInconsistency(CoverAdjError, AssertionError):
    """A decision procedure contradicted its own certificate."""
