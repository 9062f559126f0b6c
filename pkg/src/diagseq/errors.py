"""Exception types shared across the package."""


class DiagseqError(Exception):
    """Base class for all package-specific errors."""


class ParseError(DiagseqError):
    """Malformed formula or DPI text.

    Carries ``offset`` (byte offset into the formula string) or ``line``
    (1-based line number in a DPI file), whichever applies.
    """

    def __init__(self, message, offset=None, line=None):
        self.offset = offset
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")


class DuplicateLabel(DiagseqError):
    pass


class MissingSection(DiagseqError):
    pass


class ResourceLimit(DiagseqError):
    """The SAT backend exceeded its decision budget.

    Signals the instance is too hard for the configured budget, not that
    it is unsatisfiable.
    """


class UnknownLabel(DiagseqError):
    pass


class Unsolvable(DiagseqError):
    """No diagnosis exists for the problem instance."""


class ZeroMass(DiagseqError):
    """A belief update or normalization removed all probability mass."""


class MissingSubComponent(DiagseqError):
    pass


class EmptyPool(DiagseqError):
    pass


class MissingRioState(DiagseqError):
    pass


class InvalidPartition(DiagseqError):
    pass


class InsufficientData(DiagseqError):
    pass


class ZeroMean(DiagseqError):
    pass


class InfeasibleParams(DiagseqError):
    pass
