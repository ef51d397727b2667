"""Exception hierarchy shared by all modules."""


class DerangementCliquesError(Exception):
    """Base class for every error raised by this package."""


class CapExceeded(DerangementCliquesError):
    """A size cap of an exact solver was exceeded (solvers refuse to approximate)."""


class ClosureExceedsCap(CapExceeded):
    """A query needed the full element set of a group larger than its cap."""


class NotTransitive(DerangementCliquesError):
    pass


class InvalidBlockSystem(DerangementCliquesError):
    pass


class NotASubgroup(DerangementCliquesError):
    pass


class NotNormalized(DerangementCliquesError):
    pass


class InvalidCayleyTable(DerangementCliquesError):
    pass


class InvalidPermutation(DerangementCliquesError, ValueError):
    pass


class InvalidWitness(DerangementCliquesError):
    pass


class ActionDoesNotPreserveEdges(DerangementCliquesError):
    pass


class InvalidHypergraph(DerangementCliquesError, ValueError):
    pass


class PreconditionError(DerangementCliquesError, ValueError):
    pass


class ParseError(DerangementCliquesError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotIndexThree(PreconditionError):
    pass


class NotCovering(PreconditionError):
    pass
