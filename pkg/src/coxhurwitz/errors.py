"""Exception types shared across the package."""


class CoxeterError(ValueError):
    """Invalid input to a Coxeter-group operation."""


class UnsupportedSystem(CoxeterError):
    """The operation is not available for this class of Coxeter system."""


class CapExceeded(RuntimeError):
    """A bounded search or enumeration hit its cap before finishing.

    ``partial`` carries whatever was computed so far (a size, a set, or a
    frontier, depending on the raiser).
    """

    def __init__(self, message, partial=None, frontier=None):
        super().__init__(message)
        self.partial = partial
        self.frontier = frontier


class Indeterminate(CapExceeded):
    """A search was cut off, so neither a positive nor a negative answer is known."""
