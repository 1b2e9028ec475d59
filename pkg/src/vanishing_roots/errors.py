"""Exception hierarchy shared by the lattice, root and construction layers."""


class LatticeError(ValueError):
    """Base class for mathematical precondition failures."""


class NotIntegralError(LatticeError):
    pass


class DegenerateFormError(LatticeError):
    pass


class NotPositiveDefiniteError(LatticeError):
    """Raised with the 1-based size of the first non-positive leading minor."""

    def __init__(self, minor_index, minor_value):
        self.minor_index = minor_index
        self.minor_value = minor_value
        super().__init__(
            f"form is not positive definite: leading principal minor "
            f"of size {minor_index} equals {minor_value}"
        )


class CapacityError(LatticeError):
    pass


class ReducibleRootSystemError(LatticeError):
    pass


class ConstructionError(ValueError):
    """Invalid family name or parameters for a construction."""
