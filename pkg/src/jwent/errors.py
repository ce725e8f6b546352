"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class CapacityError(ValueError):
    """A requested system is larger than the dense code paths support."""


class NumericError(ArithmeticError):
    """Non-finite input or a failed numerical post-condition."""


class ConventionError(ValueError):
    """Couplings do not fit a sign-rule convention (e.g. mixed-sign hopping)."""


class DegeneracyError(RuntimeError):
    """The ground state is not unique and the caller asked for strictness."""

    def __init__(self, message, tied_sectors=()):
        super().__init__(message)
        self.tied_sectors = tuple(tied_sectors)
