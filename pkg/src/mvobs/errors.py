"""Exception types shared across the package."""

from __future__ import annotations


class AxiomError(ValueError):
    """A table does not define an effect algebra.

    ``axiom`` names the violated condition, ``witness`` holds the offending
    element names (or triple).
    """

    def __init__(self, axiom: str, message: str, witness: tuple = ()):
        super().__init__(f"axiom {axiom}: {message}")
        self.axiom = axiom
        self.witness = witness


class ForeignElementError(ValueError):
    pass


class NotLatticeError(ValueError):
    pass


class DistributivityRequired(ValueError):
    """Raised when a sum-layer operation meets an algebra without the
    countable distributive laws and no force flag was given."""


class ResolutionError(ValueError):
    pass


class ObservableError(ValueError):
    pass
