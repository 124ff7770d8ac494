"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, the HTTP service onto
status codes, so raise the most specific class available.
"""


class GammaTorsionError(Exception):
    """Base class for all package errors."""


class GroupSpecError(GammaTorsionError):
    """A group spec string or group file could not be parsed."""


class InvalidInvariantError(GroupSpecError):
    """Invariant factor list contains an entry < 2."""


class CatalogMissError(GroupSpecError):
    """Unknown catalog name; carries the list of available names."""

    def __init__(self, name: str, available: list[str]):
        super().__init__(
            f"unknown catalog group {name!r}; available: {', '.join(available)}"
        )
        self.name = name
        self.available = available


class GroupValidationError(GammaTorsionError):
    """A Cayley table failed the group axioms or relator checks."""


class GroupMismatchError(GammaTorsionError):
    """Operands belong to different groups."""


class PresentationDeficiencyError(GammaTorsionError):
    """The relators of a presentation do not generate the relation module."""


class NotALatticeError(GammaTorsionError):
    """A presentation has torsion in its cokernel, so no lattice exists."""

    def __init__(self, factors: list[int]):
        super().__init__(f"cokernel has torsion with invariant factors {factors}")
        self.factors = factors


class InternalConsistencyError(GammaTorsionError):
    """Two independent computations of the same invariant disagree.

    This is fatal: it always indicates a bug, never bad input.
    """


class OrderBoundExceededError(GammaTorsionError):
    """Requested group order exceeds the configured safety bound."""


class UnknownSuiteError(GammaTorsionError):
    """verify was asked for a suite name that does not exist."""

    def __init__(self, name: str, available: list[str]):
        super().__init__(f"unknown suite {name!r}; available: {', '.join(available)}")
        self.name = name
        self.available = available
