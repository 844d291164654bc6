"""Exception types shared across the package."""


class K3StabError(Exception):
    """Base class for all package errors."""


class DomainError(K3StabError, ValueError):
    """A chart parameter lies on (or too close to) the forbidden ray [0, +inf)."""


class NotStable(K3StabError, ValueError):
    """The requested atom is not stable in the region of the given chart."""


class PhaseOrderViolation(K3StabError, RuntimeError):
    """The recursive HN construction produced factors out of phase order."""


class TriangleViolation(K3StabError, ValueError):
    """Mass coordinates do not satisfy the inequalities required by a cell."""


class NoConvergence(K3StabError, RuntimeError):
    """The numeric inverter failed to reach the requested residual."""


class AmbiguousWindow(K3StabError, ValueError):
    """The coordinate window is too small to decide which cell a point is in."""
