"""Exception types shared across the package."""


class SuperkronError(Exception):
    """Base class for all package-specific errors."""


class TailTooLarge(SuperkronError):
    """Theta series truncation error exceeds the requested tolerance."""


class PoleProximity(SuperkronError):
    """An evaluation point is too close to a lattice pole."""

    def __init__(self, label: str, distance: float, margin: float):
        self.label = label
        self.distance = distance
        self.margin = margin
        super().__init__(
            f"{label} is at lattice distance {distance:.3e} <= margin {margin:.3e}"
        )


class RingMismatch(SuperkronError):
    """Operands of an exterior-algebra operation live in different rings."""


class OddBodyUnsupported(SuperkronError):
    """Exponential of an element whose nilpotent part has odd-degree monomials."""


class ConstraintViolated(SuperkronError):
    """An operation was invoked with coefficients outside its validity domain."""


class ConfigError(SuperkronError):
    """Invalid verifier run configuration."""
