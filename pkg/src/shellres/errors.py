"""Exception types shared across the package."""


class ShellresError(Exception):
    """Base class for all library errors."""


class OrderedRadii(ShellresError):
    """Potential radii are not ordered 0 < a < b, or scale/inputs invalid."""


class DegenerateMatch(ShellresError):
    """Both the outer and inner wave numbers vanish; matching is singular."""


class PoleAtInput(ShellresError):
    """Evaluation requested at (or numerically on top of) an S-matrix pole."""


class NotAPole(ShellresError):
    """Residue requested at a point that is not a zero of the outgoing Jost function."""


class BoundaryZero(ShellresError):
    """A zero sits on (or keeps wandering onto) the counting boundary."""


class NonConvergence(ShellresError):
    """Newton refinement failed to converge inside an isolating cell."""


class PairingViolation(ShellresError):
    """Conjugate-pair symmetry between a resonance and its partner failed."""


class J3Vanishes(ShellresError):
    """The interior matching coefficient vanishes; the state formula is singular."""


class ContourTooClose(ShellresError):
    """Contour passes within the exclusion distance of a pole."""


class AlphaNegative(ShellresError):
    """Regulator strength must be non-negative."""


class NonMonotone(ShellresError):
    """Reported errors grow as the regulator shrinks; extrapolation is suspect."""


class ArityTooSmall(ShellresError):
    """Too few reports to extrapolate."""


class ConfigError(ShellresError):
    """Configuration file is malformed or contains unknown keys."""
