"""Exception hierarchy shared by all paperband modules."""


class PaperbandError(Exception):
    """Base class for all errors raised by this package."""


class DiagramParseError(PaperbandError):
    """Malformed .rbn input; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidDiagram(PaperbandError):
    """A diagram failed validation where a valid one is required."""


class DegenerateAngle(PaperbandError):
    """Fold at 90 degrees: left/right classification undefined."""


class CrossingsPresent(PaperbandError):
    """Centerline self-crossings: fold-contribution counting not applicable."""


class OddAnnulus(PaperbandError):
    """Annulus diagram with an odd half-twist sum."""


class ParityMismatch(PaperbandError):
    """Requested twist count has the wrong parity for the band kind."""


class BudgetExceeded(PaperbandError):
    """Layout cannot be solved within the length/clearance budget."""


class LayeringContradiction(PaperbandError):
    """No consistent layer order exists (cycle or pierced face)."""


class DeltaTooLarge(PaperbandError):
    """Layer separation too large: pseudofold footprints collide."""


class UnlayeredInput(PaperbandError):
    """Operation requires a folded state with assigned layers."""


class OpenBand(PaperbandError):
    """Band ends are not identified; closed curves cannot be extracted."""


class CurvesTouch(PaperbandError):
    """Gauss integral undefined: curves closer than the safety floor."""
