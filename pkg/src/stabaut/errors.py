"""Exception types raised across the package."""


class StabautError(Exception):
    """Base class for all package errors."""

    code = "error"


class CapacityError(StabautError):
    """An exhaustive enumeration would exceed the configured capacity."""

    code = "capacity"


class AlignmentError(StabautError):
    """A point period is incompatible with the level of a code."""

    code = "alignment"


class DimensionUnknownError(StabautError):
    """The dimension of a word containing an opaque block code was requested."""

    code = "dimension-unknown"


class ProperPowerError(StabautError):
    code = "proper-power"


class NotARootError(StabautError):
    code = "not-a-root"


class MissingResidueError(StabautError):
    code = "missing-residue"


class IncompatibleResiduesError(StabautError):
    code = "incompatible-residues"


class DegreeBoundError(StabautError):
    """No degree was found up to the search bound."""

    code = "degree-bound"


class NotConjugationError(StabautError):
    code = "not-conjugation"


class VerificationError(StabautError):
    code = "verification-failed"


class NoAdmissibleLevelError(StabautError):
    code = "no-admissible-level"


class NotOrbitPreservingError(StabautError):
    code = "not-orbit-preserving"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InconsistentResidueError(StabautError):
    code = "inconsistent-residue"


class NoStabilizationError(StabautError):
    code = "no-stabilization"


class SearchBudgetError(StabautError):
    code = "budget"
