"""Exception hierarchy.

Every failure raised by the toolkit derives from :class:`PHLoewnerError`;
the CLI maps these to exit code 2 and prints the stage tag.
"""


class PHLoewnerError(Exception):
    """Base class for all toolkit errors."""


class InvalidParameter(PHLoewnerError, ValueError):
    pass


class DimensionMismatch(PHLoewnerError, ValueError):
    pass


class SingularPencil(PHLoewnerError):
    """sE - A is numerically singular at the requested point."""


class SingularE(PHLoewnerError):
    pass


class SupportMismatch(PHLoewnerError):
    """Input spectrum carries energy outside the planned DFT bins."""


class RankDeficient(PHLoewnerError):
    pass


class PointCollision(PHLoewnerError):
    pass


class DegenerateData(PHLoewnerError):
    pass


class NoRHPZeros(PHLoewnerError):
    pass


class PencilFailure(PHLoewnerError):
    pass


class InterpolationFailure(PHLoewnerError):
    pass


class IndefiniteE(PHLoewnerError):
    pass


class ConjugacyViolation(PHLoewnerError):
    pass


class NotSPD(PHLoewnerError):
    pass


class StructureFailure(PHLoewnerError):
    pass


class Unstable(PHLoewnerError):
    pass


class NonzeroD(PHLoewnerError):
    pass


class StageError(PHLoewnerError):
    """Wraps an error raised inside one stage of the identification pipeline."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
