"""Exception hierarchy.

Every error carries a short ``name`` used by the CLI when reporting domain
failures.  Parse-stage errors (bad tokens, impossible strand counts) are
"input" errors; everything else is a "domain" error raised after a diagram
has been successfully built.
"""


class LchkitError(Exception):
    name = "Error"
    kind = "domain"


class FrontSyntaxError(LchkitError):
    """Unparseable token in a front event word."""

    name = "SyntaxError"
    kind = "input"

    def __init__(self, message, event_index=None):
        super().__init__(message)
        self.event_index = event_index


class TopologyError(LchkitError):
    """Event word violates strand-count bookkeeping."""

    name = "TopologyError"
    kind = "input"

    def __init__(self, message, event_index=None):
        super().__init__(message)
        self.event_index = event_index


class NotPlatError(LchkitError):
    name = "NotPlat"


class NotLRSError(LchkitError):
    name = "NotLRS"


class MapInconsistentError(LchkitError):
    """Face tracing or cell bookkeeping failed to close up."""

    name = "MapInconsistent"


class DisconnectedPathError(LchkitError):
    name = "DisconnectedPath"


class ArityMismatchError(LchkitError):
    name = "ArityMismatch"


class OddPunctureOrderError(LchkitError):
    name = "OddPunctureOrder"


class FractionalMaslovError(LchkitError):
    """A Maslov number came out non-integral: diagram data is corrupt."""

    name = "FractionalMaslov"


class CalibrationFailureError(LchkitError):
    """Chord gradings fail the degree identity on rigid disks."""

    name = "CalibrationFailure"


class InconsistentLiftError(LchkitError):
    """Sheet propagation around a closed boundary walk did not close."""

    name = "InconsistentLift"


class UnknownFaceError(LchkitError):
    name = "UnknownFace"


class NoSignChangeError(LchkitError):
    name = "NoSignChange"


class IllConditionedError(LchkitError):
    name = "IllConditioned"
