"""Exception types shared across the package."""

from __future__ import annotations


class RepDimError(Exception):
    """Base class; ``code`` is a stable machine-readable tag."""

    code = "RepDimError"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class QuiverError(RepDimError):
    code = "QuiverError"


class FieldNotSplit(RepDimError):
    code = "FieldNotSplit"


class ProjectiveInput(RepDimError):
    code = "ProjectiveInput"


class InjectiveInput(RepDimError):
    code = "InjectiveInput"


class DepthExceeded(RepDimError):
    code = "DepthExceeded"


class NotInTorsionClass(RepDimError):
    code = "NotInTorsionClass"


class KernelNotInSlice(RepDimError):
    code = "KernelNotInSlice"


class NotSplit(RepDimError):
    code = "NotSplit"


class DynkinQuiver(RepDimError):
    code = "DynkinQuiver"


class NotTilting(RepDimError):
    code = "NotTilting"


class ProjectiveSummandInTauT(RepDimError):
    code = "ProjectiveSummandInTauT"


class SliceConditionFailed(RepDimError):
    code = "SliceConditionFailed"


class GenCogenFailure(RepDimError):
    code = "GenCogenFailure"


class SchemaError(RepDimError):
    code = "SchemaError"

    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason
