"""Exception taxonomy shared by all pipeline stages.

The CLI maps these onto its stable exit codes: ConfigError -> 2,
MissingPrerequisiteError -> 3, everything else -> 4.
"""


class HairFusionError(Exception):
    """Base class for all package errors."""


class ConfigError(HairFusionError):
    """Invalid configuration value or malformed config file."""


class InputError(HairFusionError):
    """Missing or inconsistent input data (annotations, masks, pairs)."""


class GeometryError(HairFusionError):
    """Degenerate geometry, e.g. left jaw landmark right of the right one."""


class ContractError(HairFusionError):
    """Caller violated an operation contract (shape, range, task kind)."""


class ExhaustionError(HairFusionError):
    """The corpus cannot supply the requested pairs."""


class DatasetParseError(HairFusionError):
    """Malformed on-disk dataset; message names the offending file."""


class CheckpointIntegrityError(HairFusionError):
    """Checkpoint manifest and weights disagree."""


class ProtocolError(HairFusionError):
    """Evaluation protocol violation, e.g. train/test identity overlap."""


class TrainingDivergedError(HairFusionError):
    """Loss became non-finite; carries a diagnostic snapshot."""

    def __init__(self, message: str, snapshot: dict):
        super().__init__(message)
        self.snapshot = snapshot


class CodecTrainingError(HairFusionError):
    """Latent codec failed to reach its reconstruction floor."""

    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


class MissingPrerequisiteError(HairFusionError):
    """A pipeline stage was invoked before the stage it depends on."""
