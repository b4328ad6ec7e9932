from .config import (
    RunConfig,
    ValidationReport,
    apply_overrides,
    canonical_json,
    config_from_dict,
    config_hash,
    desk_config,
    full_scale_config,
    load_config,
    save_config,
    validate_config,
)
from .errors import (
    CheckpointIntegrityError,
    CodecTrainingError,
    ConfigError,
    ContractError,
    DatasetParseError,
    ExhaustionError,
    GeometryError,
    HairFusionError,
    InputError,
    MissingPrerequisiteError,
    ProtocolError,
    TrainingDivergedError,
)
from .rng import RandomStream, seeded_rng
from .types import (
    BinaryMask,
    DensePoseIUV,
    ImageRGB,
    Landmarks68,
    Latent,
    NoiseSchedule,
    SoftMask,
    validate_latent_dims,
)

__all__ = [
    "BinaryMask",
    "CheckpointIntegrityError",
    "CodecTrainingError",
    "ConfigError",
    "ContractError",
    "DatasetParseError",
    "DensePoseIUV",
    "ExhaustionError",
    "GeometryError",
    "HairFusionError",
    "ImageRGB",
    "InputError",
    "Landmarks68",
    "Latent",
    "MissingPrerequisiteError",
    "NoiseSchedule",
    "ProtocolError",
    "RandomStream",
    "RunConfig",
    "SoftMask",
    "TrainingDivergedError",
    "ValidationReport",
    "apply_overrides",
    "canonical_json",
    "config_from_dict",
    "config_hash",
    "desk_config",
    "full_scale_config",
    "load_config",
    "save_config",
    "seeded_rng",
    "validate_config",
    "validate_latent_dims",
]
