"""Run configuration: schema, presets, canonical serialization, validation.

The canonical form is JSON with sorted keys and two-space indent; writing
the canonical form of a parsed config reproduces the file byte for byte.
Unknown keys anywhere in the tree are errors.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError


@dataclass
class ScheduleConfig:
    timesteps: int = 1000
    beta_start: float = 1e-4
    beta_end: float = 2e-2


@dataclass
class ModelConfig:
    base_channels: int = 32
    channel_mults: tuple = (1, 2, 4)
    attention_heads: int = 4
    align_ca_layers: int = 2
    attn_blocks_per_level: int = 1
    pose_channels: int = 32
    exemplar_dim: int = 64


@dataclass
class LossWeights:
    lambda_hair: float = 5.0
    lambda_face: float = 5.0
    lambda_fg: float = 5.0


@dataclass
class BlendParams:
    n_blend_steps: int = 10
    ca_layers: tuple = (0, 1)
    ca_threshold: float = 0.5
    mask_combination: str = "intersection_of_complements"


@dataclass
class SamplerParams:
    ddim_steps: int = 50
    guidance_scale: float = 1.0
    exemplar_dropout_prob: float = 0.2


@dataclass
class TrainParams:
    learning_rate: float = 1e-4
    batch_size: int = 8
    steps: int = 2000
    checkpoint_every: int = 500
    weight_decay: float = 0.01


@dataclass
class CodecParams:
    kind: str = "conv"  # "conv" (trained) or "identity" (exact block reshape)
    hidden_channels: int = 64
    train_steps: int = 1500
    train_batch_size: int = 16
    learning_rate: float = 2e-3
    psnr_floor: float = 28.0


@dataclass
class CorpusParams:
    n_identities: int = 20
    views_per_identity: int = 4


@dataclass
class RunConfig:
    image_size: int = 64
    latent_channels: int = 4
    downsample_factor: int = 4
    seed: int = 0
    schedule: ScheduleConfig = field(default_factory=ScheduleConfig)
    model: ModelConfig = field(default_factory=ModelConfig)
    loss_weights: LossWeights = field(default_factory=LossWeights)
    blend: BlendParams = field(default_factory=BlendParams)
    sampler: SamplerParams = field(default_factory=SamplerParams)
    train: TrainParams = field(default_factory=TrainParams)
    codec: CodecParams = field(default_factory=CodecParams)
    corpus: CorpusParams = field(default_factory=CorpusParams)

    def to_dict(self) -> dict:
        def convert(obj):
            if dataclasses.is_dataclass(obj):
                return {f.name: convert(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
            if isinstance(obj, tuple):
                return list(obj)
            return obj

        return convert(self)

    @property
    def latent_size(self) -> int:
        return self.image_size // self.downsample_factor


_TUPLE_FIELDS = {"channel_mults", "ca_layers"}


def _from_dict(cls, data: dict, path: str):
    if not isinstance(data, dict):
        raise ConfigError(f"config section '{path or '<root>'}' must be a mapping")
    fields = {f.name: f for f in dataclasses.fields(cls)}
    unknown = set(data) - set(fields)
    if unknown:
        where = f" in '{path}'" if path else ""
        raise ConfigError(f"unknown config key(s){where}: {sorted(unknown)}")
    kwargs = {}
    for name in fields:
        if name not in data:
            continue  # keep the default
        value = data[name]
        sub = f"{path}.{name}" if path else name
        if name in _SECTION_TYPES:
            kwargs[name] = _from_dict(_SECTION_TYPES[name], value, sub)
        elif name in _TUPLE_FIELDS:
            kwargs[name] = tuple(value)
        else:
            kwargs[name] = value
    return cls(**kwargs)


_SECTION_TYPES = {
    "schedule": ScheduleConfig,
    "model": ModelConfig,
    "loss_weights": LossWeights,
    "blend": BlendParams,
    "sampler": SamplerParams,
    "train": TrainParams,
    "codec": CodecParams,
    "corpus": CorpusParams,
}


def config_from_dict(data: dict) -> RunConfig:
    return _from_dict(RunConfig, data, "")


def canonical_json(config: RunConfig) -> str:
    return json.dumps(config.to_dict(), indent=2, sort_keys=True) + "\n"


def config_hash(config: RunConfig) -> str:
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()


def save_config(config: RunConfig, path: str | Path) -> None:
    Path(path).write_text(canonical_json(config), encoding="utf-8")


def load_config(path: str | Path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path} is not valid JSON: {e}") from e
    return config_from_dict(data)


def apply_overrides(config: RunConfig, overrides: dict[str, str]) -> RunConfig:
    """Apply dotted-key=value overrides, e.g. {'blend.n_blend_steps': '0'}."""
    data = config.to_dict()
    for dotted, raw in overrides.items():
        keys = dotted.split(".")
        node = data
        for k in keys[:-1]:
            if k not in node:
                raise ConfigError(f"unknown config key in override: {dotted}")
            node = node[k]
        leaf = keys[-1]
        if leaf not in node:
            raise ConfigError(f"unknown config key in override: {dotted}")
        node[leaf] = json.loads(raw) if raw not in ("", None) else raw
    return config_from_dict(data)


@dataclass
class ValidationReport:
    passed: bool
    violations: list

    def __str__(self):
        if self.passed:
            return "config: pass"
        return "config: FAIL\n" + "\n".join(f"  - {v}" for v in self.violations)


def validate_config(config: RunConfig) -> ValidationReport:
    """Check every cross-field constraint; always returns a report."""
    v: list[str] = []
    c = config
    if c.image_size < 8:
        v.append("image_size: must be >= 8")
    if c.downsample_factor < 1:
        v.append("downsample_factor: must be >= 1")
    elif c.image_size % c.downsample_factor != 0:
        v.append("divisibility: image_size must be divisible by downsample_factor")
    if c.latent_channels < 1:
        v.append("latent_channels: must be >= 1")
    if c.codec.kind not in ("conv", "identity"):
        v.append(f"codec.kind: unknown kind '{c.codec.kind}'")
    if c.codec.kind == "identity" and c.latent_channels != 3 * c.downsample_factor**2:
        v.append(
            "identity codec: latent_channels must equal 3 * downsample_factor^2 "
            f"(= {3 * c.downsample_factor ** 2})"
        )
    s = c.schedule
    if s.timesteps < 1:
        v.append("schedule.timesteps: must be >= 1")
    if not (0.0 < s.beta_start < 1.0 and 0.0 < s.beta_end < 1.0):
        v.append("schedule betas: beta_start and beta_end must lie strictly in (0, 1)")
    for name in ("lambda_hair", "lambda_face", "lambda_fg"):
        if getattr(c.loss_weights, name) < 0:
            v.append(f"nonnegative loss weight: {name} must be >= 0")
    m = c.model
    if m.base_channels < 1 or not m.channel_mults:
        v.append("model: base_channels >= 1 and at least one channel mult required")
    else:
        for mult in m.channel_mults:
            if (m.base_channels * mult) % m.attention_heads != 0:
                v.append(
                    "model: every level width must be divisible by attention_heads"
                )
                break
        n_ca_sites = len(m.channel_mults) * m.attn_blocks_per_level
        if not (1 <= m.align_ca_layers <= n_ca_sites):
            v.append(
                f"model.align_ca_layers: must be in [1, {n_ca_sites}] "
                "(decoder cross-attention sites)"
            )
        levels = len(m.channel_mults)
        if c.image_size % (c.downsample_factor * 2 ** (levels - 1)) != 0:
            v.append("model: latent size must be divisible by 2^(levels-1)")
    sp = c.sampler
    if not (1 <= sp.ddim_steps <= s.timesteps):
        v.append("sampler.ddim_steps: must satisfy 1 <= ddim_steps <= timesteps")
    if sp.guidance_scale <= 0:
        v.append("sampler.guidance_scale: must be > 0")
    if not (0.0 <= sp.exemplar_dropout_prob <= 1.0):
        v.append("sampler.exemplar_dropout_prob: must lie in [0, 1]")
    b = c.blend
    if not (0 <= b.n_blend_steps <= sp.ddim_steps):
        v.append("blend.n_blend_steps: must satisfy 0 <= n_blend_steps <= ddim_steps")
    if not (0.0 < b.ca_threshold < 1.0):
        v.append("blend.ca_threshold: must lie strictly in (0, 1)")
    if b.mask_combination not in ("intersection_of_complements", "paper_literal_union"):
        v.append(f"blend.mask_combination: unknown mode '{b.mask_combination}'")
    for idx in b.ca_layers:
        if not (0 <= idx < c.model.align_ca_layers):
            v.append("blend.ca_layers: indices must address existing Align-CA layers")
            break
    t = c.train
    if t.learning_rate <= 0 or t.batch_size < 1 or t.steps < 0:
        v.append("train: learning_rate > 0, batch_size >= 1, steps >= 0 required")
    if c.corpus.n_identities < 2 or c.corpus.views_per_identity < 2:
        v.append("corpus: needs >= 2 identities and >= 2 views per identity")
    return ValidationReport(passed=not v, violations=v)


def desk_config(seed: int = 0) -> RunConfig:
    """Laptop-scale defaults: 64 px images, 16x16x4 latents, tiny U-Net."""
    cfg = RunConfig(seed=seed)
    return cfg


def full_scale_config(seed: int = 0) -> RunConfig:
    """Mirrors the published full-scale training setup (never run in tests:
    requires pretrained backbones and datacenter hardware)."""
    return RunConfig(
        image_size=512,
        latent_channels=4,
        downsample_factor=8,
        seed=seed,
        model=ModelConfig(
            base_channels=320,
            channel_mults=(1, 2, 4),
            attention_heads=8,
            align_ca_layers=9,
            attn_blocks_per_level=3,
            pose_channels=256,
            exemplar_dim=768,
        ),
        blend=BlendParams(n_blend_steps=10, ca_layers=(5, 6), ca_threshold=0.5),
        train=TrainParams(learning_rate=1e-4, batch_size=48, steps=200_000,
                          checkpoint_every=5_000, weight_decay=0.01),
    )
