"""Shared domain types and their validators.

Conventions used across the package:

* images are float32, shape (H, W, 3), values in [-1, 1]; file I/O is
  8-bit with the affine map v = 2u/255 - 1, so mid-gray fill is v = 0
* masks are uint8, shape (H, W); binary masks hold exactly {0, 1}
* latents are float32, shape (c, h, w) (channel-first, torch-friendly)

All types are immutable values after construction (backing arrays are
marked read-only) and safe to share across concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError

# 68-point landmark convention.
JAW = slice(0, 17)
EYEBROWS = slice(17, 27)
NOSE = slice(27, 36)
EYES = slice(36, 48)
LIPS = slice(48, 68)
CHIN_INDEX = 8
LEFT_JAW_INDEX = 0
RIGHT_JAW_INDEX = 16


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ImageRGB:
    data: np.ndarray  # (H, W, 3) float32 in [-1, 1]

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float32)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ContractError(f"image must be (H, W, 3), got {data.shape}")
        if data.shape[0] < 8 or data.shape[1] < 8:
            raise ContractError(f"image sides must be >= 8, got {data.shape[:2]}")
        if not np.isfinite(data).all():
            raise ContractError("image contains non-finite values")
        if data.min() < -1.0 or data.max() > 1.0:
            raise ContractError("image values must lie in [-1, 1]")
        object.__setattr__(self, "data", _freeze(data))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @staticmethod
    def from_uint8(u: np.ndarray) -> "ImageRGB":
        u = np.asarray(u, dtype=np.uint8)
        return ImageRGB(2.0 * u.astype(np.float32) / 255.0 - 1.0)

    def to_uint8(self) -> np.ndarray:
        return np.round((self.data + 1.0) * 255.0 / 2.0).astype(np.uint8)


@dataclass(frozen=True)
class BinaryMask:
    data: np.ndarray  # (H, W) uint8 in {0, 1}

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 2:
            raise ContractError(f"mask must be (H, W), got {data.shape}")
        u = data.astype(np.uint8)
        if not np.array_equal(u, data) or not np.isin(u, (0, 1)).all():
            raise ContractError("binary mask must contain only 0 and 1")
        object.__setattr__(self, "data", _freeze(u))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    def as_bool(self) -> np.ndarray:
        return self.data.astype(bool)

    @staticmethod
    def from_bool(b: np.ndarray) -> "BinaryMask":
        return BinaryMask(np.asarray(b, dtype=bool).astype(np.uint8))


@dataclass(frozen=True)
class SoftMask:
    data: np.ndarray  # (H, W) float32 in [0, 1]

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float32)
        if data.ndim != 2:
            raise ContractError(f"soft mask must be (H, W), got {data.shape}")
        if not np.isfinite(data).all() or data.min() < 0.0 or data.max() > 1.0:
            raise ContractError("soft mask values must lie in [0, 1]")
        object.__setattr__(self, "data", _freeze(data))


@dataclass(frozen=True)
class DensePoseIUV:
    """Per-pixel (part index, U, V); part index channel 0 is normalized to
    [0, 1] with 0 denoting background."""

    data: np.ndarray  # (H, W, 3) float32 in [0, 1]

    N_PARTS = 3  # head, neck, torso

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float32)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ContractError(f"densepose must be (H, W, 3), got {data.shape}")
        if not np.isfinite(data).all() or data.min() < 0.0 or data.max() > 1.0:
            raise ContractError("densepose values must lie in [0, 1]")
        object.__setattr__(self, "data", _freeze(data))

    def part_plane(self) -> np.ndarray:
        """Integer part indices (0 = background)."""
        return np.rint(self.data[..., 0] * self.N_PARTS).astype(np.int32)

    @staticmethod
    def from_parts(parts: np.ndarray, u: np.ndarray, v: np.ndarray) -> "DensePoseIUV":
        plane = parts.astype(np.float32) / DensePoseIUV.N_PARTS
        return DensePoseIUV(np.stack([plane, u, v], axis=-1).astype(np.float32))


@dataclass(frozen=True)
class Landmarks68:
    points: np.ndarray  # (68, 2) float64, (x, y) pixel coordinates

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.shape != (68, 2):
            raise ContractError(f"landmarks must be (68, 2), got {pts.shape}")
        if not np.isfinite(pts).all():
            raise ContractError("landmarks contain non-finite coordinates")
        object.__setattr__(self, "points", _freeze(pts))

    def validate_bounds(self, height: int, width: int) -> None:
        pts = self.points
        if (pts[:, 0] < 0).any() or (pts[:, 0] > width - 1).any():
            raise ContractError("landmark x coordinates out of image bounds")
        if (pts[:, 1] < 0).any() or (pts[:, 1] > height - 1).any():
            raise ContractError("landmark y coordinates out of image bounds")

    @property
    def chin(self) -> np.ndarray:
        return self.points[CHIN_INDEX]

    @property
    def left_jaw_x(self) -> float:
        return float(self.points[LEFT_JAW_INDEX, 0])

    @property
    def right_jaw_x(self) -> float:
        return float(self.points[RIGHT_JAW_INDEX, 0])

    @property
    def eyebrow_line_y(self) -> float:
        return float(self.points[EYEBROWS, 1].min())


@dataclass(frozen=True)
class Latent:
    data: np.ndarray  # (c, h, w) float32

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float32)
        if data.ndim != 3:
            raise ContractError(f"latent must be (c, h, w), got {data.shape}")
        if not np.isfinite(data).all():
            raise ContractError("latent contains non-finite values")
        object.__setattr__(self, "data", _freeze(data))

    @property
    def c(self) -> int:
        return self.data.shape[0]

    @property
    def h(self) -> int:
        return self.data.shape[1]

    @property
    def w(self) -> int:
        return self.data.shape[2]


def validate_latent_dims(latent: Latent, image_h: int, image_w: int, factor: int) -> None:
    if latent.h * factor != image_h or latent.w * factor != image_w:
        raise ContractError(
            f"latent {latent.h}x{latent.w} does not match image "
            f"{image_h}x{image_w} at downsample factor {factor}"
        )


@dataclass(frozen=True)
class NoiseSchedule:
    """Variance schedule of the forward diffusion process."""

    betas: np.ndarray  # (T,) float64, each strictly in (0, 1)
    alphas: np.ndarray = field(init=False)
    alpha_bars: np.ndarray = field(init=False)

    def __post_init__(self):
        betas = np.asarray(self.betas, dtype=np.float64)
        if betas.ndim != 1 or betas.size == 0:
            raise ContractError("betas must be a non-empty 1-D array")
        if (betas <= 0.0).any() or (betas >= 1.0).any():
            raise ContractError("betas must lie strictly in (0, 1)")
        alphas = 1.0 - betas
        alpha_bars = np.cumprod(alphas)
        if not (np.diff(alpha_bars) < 0).all():
            raise ContractError("alpha_bars must be strictly decreasing")
        object.__setattr__(self, "betas", _freeze(betas))
        object.__setattr__(self, "alphas", _freeze(alphas))
        object.__setattr__(self, "alpha_bars", _freeze(alpha_bars))

    @property
    def T(self) -> int:
        return self.betas.shape[0]

    @staticmethod
    def linear(timesteps: int, beta_start: float, beta_end: float) -> "NoiseSchedule":
        return NoiseSchedule(np.linspace(beta_start, beta_end, timesteps, dtype=np.float64))
