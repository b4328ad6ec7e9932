"""Identity parameter sampling for the procedural head renderer."""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from ..core.rng import RandomStream, seeded_rng

HAIR_LENGTH_CLASSES = ("short", "medium", "long")


def hsv_to_rgb_u8(h: float, s: float, v: float) -> tuple[int, int, int]:
    """h in degrees [0, 360), s/v in [0, 1] -> uint8 RGB."""
    h = (h % 360.0) / 60.0
    i = int(h) % 6
    f = h - int(h)
    p, q, t = v * (1 - s), v * (1 - s * f), v * (1 - s * (1 - f))
    r, g, b = [
        (v, t, p), (q, v, p), (p, v, t), (p, q, v), (t, p, v), (v, p, q),
    ][i]
    return tuple(int(round(255 * c)) for c in (r, g, b))


@dataclass(frozen=True)
class IdentitySpec:
    identity_id: str
    face_ax: float      # face half-width as a fraction of the image side
    face_ay: float      # face half-height as a fraction of the image side
    skin_color: tuple
    hair_length_class: str
    hair_width: float   # lateral hair extent relative to the face half-width
    hair_color: tuple
    bang_height: float  # fraction of the forehead covered by bangs
    curl_amplitude: float
    curl_frequency: float
    clothing_color: tuple
    background_seed: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["skin_color"] = list(self.skin_color)
        d["hair_color"] = list(self.hair_color)
        d["clothing_color"] = list(self.clothing_color)
        return d

    @staticmethod
    def from_dict(d: dict) -> "IdentitySpec":
        d = dict(d)
        for key in ("skin_color", "hair_color", "clothing_color"):
            d[key] = tuple(int(c) for c in d[key])
        return IdentitySpec(**d)


def identity_stream(corpus_seed: int, identity_id: str) -> RandomStream:
    # Per-identity derivation keeps parallel and serial generation bit-equal.
    return seeded_rng(corpus_seed, f"corpus/identity/{identity_id}")


def sample_identity(corpus_seed: int, identity_id: str) -> IdentitySpec:
    rng = identity_stream(corpus_seed, identity_id)
    g = rng.generator
    skin = hsv_to_rgb_u8(g.uniform(15, 40), g.uniform(0.25, 0.45), g.uniform(0.62, 0.92))
    # Saturated, well-spread hues so hair color carries a clean signal.
    hair = hsv_to_rgb_u8(g.uniform(0, 360), g.uniform(0.6, 0.95), g.uniform(0.35, 0.85))
    clothing = hsv_to_rgb_u8(g.uniform(0, 360), g.uniform(0.35, 0.85), g.uniform(0.3, 0.8))
    return IdentitySpec(
        identity_id=identity_id,
        face_ax=float(g.uniform(0.15, 0.20)),
        face_ay=float(g.uniform(0.20, 0.26)),
        skin_color=skin,
        hair_length_class=str(g.choice(np.array(HAIR_LENGTH_CLASSES))),
        hair_width=float(g.uniform(1.12, 1.32)),
        hair_color=hair,
        bang_height=float(g.uniform(0.15, 0.75)),
        curl_amplitude=float(g.uniform(0.0, 0.06)),
        curl_frequency=float(g.uniform(1.5, 4.0)),
        clothing_color=clothing,
        background_seed=int(g.integers(0, 2**31 - 1)),
    )


def sample_view_params(corpus_seed: int, identity_id: str, view_index: int) -> tuple[float, float]:
    rng = seeded_rng(corpus_seed, f"corpus/view/{identity_id}/{view_index}")
    g = rng.generator
    yaw = float(g.uniform(-30.0, 30.0))
    scale = float(g.uniform(0.8, 1.2))
    return yaw, scale
