"""Flat-shaded parametric 2-D head renderer with pixel-exact annotations.

Yaw is rendered as a horizontal shear plus compression of the far face
side, so hair/face overlap genuinely changes with pose. Every region is
evaluated analytically on the pixel grid, which makes masks, landmarks
and dense-pose maps exact by construction rather than estimated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core.rng import seeded_rng
from ..core.types import BinaryMask, DensePoseIUV, ImageRGB, Landmarks68
from .identity import IdentitySpec, hsv_to_rgb_u8

PART_BG, PART_HEAD, PART_NECK, PART_TORSO = 0, 1, 2, 3


@dataclass(frozen=True)
class ViewRecord:
    identity_id: str
    view_id: str
    yaw: float
    scale: float
    image: ImageRGB
    hair_mask: BinaryMask
    face_mask: BinaryMask
    fg_mask: BinaryMask
    landmarks: Landmarks68
    densepose: DensePoseIUV


@dataclass
class _Geometry:
    size: int
    cx: float
    cy: float
    ax_left: float
    ax_right: float
    ay: float
    shear: float
    sin_yaw: float

    def sheared_x(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Map image x back to geometry space."""
        return xs - self.shear * (ys - self.cy)

    def to_image_x(self, x_geom: float, y: float) -> float:
        return x_geom + self.shear * (y - self.cy)

    def side_ax(self, x_geom) -> np.ndarray:
        return np.where(x_geom < self.cx, self.ax_left, self.ax_right)


def _make_geometry(spec: IdentitySpec, yaw: float, scale: float, size: int) -> _Geometry:
    sin_yaw = math.sin(math.radians(yaw))
    ax = spec.face_ax * size * scale
    ay = spec.face_ay * size * scale
    squeeze = 1.0 - 0.35 * abs(sin_yaw)
    # Positive yaw turns the head toward image-right: the left side is far.
    ax_left = ax * (squeeze if sin_yaw > 0 else 1.0)
    ax_right = ax * (squeeze if sin_yaw < 0 else 1.0)
    return _Geometry(
        size=size,
        cx=0.5 * size + 0.06 * size * sin_yaw,
        cy=0.40 * size,
        ax_left=ax_left,
        ax_right=ax_right,
        ay=ay,
        shear=0.6 * sin_yaw,
        sin_yaw=sin_yaw,
    )


def _grid(size: int):
    ys, xs = np.mgrid[0:size, 0:size].astype(np.float64)
    return xs + 0.5, ys + 0.5  # pixel centers


def _face_region(geo: _Geometry, xs, ys) -> np.ndarray:
    xg = geo.sheared_x(xs, ys)
    a = geo.side_ax(xg)
    return ((xg - geo.cx) / a) ** 2 + ((ys - geo.cy) / geo.ay) ** 2 <= 1.0


def _hair_region(spec: IdentitySpec, geo: _Geometry, xs, ys, face: np.ndarray,
                 box_x: tuple[float, float]) -> np.ndarray:
    xg = geo.sheared_x(xs, ys)
    a = geo.side_ax(xg)
    w = spec.hair_width
    dome = (((xg - geo.cx) / (a * w)) ** 2 + ((ys - geo.cy) / (geo.ay * w)) ** 2 <= 1.0) & (
        ys <= geo.cy + 0.15 * geo.ay
    )
    bottom_by_class = {"short": 0.35, "medium": 1.15, "long": 1.5}
    base_bottom = geo.cy + bottom_by_class[spec.hair_length_class] * geo.ay
    curl = spec.curl_amplitude * geo.size * np.sin(
        2.0 * np.pi * spec.curl_frequency * (xg - geo.cx) / max(geo.ax_left + geo.ax_right, 1.0)
    )
    strips = (
        (np.abs(xg - geo.cx) >= a * 0.80)
        & (np.abs(xg - geo.cx) <= a * w)
        & (ys >= geo.cy - 0.3 * geo.ay)
        & (ys <= base_bottom + curl)
    )
    brow_y = geo.cy - 0.30 * geo.ay
    face_top = geo.cy - geo.ay
    bang_bottom = brow_y - (1.0 - spec.bang_height) * (brow_y - face_top)
    bangs = face & (ys <= bang_bottom)
    hair = (dome & ~face) | (strips & ~face) | bangs
    # Keep hair inside the horizontal extent that the agnostic removal box
    # will cover (the box only depends on the face landmarks, so it is
    # known before hair is drawn); this keeps box-removal a superset of
    # hair removal for every pose.
    hair &= (xs >= box_x[0]) & (xs <= box_x[1])
    return hair


def _neck_region(geo: _Geometry, xs, ys, torso_top: float) -> np.ndarray:
    xg = geo.sheared_x(xs, ys)
    return (
        (np.abs(xg - geo.cx) <= 0.32 * (geo.ax_left + geo.ax_right) / 2.0)
        & (ys >= geo.cy + 0.75 * geo.ay)
        & (ys <= torso_top + 1.0)
    )


def _torso_region(geo: _Geometry, xs, ys, torso_top: float) -> np.ndarray:
    half = 0.95 * (geo.ax_left + geo.ax_right)
    return (np.abs(xs - geo.size * 0.5) <= half) & (ys >= torso_top)


def _background(spec: IdentitySpec, size: int) -> np.ndarray:
    g = seeded_rng(spec.background_seed, "background").generator
    h1 = g.uniform(0, 360)
    c1 = np.array(hsv_to_rgb_u8(h1, g.uniform(0.05, 0.25), g.uniform(0.35, 0.7)), dtype=np.float64)
    c2 = np.array(hsv_to_rgb_u8((h1 + g.uniform(20, 90)) % 360, g.uniform(0.05, 0.25),
                                g.uniform(0.4, 0.8)), dtype=np.float64)
    freq = g.uniform(1.0, 4.0)
    phase = g.uniform(0, 2 * np.pi)
    ys, xs = np.mgrid[0:size, 0:size].astype(np.float64)
    t = ys / max(size - 1, 1)
    base = c1[None, None, :] * (1 - t)[..., None] + c2[None, None, :] * t[..., None]
    ripple = 12.0 * np.sin(2 * np.pi * freq * xs / size + phase)
    return np.clip(base + ripple[..., None], 0, 255).astype(np.uint8)


def _paint(img: np.ndarray, region: np.ndarray, color) -> None:
    img[region] = np.asarray(color, dtype=np.uint8)


def _jaw_from_mask(face: np.ndarray, geo: _Geometry) -> np.ndarray:
    """17 jaw points traced on the face region: extremes for 0/8/16, ray
    casting from the face center for the rest."""
    ys_idx, xs_idx = np.nonzero(face)
    pts = np.zeros((17, 2), dtype=np.float64)
    x_min, x_max = xs_idx.min(), xs_idx.max()
    y_max = ys_idx.max()
    pts[0] = (x_min, np.median(ys_idx[xs_idx == x_min]))
    pts[16] = (x_max, np.median(ys_idx[xs_idx == x_max]))
    pts[8] = (np.median(xs_idx[ys_idx == y_max]), y_max)
    size = face.shape[0]
    ts = np.arange(0.0, size, 0.25)
    for j in list(range(1, 8)) + list(range(9, 16)):
        ang = math.radians(180.0 - 180.0 * j / 16.0)
        dx, dy = math.cos(ang), math.sin(ang)  # y down: sin > 0 goes down
        px = geo.cx + ts * dx
        py = geo.cy + ts * dy
        ix = np.clip(px.astype(int), 0, size - 1)
        iy = np.clip(py.astype(int), 0, size - 1)
        inside = face[iy, ix] & (px >= 0) & (px < size) & (py >= 0) & (py < size)
        if not inside.any():
            pts[j] = (geo.cx, geo.cy)
            continue
        k = np.nonzero(inside)[0].max()
        pts[j] = (px[k], py[k])
    return pts


def _feature_layout(geo: _Geometry):
    eye_y = geo.cy - 0.10 * geo.ay
    brow_y = geo.cy - 0.30 * geo.ay
    nose_tip_y = geo.cy + 0.22 * geo.ay
    mouth_y = geo.cy + 0.55 * geo.ay
    eye_dx_l = 0.45 * geo.ax_left
    eye_dx_r = 0.45 * geo.ax_right
    mouth_cx = geo.cx + 0.18 * geo.sin_yaw * (geo.ax_left + geo.ax_right) / 2.0
    return eye_y, brow_y, nose_tip_y, mouth_y, eye_dx_l, eye_dx_r, mouth_cx


def _landmarks(geo: _Geometry, face: np.ndarray) -> Landmarks68:
    size = geo.size
    eye_y, brow_y, nose_tip_y, mouth_y, eye_dx_l, eye_dx_r, mouth_cx = _feature_layout(geo)
    pts = np.zeros((68, 2), dtype=np.float64)
    pts[0:17] = _jaw_from_mask(face, geo)

    def sx(x_geom, y):
        return geo.to_image_x(x_geom, y)

    # Eyebrows 17-26: five points per side with a small arch.
    for i in range(5):
        f = i / 4.0
        arch = 0.08 * geo.ay * (1.0 - (2 * f - 1) ** 2)
        xl = geo.cx - eye_dx_l - 0.30 * geo.ax_left + f * 0.60 * geo.ax_left
        xr = geo.cx + eye_dx_r - 0.30 * geo.ax_right + f * 0.60 * geo.ax_right
        pts[17 + i] = (sx(xl, brow_y - arch), brow_y - arch)
        pts[22 + i] = (sx(xr, brow_y - arch), brow_y - arch)
    # Nose 27-35: bridge then base arc.
    for i in range(4):
        y = eye_y + (nose_tip_y - eye_y) * i / 3.0
        pts[27 + i] = (sx(mouth_cx, y), y)
    base_y = nose_tip_y + 0.04 * geo.ay
    for i, off in enumerate((-0.16, -0.08, 0.0, 0.08, 0.16)):
        x = mouth_cx + off * (geo.ax_left if off < 0 else geo.ax_right)
        y = base_y + (0.02 * geo.ay if off == 0.0 else 0.0)
        pts[31 + i] = (sx(x, y), y)
    # Eyes 36-47: hexagons.
    for base, ecx, half in ((36, geo.cx - eye_dx_l, 0.16 * geo.ax_left),
                            (42, geo.cx + eye_dx_r, 0.16 * geo.ax_right)):
        v = 0.06 * geo.ay
        hexagon = [
            (ecx - half, eye_y), (ecx - half / 2, eye_y - v), (ecx + half / 2, eye_y - v),
            (ecx + half, eye_y), (ecx + half / 2, eye_y + v), (ecx - half / 2, eye_y + v),
        ]
        for i, (x, y) in enumerate(hexagon):
            pts[base + i] = (sx(x, y), y)
    # Lips 48-67: outer ring of 12, inner ring of 8.
    rx = 0.32 * (geo.ax_left + geo.ax_right) / 2.0
    ry = 0.10 * geo.ay
    for i in range(12):
        ang = 2 * np.pi * i / 12.0
        x, y = mouth_cx + rx * np.cos(ang), mouth_y + ry * np.sin(ang)
        pts[48 + i] = (sx(x, y), y)
    for i in range(8):
        ang = 2 * np.pi * i / 8.0
        x, y = mouth_cx + 0.6 * rx * np.cos(ang), mouth_y + 0.5 * ry * np.sin(ang)
        pts[60 + i] = (sx(x, y), y)
    pts[:, 0] = np.clip(pts[:, 0], 0, size - 1)
    pts[:, 1] = np.clip(pts[:, 1], 0, size - 1)
    return Landmarks68(pts)


def removal_box_x(landmarks: Landmarks68, size: int) -> tuple[float, float]:
    """Horizontal extent of the hair-removal box implied by the jaw: the
    jaw interval widened by half a face width on each side, clamped."""
    left, right = landmarks.left_jaw_x, landmarks.right_jaw_x
    w_face = right - left
    return max(0.0, left - 0.5 * w_face), min(float(size - 1), right + 0.5 * w_face)


def _densepose(geo: _Geometry, xs, ys, head: np.ndarray, neck: np.ndarray,
               torso: np.ndarray) -> DensePoseIUV:
    size = geo.size
    xg = geo.sheared_x(xs, ys)
    parts = np.zeros((size, size), dtype=np.int32)
    parts[torso] = PART_TORSO
    parts[neck] = PART_NECK
    parts[head] = PART_HEAD
    u = np.zeros((size, size), dtype=np.float64)
    v = np.zeros((size, size), dtype=np.float64)
    span = 1.6 * (geo.ax_left + geo.ax_right)
    u_head = 0.5 + (xg - geo.cx) / span + 0.30 * geo.sin_yaw
    v_head = 0.5 + (ys - geo.cy) / (3.2 * geo.ay)
    u[head] = u_head[head]
    v[head] = v_head[head]
    for region, part in ((neck, PART_NECK), (torso, PART_TORSO)):
        if region.any():
            u[region] = (xs[region] - 0.5 * size) / size + 0.5
            v[region] = ys[region] / size
    u = np.clip(u, 0.0, 1.0).astype(np.float32)
    v = np.clip(v, 0.0, 1.0).astype(np.float32)
    return DensePoseIUV.from_parts(parts, u, v)


def render_view(spec: IdentitySpec, view_id: str, yaw: float, scale: float,
                size: int, include_hair: bool = True) -> ViewRecord:
    geo = _make_geometry(spec, yaw, scale, size)
    xs, ys = _grid(size)
    face_region = _face_region(geo, xs, ys)
    if not face_region.any():
        raise ValueError("face region rendered empty; parameters out of range")
    landmarks = _landmarks(geo, face_region)
    box_x = removal_box_x(landmarks, size)
    if include_hair:
        hair = _hair_region(spec, geo, xs, ys, face_region, box_x)
    else:
        hair = np.zeros_like(face_region)
    face = face_region & ~hair
    torso_top = geo.cy + geo.ay + 0.10 * size
    neck = _neck_region(geo, xs, ys, torso_top) & ~face_region & ~hair
    torso = _torso_region(geo, xs, ys, torso_top) & ~face_region & ~hair & ~neck
    head = face_region | hair
    fg = head | neck | torso

    img = _background(spec, size).copy()
    _paint(img, torso, spec.clothing_color)
    stripe = (np.floor(ys / 3.0).astype(int) % 2 == 0) & torso
    _paint(img, stripe, tuple(max(0, c - 18) for c in spec.clothing_color))
    _paint(img, neck, tuple(min(255, int(c * 0.92)) for c in spec.skin_color))
    _paint(img, face, spec.skin_color)

    # Facial features (image only; masks are untouched).
    eye_y, brow_y, nose_tip_y, mouth_y, eye_dx_l, eye_dx_r, mouth_cx = _feature_layout(geo)
    xg = geo.sheared_x(xs, ys)
    dark = tuple(int(c * 0.30) for c in spec.skin_color)
    for ecx, half in ((geo.cx - eye_dx_l, 0.10 * geo.ax_left),
                      (geo.cx + eye_dx_r, 0.10 * geo.ax_right)):
        iris = ((xg - ecx) ** 2 + (ys - eye_y) ** 2) <= half**2
        _paint(img, iris & face, (40, 36, 34))
    for bcx, bhalf in ((geo.cx - eye_dx_l, 0.28 * geo.ax_left),
                       (geo.cx + eye_dx_r, 0.28 * geo.ax_right)):
        brow = (np.abs(xg - bcx) <= bhalf) & (np.abs(ys - (brow_y - 0.03 * geo.ay)) <= 0.55)
        _paint(img, brow & face, dark)
    nose = (np.abs(xg - mouth_cx) <= 0.6) & (ys >= eye_y) & (ys <= nose_tip_y)
    _paint(img, nose & face, dark)
    mouth = (((xg - mouth_cx) / (0.30 * (geo.ax_left + geo.ax_right) / 2.0)) ** 2
             + ((ys - mouth_y) / (0.08 * geo.ay)) ** 2) <= 1.0
    _paint(img, mouth & face, hsv_to_rgb_u8(5.0, 0.55, 0.72))

    if include_hair:
        _paint(img, hair, spec.hair_color)
        # Darker bands scale all channels equally so the hue stays exact.
        bands = (np.floor((ys + 2.0 * np.sin(xs / 4.0)) / 2.5).astype(int) % 3 == 0) & hair
        _paint(img, bands, tuple(int(c * 0.85) for c in spec.hair_color))

    record = ViewRecord(
        identity_id=spec.identity_id,
        view_id=view_id,
        yaw=float(yaw),
        scale=float(scale),
        image=ImageRGB.from_uint8(img),
        hair_mask=BinaryMask.from_bool(hair),
        face_mask=BinaryMask.from_bool(face),
        fg_mask=BinaryMask.from_bool(fg),
        landmarks=landmarks,
        densepose=_densepose(geo, xs, ys, head, neck, torso),
    )
    return record
