"""On-disk dataset layout shared by the synthetic corpus and real data.

    dataset/identities/<id>/views/<view>/
        image.png  hair_mask.png  face_mask.png  fg_mask.png
        landmarks.json  densepose.bin  densepose.meta.json

Masks are 8-bit PNGs with values {0, 255}. A root-level ``corpus.json``
carries generator parameters and per-view yaw/scale; it is optional so
that externally annotated real data can be dropped into the same layout.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from PIL import Image

from ..core.errors import DatasetParseError
from ..core.tensorio import read_tensor, write_tensor
from ..core.types import BinaryMask, DensePoseIUV, ImageRGB, Landmarks68
from .identity import IdentitySpec
from .render import ViewRecord
from .corpus import CorpusHandle

FORMAT_VERSION = 1
MASK_FILES = ("hair_mask.png", "face_mask.png", "fg_mask.png")


def _view_dir(root: Path, identity_id: str, view_id: str) -> Path:
    return root / "identities" / identity_id / "views" / view_id


def write_dataset(corpus: CorpusHandle, path: str | Path) -> Path:
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    views_meta: dict[str, list] = {}
    for (identity_id, view_id), rec in sorted(corpus.records.items()):
        d = _view_dir(root, identity_id, view_id)
        d.mkdir(parents=True, exist_ok=True)
        Image.fromarray(rec.image.to_uint8(), mode="RGB").save(d / "image.png")
        for name, mask in zip(MASK_FILES, (rec.hair_mask, rec.face_mask, rec.fg_mask)):
            Image.fromarray(mask.data * 255, mode="L").save(d / name)
        (d / "landmarks.json").write_text(
            json.dumps({"points": rec.landmarks.points.tolist()}) + "\n", encoding="utf-8"
        )
        write_tensor(d / "densepose.bin", rec.densepose.data)
        views_meta.setdefault(identity_id, []).append(
            {"view_id": view_id, "yaw": rec.yaw, "scale": rec.scale}
        )
    meta = {
        "format_version": FORMAT_VERSION,
        "seed": corpus.seed,
        "image_size": corpus.image_size,
        "identities": [spec.to_dict() for spec in corpus.identities],
        "views": views_meta,
    }
    (root / "corpus.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n",
                                      encoding="utf-8")
    return root


def _read_mask(path: Path) -> BinaryMask:
    if not path.exists():
        raise DatasetParseError(f"missing mask file: {path}")
    arr = np.asarray(Image.open(path).convert("L"))
    if not np.isin(arr, (0, 255)).all():
        raise DatasetParseError(f"{path}: mask values must be 0 or 255")
    return BinaryMask((arr // 255).astype(np.uint8))


def _read_view(d: Path, identity_id: str, view_id: str, meta: dict | None) -> ViewRecord:
    img_path = d / "image.png"
    if not img_path.exists():
        raise DatasetParseError(f"missing image file: {img_path}")
    image = ImageRGB.from_uint8(np.asarray(Image.open(img_path).convert("RGB")))
    hair, face, fg = (_read_mask(d / name) for name in MASK_FILES)
    lm_path = d / "landmarks.json"
    if not lm_path.exists():
        raise DatasetParseError(f"missing landmarks file: {lm_path}")
    try:
        lm_data = json.loads(lm_path.read_text(encoding="utf-8"))
        landmarks = Landmarks68(np.asarray(lm_data["points"], dtype=np.float64))
    except (json.JSONDecodeError, KeyError, ValueError) as e:
        raise DatasetParseError(f"malformed landmarks file {lm_path}: {e}") from e
    dp = DensePoseIUV(read_tensor(d / "densepose.bin", d / "densepose.meta.json"))
    yaw = float(meta["yaw"]) if meta else 0.0
    scale = float(meta["scale"]) if meta else 1.0
    return ViewRecord(
        identity_id=identity_id, view_id=view_id, yaw=yaw, scale=scale,
        image=image, hair_mask=hair, face_mask=face, fg_mask=fg,
        landmarks=landmarks, densepose=dp,
    )


def read_dataset(path: str | Path) -> CorpusHandle:
    root = Path(path)
    identities_dir = root / "identities"
    if not identities_dir.is_dir():
        raise DatasetParseError(f"not a dataset directory (no identities/): {root}")
    meta = None
    meta_path = root / "corpus.json"
    if meta_path.exists():
        try:
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise DatasetParseError(f"malformed corpus index {meta_path}: {e}") from e
        if meta.get("format_version") != FORMAT_VERSION:
            raise DatasetParseError(
                f"{meta_path}: unsupported format_version {meta.get('format_version')!r}"
            )

    corpus = CorpusHandle(
        seed=int(meta["seed"]) if meta else 0,
        image_size=int(meta["image_size"]) if meta else 0,
    )
    if meta:
        corpus.identities = [IdentitySpec.from_dict(d) for d in meta["identities"]]
    known_ids = {s.identity_id for s in corpus.identities}

    view_meta = meta.get("views", {}) if meta else {}
    for id_dir in sorted(identities_dir.iterdir()):
        if not id_dir.is_dir():
            continue
        identity_id = id_dir.name
        per_view = {m["view_id"]: m for m in view_meta.get(identity_id, [])}
        views_dir = id_dir / "views"
        if not views_dir.is_dir():
            raise DatasetParseError(f"missing views directory: {views_dir}")
        for v_dir in sorted(views_dir.iterdir()):
            if not v_dir.is_dir():
                continue
            rec = _read_view(v_dir, identity_id, v_dir.name, per_view.get(v_dir.name))
            corpus.records[(identity_id, v_dir.name)] = rec
            if corpus.image_size == 0:
                corpus.image_size = rec.image.height
        if identity_id not in known_ids:
            # Real-data adapter path: no generator parameters available.
            pass
    return corpus


def corpus_equal(a: CorpusHandle, b: CorpusHandle) -> bool:
    if sorted(a.records) != sorted(b.records):
        return False
    for key in a.records:
        ra, rb = a.records[key], b.records[key]
        if not (
            np.array_equal(ra.image.data, rb.image.data)
            and np.array_equal(ra.hair_mask.data, rb.hair_mask.data)
            and np.array_equal(ra.face_mask.data, rb.face_mask.data)
            and np.array_equal(ra.fg_mask.data, rb.fg_mask.data)
            and np.array_equal(ra.landmarks.points, rb.landmarks.points)
            and np.array_equal(ra.densepose.data, rb.densepose.data)
            and ra.yaw == rb.yaw
            and ra.scale == rb.scale
        ):
            return False
    return True
