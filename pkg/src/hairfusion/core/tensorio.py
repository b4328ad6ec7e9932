"""Exact binary tensor format: flat little-endian float32 with a JSON
sidecar ``{"shape": [...], "dtype": "f32le"}``. Used for dense-pose maps
and checkpoint weights so floats round-trip bit-exactly."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DatasetParseError

DTYPE_TAG = "f32le"


def write_tensor(path: str | Path, array: np.ndarray) -> None:
    path = Path(path)
    arr = np.ascontiguousarray(array, dtype="<f4")
    path.write_bytes(arr.tobytes())
    meta = {"shape": list(arr.shape), "dtype": DTYPE_TAG}
    path.with_suffix(".meta.json").write_text(json.dumps(meta) + "\n", encoding="utf-8")


def read_tensor(path: str | Path, meta_path: str | Path | None = None) -> np.ndarray:
    path = Path(path)
    meta_path = Path(meta_path) if meta_path else path.with_suffix(".meta.json")
    if not path.exists():
        raise DatasetParseError(f"missing tensor file: {path}")
    if not meta_path.exists():
        raise DatasetParseError(f"missing tensor sidecar: {meta_path}")
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise DatasetParseError(f"malformed tensor sidecar {meta_path}: {e}") from e
    if meta.get("dtype") != DTYPE_TAG:
        raise DatasetParseError(f"{meta_path}: unsupported dtype {meta.get('dtype')!r}")
    shape = tuple(int(s) for s in meta.get("shape", ()))
    raw = path.read_bytes()
    expected = int(np.prod(shape)) * 4 if shape else 0
    if len(raw) != expected:
        raise DatasetParseError(
            f"{path}: byte length {len(raw)} does not match shape {list(shape)} "
            f"from {meta_path.name} (expected {expected})"
        )
    return np.frombuffer(raw, dtype="<f4").reshape(shape).copy()
