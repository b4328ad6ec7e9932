"""Corpus container, deterministic generation, and pair sampling."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..core.errors import ConfigError, ContractError, ExhaustionError, InputError
from ..core.rng import RandomStream
from ..core.types import CHIN_INDEX, LEFT_JAW_INDEX, RIGHT_JAW_INDEX
from .identity import IdentitySpec, sample_identity, sample_view_params
from .render import ViewRecord, render_view

RECONSTRUCTION = "reconstruction"
TRANSFER = "transfer"


@dataclass(frozen=True)
class PairSample:
    source: ViewRecord
    reference: ViewRecord
    task: str

    def __post_init__(self):
        if self.task == RECONSTRUCTION:
            if self.source.identity_id != self.reference.identity_id:
                raise ContractError("reconstruction pair must share one identity")
            if self.source.view_id == self.reference.view_id:
                raise ContractError("reconstruction pair needs two distinct views")
        elif self.task == TRANSFER:
            if self.source.identity_id == self.reference.identity_id:
                raise ContractError("transfer pair needs two distinct identities")
        else:
            raise ContractError(f"unknown pair task {self.task!r}")


@dataclass
class CorpusHandle:
    seed: int
    image_size: int
    identities: list = field(default_factory=list)  # list[IdentitySpec]
    records: dict = field(default_factory=dict)     # (identity_id, view_id) -> ViewRecord

    @property
    def identity_ids(self) -> list:
        return [spec.identity_id for spec in self.identities]

    def views(self, identity_id: str) -> list:
        return sorted(v for (i, v) in self.records if i == identity_id)

    def get(self, identity_id: str, view_id: str) -> ViewRecord:
        key = (identity_id, view_id)
        if key not in self.records:
            raise InputError(f"no view {view_id!r} for identity {identity_id!r}")
        return self.records[key]

    def all_records(self) -> list:
        return [self.records[k] for k in sorted(self.records)]


def validate_view_record(rec: ViewRecord) -> None:
    """Assert the cross-annotation invariants of a view record."""
    hair = rec.hair_mask.as_bool()
    face = rec.face_mask.as_bool()
    fg = rec.fg_mask.as_bool()
    if (hair & ~fg).any():
        raise InputError("hair_mask must be contained in fg_mask")
    if (face & ~fg).any():
        raise InputError("face_mask must be contained in fg_mask")
    if (face & hair).any():
        raise InputError("face_mask and hair_mask must be disjoint")
    parts = rec.densepose.part_plane()
    if ((parts > 0) != fg).any():
        raise InputError("dense-pose part index must be nonzero exactly on fg_mask")
    rec.landmarks.validate_bounds(rec.image.height, rec.image.width)
    if not face.any():
        raise InputError("face_mask is empty")
    ys, xs = np.nonzero(face)
    chin = rec.landmarks.points[CHIN_INDEX]
    if not (xs.min() <= chin[0] <= xs.max() and ys.min() <= chin[1] <= ys.max()):
        raise InputError("chin landmark must lie inside the face bounding box")
    left = rec.landmarks.points[LEFT_JAW_INDEX, 0]
    right = rec.landmarks.points[RIGHT_JAW_INDEX, 0]
    if left > xs.min() + 1.0 or right < xs.max() - 1.0:
        raise InputError("jaw landmarks 0/16 must horizontally bracket the face")


def _render_identity(seed: int, spec: IdentitySpec, views_per_identity: int,
                     image_size: int) -> list:
    out = []
    for j in range(views_per_identity):
        yaw, scale = sample_view_params(seed, spec.identity_id, j)
        rec = render_view(spec, f"v{j:02d}", yaw, scale, image_size)
        validate_view_record(rec)
        out.append(rec)
    return out


def generate_corpus(n_identities: int, views_per_identity: int, image_size: int,
                    seed: int, workers: int = 1) -> CorpusHandle:
    """Render a deterministic multi-view corpus with exact annotations."""
    if n_identities < 2 or views_per_identity < 2:
        raise ConfigError("corpus needs >= 2 identities and >= 2 views per identity")
    if image_size < 16:
        raise ConfigError("image_size must be >= 16 for the renderer")
    specs = [sample_identity(seed, f"c{seed}i{i:03d}") for i in range(n_identities)]
    corpus = CorpusHandle(seed=seed, image_size=image_size, identities=specs)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            all_views = list(
                pool.map(lambda s: _render_identity(seed, s, views_per_identity, image_size), specs)
            )
    else:
        all_views = [_render_identity(seed, s, views_per_identity, image_size) for s in specs]
    for spec, views in zip(specs, all_views):
        for rec in views:
            corpus.records[(spec.identity_id, rec.view_id)] = rec
    return corpus


def sample_training_pair(corpus: CorpusHandle, rng: RandomStream) -> PairSample:
    """Uniformly pick an identity with >= 2 views, then an ordered pair of
    distinct views: same identity and hairstyle, different head pose."""
    eligible = [i for i in corpus.identity_ids if len(corpus.views(i)) >= 2]
    if not eligible:
        raise ExhaustionError("no identity has two views to pair")
    identity = eligible[int(rng.integers(0, len(eligible)))]
    views = corpus.views(identity)
    a, b = rng.choice(len(views), size=2, replace=False)
    return PairSample(
        source=corpus.get(identity, views[int(a)]),
        reference=corpus.get(identity, views[int(b)]),
        task=RECONSTRUCTION,
    )


def _reconstruction_pairs(corpus: CorpusHandle) -> list:
    pairs = []
    for identity in corpus.identity_ids:
        views = corpus.views(identity)
        for a in views:
            for b in views:
                if a != b:
                    pairs.append((identity, a, identity, b))
    return pairs


def _transfer_pairs(corpus: CorpusHandle) -> list:
    pairs = []
    ids = corpus.identity_ids
    for src in ids:
        for ref in ids:
            if src == ref:
                continue
            for a in corpus.views(src):
                for b in corpus.views(ref):
                    pairs.append((src, a, ref, b))
    return pairs


def sample_eval_pairs(corpus: CorpusHandle, task: str, n: int, rng: RandomStream) -> list:
    """Draw n distinct evaluation pairs without replacement."""
    if task == RECONSTRUCTION:
        universe = _reconstruction_pairs(corpus)
    elif task == TRANSFER:
        universe = _transfer_pairs(corpus)
    else:
        raise ContractError(f"unknown task {task!r}")
    if len(universe) < n:
        raise ExhaustionError(
            f"corpus supports only {len(universe)} distinct {task} pairs, need {n}"
        )
    idx = rng.choice(len(universe), size=n, replace=False)
    out = []
    for k in np.sort(idx):
        src_id, src_v, ref_id, ref_v = universe[int(k)]
        out.append(PairSample(corpus.get(src_id, src_v), corpus.get(ref_id, ref_v), task))
    return out
