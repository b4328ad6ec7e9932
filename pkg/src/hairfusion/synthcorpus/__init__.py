from .corpus import (
    RECONSTRUCTION,
    TRANSFER,
    CorpusHandle,
    PairSample,
    generate_corpus,
    sample_eval_pairs,
    sample_training_pair,
    validate_view_record,
)
from .diskio import corpus_equal, read_dataset, write_dataset
from .identity import IdentitySpec, sample_identity, sample_view_params
from .render import ViewRecord, removal_box_x, render_view

__all__ = [
    "RECONSTRUCTION",
    "TRANSFER",
    "CorpusHandle",
    "IdentitySpec",
    "PairSample",
    "ViewRecord",
    "corpus_equal",
    "generate_corpus",
    "read_dataset",
    "removal_box_x",
    "render_view",
    "sample_eval_pairs",
    "sample_identity",
    "sample_training_pair",
    "sample_view_params",
    "validate_view_record",
    "write_dataset",
]
