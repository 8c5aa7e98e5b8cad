"""Raw-corpus annotation exporter producing annotated-token JSONL."""

from .backends import (
    AnnotationError,
    BackendUnavailable,
    RuleLexiconBackend,
    SpacyBackend,
    get_backend,
    tokenize,
)
from .exporter import RawCorpus, annotate, read_raw_corpus, validate_record

__all__ = [
    "AnnotationError",
    "BackendUnavailable",
    "RawCorpus",
    "RuleLexiconBackend",
    "SpacyBackend",
    "annotate",
    "get_backend",
    "read_raw_corpus",
    "tokenize",
    "validate_record",
]

__version__ = "0.1.0"
