"""One-shot export of raw sentence corpora to annotated-token JSONL.

Input is UTF-8 text with one sentence per line; blank lines are skipped and
lines the backend cannot annotate are skipped with a warning. Output is one
JSON object per sentence, ``{"tokens": [{text, lemma, pos, tag, dep, head},
...]}``, preceded by a ``# annotator: ...`` comment recording the backend
and model version. Every record is structurally validated before it is
written: at least one token, in-range heads, and exactly one root token that
is its own head.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

from .backends import AnnotationError, RuleLexiconBackend

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RawCorpus:
    """Non-blank input lines with their original 1-based line numbers."""

    lines: tuple[tuple[int, str], ...]


def read_raw_corpus(path: str) -> RawCorpus:
    with open(path, encoding="utf-8") as fh:
        lines = tuple(
            (lineno, line.strip())
            for lineno, line in enumerate(fh, start=1)
            if line.strip()
        )
    return RawCorpus(lines)


def validate_record(tokens: list[dict]) -> None:
    if not tokens:
        raise AnnotationError("no tokens")
    n = len(tokens)
    roots = [i for i, t in enumerate(tokens) if t["dep"] == "ROOT"]
    if len(roots) != 1:
        raise AnnotationError(f"{len(roots)} root tokens, expected exactly 1")
    if tokens[roots[0]]["head"] != roots[0]:
        raise AnnotationError("root token is not its own head")
    for i, t in enumerate(tokens):
        if not 0 <= t["head"] < n:
            raise AnnotationError(f"token {i} head {t['head']} out of range")
        if i != roots[0] and t["head"] == i:
            raise AnnotationError(f"non-root token {i} is its own head")


def annotate(input_path: str, output_path: str, backend=None) -> int:
    """Annotate every sentence of input_path; return the count written."""
    backend = backend if backend is not None else RuleLexiconBackend()
    corpus = read_raw_corpus(input_path)
    written = 0
    with open(output_path, "w", encoding="utf-8") as fh:
        fh.write(f"# annotator: {backend.provenance}\n")
        for lineno, line in corpus.lines:
            try:
                tokens = backend.annotate_line(line)
                validate_record(tokens)
            except AnnotationError as exc:
                logger.warning("line %d skipped: %s", lineno, exc)
                continue
            fh.write(json.dumps({"tokens": tokens}, ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")
            written += 1
    return written
