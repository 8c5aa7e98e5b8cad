"""Seeded distractor transforms for relation-based candidate sets.

Five kinds: not_negation, random_deletion, random_masking, span_deletion,
word_reordering. Randomness is drawn from per-(seed, question_id, kind)
streams derived via SHA-256, so candidate sets are reproducible regardless
of generation order or parallelism.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field

import numpy as np

from .datagen import AnnotatedSentence, Token, detokenize

logger = logging.getLogger(__name__)

KINDS = ("not_negation", "random_deletion", "random_masking", "span_deletion", "word_reordering")

# coarse POS tags random_deletion never removes
PROTECTED_POS = frozenset({"ADJ", "ADV", "DET", "AUX"})

_TERMINAL = frozenset({".", ",", "!", "?"})


class Inapplicable(Exception):
    """The transform cannot apply to this sentence (candidate kind dropped)."""


@dataclass(frozen=True)
class DistractorConfig:
    seed: int = 0
    deletion_prob: float = 0.20
    mask_prob: float = 0.20
    span_lambda: float = 3.0
    span_count: int = 1
    mask_token: str = "[MASK]"
    propagate_conjuncts: bool = False
    max_attempts: int = 32

    def __post_init__(self) -> None:
        for name in ("deletion_prob", "mask_prob"):
            p = getattr(self, name)
            if not 0.0 < p < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {p}")
        if self.span_lambda <= 0.0:
            raise ValueError(f"span_lambda must be positive, got {self.span_lambda}")


@dataclass(frozen=True)
class CandidateSet:
    """Positive sentence id plus up to one distractor text per kind."""

    question_id: str
    positive: str
    distractors: tuple[tuple[str, str], ...]  # (kind, text)


def rng_for(seed: int, key: str) -> np.random.Generator:
    """Deterministic generator for a (seed, key) pair, order-independent."""
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    words = tuple(int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4))
    return np.random.default_rng(np.random.SeedSequence(entropy=seed & (2**64 - 1), spawn_key=words))


def _default_rng(cfg: DistractorConfig, rng: np.random.Generator | None) -> np.random.Generator:
    return rng if rng is not None else np.random.default_rng(cfg.seed)


def _shift_heads(tokens: list[Token], at: int, delta: int) -> list[Token]:
    out = []
    for tok in tokens:
        if tok.head >= at:
            out.append(tok._replace(head=tok.head + delta))
        else:
            out.append(tok)
    return out


def not_negation_sentence(
    sentence: AnnotatedSentence, cfg: DistractorConfig | None = None
) -> AnnotatedSentence:
    """Annotated form of the not_negation output (re-applicable, so the
    involution property can be exercised on annotated inputs)."""
    cfg = cfg or DistractorConfig()
    tokens = list(sentence.tokens)
    not_idx = next((i for i, t in enumerate(tokens) if t.text.lower() == "not"), None)
    if not_idx is not None:
        kept = tokens[:not_idx] + tokens[not_idx + 1 :]
        kept = [t._replace(head=t.head - 1) if t.head > not_idx else t for t in kept]
        return AnnotatedSentence(tuple(kept))
    aux_idx = next((i for i, t in enumerate(tokens) if t.pos == "AUX"), None)
    if aux_idx is None:
        raise Inapplicable("no auxiliary verb and no 'not' present")
    insert_at = [aux_idx + 1]
    if cfg.propagate_conjuncts:
        governed = tokens[aux_idx].head
        for i, tok in enumerate(tokens):
            if tok.dep == "conj" and tok.head == governed and tok.pos in ("VERB", "AUX"):
                insert_at.append(i)
    out = tokens
    for pos in sorted(insert_at, reverse=True):
        n_before = len(out)
        out = _shift_heads(out, pos, 1)
        # attach to the word it negates (the following verb), or to the
        # auxiliary when inserting at the very end
        head = pos + 1 if pos < n_before else pos - 1
        out = out[:pos] + [Token("not", "not", "PART", "RB", "neg", head)] + out[pos:]
    return AnnotatedSentence(tuple(out))


def not_negation(
    sentence: AnnotatedSentence,
    cfg: DistractorConfig | None = None,
    rng: np.random.Generator | None = None,
) -> str:
    """Insert "not" after the first auxiliary; if "not" is already present,
    remove its first occurrence instead."""
    return not_negation_sentence(sentence, cfg).text


def random_deletion(
    sentence: AnnotatedSentence,
    cfg: DistractorConfig,
    rng: np.random.Generator | None = None,
) -> str:
    """Delete each non-protected token independently with deletion_prob.

    Sentences shorter than 5 tokens always lose at least one token; the
    output is never empty.
    """
    rng = _default_rng(cfg, rng)
    tokens = sentence.tokens
    deletable = [i for i, t in enumerate(tokens) if t.pos not in PROTECTED_POS]
    if not deletable:
        raise Inapplicable("all tokens carry protected POS tags")
    force_one = len(tokens) < 5
    if force_one and len(tokens) == len(deletable) == 1:
        raise Inapplicable("single-token sentence cannot lose a token and stay non-empty")
    while True:
        drops = set(np.asarray(deletable)[rng.random(len(deletable)) < cfg.deletion_prob])
        if force_one and not drops:
            continue
        if len(drops) == len(tokens):
            continue
        kept = [t.text for i, t in enumerate(tokens) if i not in drops]
        return detokenize(kept)


def random_masking(
    sentence: AnnotatedSentence,
    cfg: DistractorConfig,
    rng: np.random.Generator | None = None,
) -> str:
    """Replace each token by mask_token with mask_prob; at least one mask is
    forced (redraw until >= 1) so the output differs from the positive."""
    rng = _default_rng(cfg, rng)
    n = len(sentence.tokens)
    while True:
        mask = rng.random(n) < cfg.mask_prob
        if mask.any():
            break
    texts = [cfg.mask_token if mask[i] else t.text for i, t in enumerate(sentence.tokens)]
    return detokenize(texts)


def sample_span_length(rng: np.random.Generator, span_lambda: float) -> int:
    """Raw (unclamped) span length draw; Poisson(span_lambda)."""
    return int(rng.poisson(span_lambda))


def span_deletion(
    sentence: AnnotatedSentence,
    cfg: DistractorConfig,
    rng: np.random.Generator | None = None,
) -> str:
    """Remove one contiguous span with length ~ Poisson(span_lambda), clamped
    to [1, N-1]; the start position is uniform over valid offsets."""
    rng = _default_rng(cfg, rng)
    tokens = sentence.tokens
    n = len(tokens)
    if n < 2:
        raise Inapplicable("need at least 2 tokens to delete a span and keep one")
    length = min(max(sample_span_length(rng, cfg.span_lambda), 1), n - 1)
    start = int(rng.integers(0, n - length + 1))
    kept = [t.text for i, t in enumerate(tokens) if not start <= i < start + length]
    return detokenize(kept)


def word_reordering(
    sentence: AnnotatedSentence,
    cfg: DistractorConfig,
    rng: np.random.Generator | None = None,
) -> str:
    """Rotate the tokens about a uniform pivot in [1, N-1].

    Terminal punctuation stays pinned at the end so realizations read like
    sentences; the token multiset is preserved exactly and the output always
    differs from the input.
    """
    cfg = cfg or DistractorConfig()
    rng = _default_rng(cfg, rng)
    tokens = [t.text for t in sentence.tokens]
    tail: list[str] = []
    while tokens and tokens[-1] in _TERMINAL:
        tail.insert(0, tokens.pop())
    n = len(tokens)
    if n < 2:
        raise Inapplicable("fewer than 2 reorderable tokens")
    if len(set(tokens)) == 1:
        raise Inapplicable("all rotations equal the input")
    while True:
        pivot = int(rng.integers(1, n))
        rotated = tokens[pivot:] + tokens[:pivot]
        if rotated != tokens:
            return detokenize(rotated + tail)


_OPS = {
    "not_negation": not_negation,
    "random_deletion": random_deletion,
    "random_masking": random_masking,
    "span_deletion": span_deletion,
    "word_reordering": word_reordering,
}


def build_candidate_set(
    positive: AnnotatedSentence,
    cfg: DistractorConfig,
    question_id: str,
    positive_id: str | None = None,
) -> CandidateSet:
    """Positive plus up to five distractors, one per applicable kind.

    Each kind resamples up to cfg.max_attempts times if its output collides
    with the positive text, then is dropped with a log entry. Deterministic
    per (cfg.seed, question_id).
    """
    positive_text = positive.text
    if positive_id is None:
        positive_id = question_id + "/b"
    distractors: list[tuple[str, str]] = []
    for kind in KINDS:
        op = _OPS[kind]
        stream = rng_for(cfg.seed, f"{question_id}/{kind}")
        attempts = 1 if kind == "not_negation" else cfg.max_attempts
        accepted = None
        for _ in range(attempts):
            try:
                text = op(positive, cfg, rng=stream)
            except Inapplicable as exc:
                logger.info("%s: %s inapplicable: %s", question_id, kind, exc)
                break
            if text != positive_text:
                accepted = text
                break
        else:
            logger.warning(
                "%s: %s dropped after %d collision attempt(s)", question_id, kind, attempts
            )
        if accepted is not None:
            distractors.append((kind, accepted))
    return CandidateSet(question_id, positive_id, tuple(distractors))


def candidate_set_to_dict(cands: CandidateSet) -> dict:
    return {
        "qid": cands.question_id,
        "positive": cands.positive,
        "distractors": [{"kind": kind, "text": text} for kind, text in cands.distractors],
    }


def candidate_set_from_dict(row: dict) -> CandidateSet:
    return CandidateSet(
        row["qid"],
        row["positive"],
        tuple((d["kind"], d["text"]) for d in row["distractors"]),
    )


def candidate_item_ids(cands: CandidateSet) -> tuple[str, ...]:
    """Item ids of the full candidate list: positive first, then distractors.

    Distractor sentences take ids `{question_id}/d/{kind}`.
    """
    return (cands.positive,) + tuple(
        f"{cands.question_id}/d/{kind}" for kind, _ in cands.distractors
    )
