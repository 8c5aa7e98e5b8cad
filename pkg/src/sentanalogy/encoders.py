"""Sentence encoders built from word vectors: mean, sum over sqrt(N), DCT.

The DCT encoder applies an orthonormal DCT-II independently per embedding
dimension over the word sequence w_0..w_{N-1}:

    c_0[j] = sqrt(1/N) * sum_n w_n[j]
    c_k[j] = sqrt(2/N) * sum_n w_n[j] * cos(pi * (2n+1) * k / (2N)),  k >= 1

and emits the concatenation c_0 || c_1 || ... || c_K. Because c_0 equals
sqrt(N) times the mean vector, cosine similarities between c^0 encodings
match the mean encoder exactly and solver decisions are identical.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .store import EmbeddingTable, OovPolicy

logger = logging.getLogger(__name__)

ENCODE_METHODS = ("avg", "sqrt-sum", "dct")

# punctuation split off token ends during tokenization
TERMINAL_PUNCT = ".,!?"


class OovError(KeyError):
    """A token is missing from the word-vector table under the error policy."""


class EmptySentenceError(ValueError):
    """No tokens remain to encode after OOV filtering."""


@dataclass(frozen=True)
class TokenizedSentence:
    """A sentence id plus its token sequence (length N >= 1)."""

    id: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class DctConfig:
    """Highest DCT coefficient index K; output dimensionality is (K+1)*d."""

    k: int = 0

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"K must be >= 0, got {self.k}")


def tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace, split terminal punctuation off tokens."""
    out: list[str] = []
    for raw in text.lower().split():
        tail: list[str] = []
        while len(raw) > 1 and raw[-1] in TERMINAL_PUNCT:
            tail.append(raw[-1])
            raw = raw[:-1]
        out.append(raw)
        out.extend(reversed(tail))
    return out


def sentence_from_text(sent_id: str, text: str) -> TokenizedSentence:
    return TokenizedSentence(sent_id, tuple(tokenize(text)))


def _retained_vectors(
    sentence: TokenizedSentence, words: EmbeddingTable, policy: OovPolicy
) -> np.ndarray:
    """Word vectors of retained tokens as an (N, d) matrix, per OOV policy."""
    rows: list[np.ndarray] = []
    zero = np.zeros(words.dim)
    oov: list[str] = []
    for token in sentence.tokens:
        if token in words:
            rows.append(words.vector(token))
            continue
        oov.append(token)
        if policy.mode == "error":
            raise OovError(f"token {token!r} of sentence {sentence.id!r} not in vocabulary")
        if policy.mode == "zero-vector":
            rows.append(zero)
        # skip-token: drop it
    if policy.report and oov:
        logger.info("sentence %s: %d OOV token(s): %s", sentence.id, len(oov), " ".join(oov))
    if not rows:
        raise EmptySentenceError(f"sentence {sentence.id!r} has no encodable tokens")
    return np.array(rows)


def encode_average(
    sentence: TokenizedSentence, words: EmbeddingTable, policy: OovPolicy
) -> np.ndarray:
    """Component-wise arithmetic mean of the retained word vectors."""
    return _retained_vectors(sentence, words, policy).mean(axis=0)


def encode_sqrt_sum(
    sentence: TokenizedSentence, words: EmbeddingTable, policy: OovPolicy
) -> np.ndarray:
    """Element-wise sum of retained word vectors divided by sqrt(N)."""
    vectors = _retained_vectors(sentence, words, policy)
    return vectors.sum(axis=0) / np.sqrt(vectors.shape[0])


def dct_basis(k_max: int, n: int) -> np.ndarray:
    """Rows 0..k_max of the orthonormal n-point DCT-II analysis matrix."""
    positions = 2.0 * np.arange(n) + 1.0
    ks = np.arange(k_max + 1)
    basis = np.cos(np.pi * ks[:, None] * positions[None, :] / (2.0 * n))
    basis *= np.sqrt(2.0 / n)
    basis[0] = np.sqrt(1.0 / n)
    return basis


def encode_dct(
    sentence: TokenizedSentence,
    words: EmbeddingTable,
    policy: OovPolicy,
    cfg: DctConfig,
) -> np.ndarray:
    """Concatenated DCT-II coefficients c_0..c_K of the word-vector sequence.

    Sequences shorter than K+1 are zero-padded to K+1 words so the output
    dimensionality is always (K+1)*d.
    """
    vectors = _retained_vectors(sentence, words, policy)
    n = vectors.shape[0]
    if n < cfg.k + 1:
        pad = np.zeros((cfg.k + 1 - n, vectors.shape[1]))
        vectors = np.vstack([vectors, pad])
        n = cfg.k + 1
    return (dct_basis(cfg.k, n) @ vectors).ravel()


def encode_corpus(
    sentences: list[TokenizedSentence],
    words: EmbeddingTable,
    policy: OovPolicy,
    method: str,
    dct: DctConfig | None = None,
) -> EmbeddingTable:
    """Encode sentences into a new EmbeddingTable keyed by sentence id."""
    if method not in ENCODE_METHODS:
        raise ValueError(f"unknown encoding method {method!r}; expected one of {ENCODE_METHODS}")
    if method == "dct" and dct is None:
        dct = DctConfig(0)
    rows = []
    for sentence in sentences:
        if method == "avg":
            rows.append(encode_average(sentence, words, policy))
        elif method == "sqrt-sum":
            rows.append(encode_sqrt_sum(sentence, words, policy))
        else:
            rows.append(encode_dct(sentence, words, policy, dct))
    ids = [s.id for s in sentences]
    dim = rows[0].shape[0] if rows else words.dim * ((dct.k + 1) if method == "dct" else 1)
    matrix = np.array(rows) if rows else np.zeros((0, dim))
    return EmbeddingTable(ids, matrix)
