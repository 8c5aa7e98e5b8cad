"""Fixed-dimension embedding tables with cached L2 norms and text file IO.

Tables serve both word vectors and sentence embeddings. Two text formats:

* word vectors: space-separated ``token v1 ... vd`` lines, optional
  auto-detected ``count dim`` header (a line of exactly two integer fields);
* sentence embeddings: mandatory ``count dim`` header, then
  ``id<TAB>v1 v2 ... vd`` rows.

Floats are printed with 9 significant digits, which round-trips exactly
through load/write/load at that precision.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

OOV_MODES = ("error", "skip-token", "zero-vector")


class FormatError(ValueError):
    """An embedding file violates the expected text format."""


class ZeroNormError(ValueError):
    """A zero-norm vector was used where cosine similarity is undefined."""


@dataclass(frozen=True)
class OovPolicy:
    """How encoders treat tokens missing from the word-vector table.

    mode: "error" aborts on the first OOV token, "skip-token" drops OOV
    tokens from the sequence, "zero-vector" keeps them as zero vectors.
    report: log OOV tokens as they are encountered.
    """

    mode: str = "error"
    report: bool = False

    def __post_init__(self) -> None:
        if self.mode not in OOV_MODES:
            raise ValueError(f"unknown OOV mode {self.mode!r}; expected one of {OOV_MODES}")


class EmbeddingTable:
    """Immutable ordered id -> vector store with eagerly cached L2 norms.

    Zero-norm vectors are legal to store (a zero-vector OOV policy can
    produce them) but illegal as cosine() arguments; the solver maps them
    to similarity 0 instead of calling cosine().
    """

    __slots__ = ("_ids", "_index", "_matrix", "_norms", "_unit")

    def __init__(self, ids: list[str] | tuple[str, ...], matrix: np.ndarray):
        matrix = np.ascontiguousarray(matrix, dtype=np.float64)
        if matrix.ndim != 2:
            raise ValueError(f"matrix must be 2-d (items x dim), got shape {matrix.shape}")
        if matrix.shape[1] < 1:
            raise ValueError("vector dimensionality must be positive")
        if len(ids) != matrix.shape[0]:
            raise ValueError(f"{len(ids)} ids for {matrix.shape[0]} vectors")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("vectors must contain only finite values")
        index: dict[str, int] = {}
        for i, item_id in enumerate(ids):
            if item_id in index:
                raise ValueError(f"duplicate item id {item_id!r}")
            index[item_id] = i
        self._ids = tuple(ids)
        self._index = index
        self._matrix = matrix
        self._norms = np.linalg.norm(matrix, axis=1)
        self._matrix.setflags(write=False)
        self._norms.setflags(write=False)
        self._unit: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, item_id: str) -> bool:
        return item_id in self._index

    @property
    def dim(self) -> int:
        return self._matrix.shape[1]

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def norms(self) -> np.ndarray:
        return self._norms

    def index_of(self, item_id: str) -> int:
        try:
            return self._index[item_id]
        except KeyError:
            raise KeyError(f"unknown item id {item_id!r}") from None

    def vector(self, item_id: str) -> np.ndarray:
        return self._matrix[self.index_of(item_id)]

    def items(self):
        """Iterate (id, vector) in storage order."""
        for i, item_id in enumerate(self._ids):
            yield item_id, self._matrix[i]

    def unit_matrix(self) -> np.ndarray:
        """Rows scaled to unit norm; zero-norm rows stay zero. Cached."""
        if self._unit is None:
            scale = np.ones_like(self._norms)
            nonzero = self._norms > 0.0
            scale[nonzero] = 1.0 / self._norms[nonzero]
            unit = self._matrix * scale[:, None]
            unit.setflags(write=False)
            self._unit = unit
        return self._unit

    def zero_norm_ids(self) -> tuple[str, ...]:
        return tuple(self._ids[i] for i in np.flatnonzero(self._norms == 0.0))


def cosine(table: EmbeddingTable, i: int, j: int) -> float:
    """Cosine similarity between items at indices i and j, in [-1, 1]."""
    norms = table.norms
    if norms[i] == 0.0 or norms[j] == 0.0:
        bad = table.ids[i] if norms[i] == 0.0 else table.ids[j]
        raise ZeroNormError(f"cosine undefined for zero-norm item {bad!r}")
    m = table.matrix
    return float(np.dot(m[i], m[j]) / (norms[i] * norms[j]))


def _is_header(fields: list[str]) -> bool:
    # a header is a line of exactly two integer fields
    if len(fields) != 2:
        return False
    try:
        int(fields[0]), int(fields[1])
    except ValueError:
        return False
    return True


def _parse_values(fields: list[str], dim: int, lineno: int, path: str) -> list[float]:
    if len(fields) != dim:
        raise FormatError(f"{path}:{lineno}: expected {dim} vector components, got {len(fields)}")
    try:
        return [float(x) for x in fields]
    except ValueError as exc:
        raise FormatError(f"{path}:{lineno}: non-numeric vector component ({exc})") from None


def load_word_vectors(path: str, expected_dim: int | None = None) -> EmbeddingTable:
    """Load a space-separated word-vector file into an EmbeddingTable.

    An optional first line of exactly two integer fields is consumed as a
    ``count dim`` header and validated against the parsed contents. The
    dimensionality is otherwise inferred from the first data line.
    """
    ids: list[str] = []
    rows: list[list[float]] = []
    seen: set[str] = set()
    header: tuple[int, int] | None = None
    dim = expected_dim
    path = str(path)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split()
            if lineno == 1 and _is_header(fields):
                header = (int(fields[0]), int(fields[1]))
                if expected_dim is not None and header[1] != expected_dim:
                    raise FormatError(
                        f"{path}:1: header dimension {header[1]} != expected {expected_dim}"
                    )
                dim = header[1]
                continue
            token = fields[0]
            if dim is None:
                dim = len(fields) - 1
                if dim < 1:
                    raise FormatError(f"{path}:{lineno}: no vector components on first data line")
            if token in seen:
                raise FormatError(f"{path}:{lineno}: duplicate token {token!r}")
            seen.add(token)
            ids.append(token)
            rows.append(_parse_values(fields[1:], dim, lineno, path))
    if not ids:
        raise FormatError(f"{path}: no vectors found")
    if header is not None and header[0] != len(ids):
        raise FormatError(f"{path}: header count {header[0]} != {len(ids)} parsed rows")
    return EmbeddingTable(ids, np.array(rows, dtype=np.float64))


def load_sentence_embeddings(path: str) -> EmbeddingTable:
    """Load the sentence-embedding format: `count dim` header, tab-separated ids."""
    path = str(path)
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
        if not first:
            raise FormatError(f"{path}: empty file, expected `count dim` header")
        fields = first.split()
        if not _is_header(fields):
            raise FormatError(f"{path}:1: expected `count dim` header, got {first.strip()!r}")
        count, dim = int(fields[0]), int(fields[1])
        if count < 0 or dim < 1:
            raise FormatError(f"{path}:1: invalid header `{count} {dim}`")
        ids: list[str] = []
        rows: list[list[float]] = []
        seen: set[str] = set()
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            item_id, sep, rest = line.partition("\t")
            if not sep:
                raise FormatError(f"{path}:{lineno}: expected `id<TAB>values`")
            if item_id in seen:
                raise FormatError(f"{path}:{lineno}: duplicate id {item_id!r}")
            seen.add(item_id)
            ids.append(item_id)
            rows.append(_parse_values(rest.split(), dim, lineno, path))
    if len(ids) != count:
        raise FormatError(f"{path}: header count {count} != {len(ids)} parsed rows")
    matrix = np.array(rows, dtype=np.float64) if rows else np.zeros((0, dim))
    return EmbeddingTable(ids, matrix)


def format_float(x: float) -> str:
    """Render a float with 9 significant digits (the file-format precision)."""
    return format(float(x), ".9g")


def write_table(table: EmbeddingTable, path: str) -> None:
    """Write a table in the sentence-embedding format (round-trips exactly)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(table)} {table.dim}\n")
        for item_id, vec in table.items():
            fh.write(item_id)
            fh.write("\t")
            fh.write(" ".join(format_float(v) for v in vec))
            fh.write("\n")
