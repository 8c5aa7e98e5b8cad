"""Exact analogy solving with 3CosAdd/3CosMul over candidate pools.

Scoring runs on the table's cached unit-norm matrix. Zero-norm items score
similarity 0 everywhere (counted in Diagnostics) instead of raising.

solve() and solve_batch() share one similarity kernel: a candidate list is
materialized once as a gathered unit matrix, per-item similarity columns are
single matrix-vector products, and question scores are element-wise
combinations of those columns. Batch mode caches the columns per distinct
item and combines them in blocks, which reproduces the sequential path bit
for bit while doing O(pool) work per question instead of O(pool * dim).
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .datagen import CATEGORY_POOL, AnalogyQuestion
from .store import EmbeddingTable

logger = logging.getLogger(__name__)

METRICS = ("cos_add", "cos_mul")
ADD_FORMS = ("sum-of-cosines", "offset")

_BLOCK = 2048


@dataclass(frozen=True)
class SolverConfig:
    """Metric and protocol selection.

    constrained=True excludes the question's exclusion set ({A,B,C}) from
    the argmax; add_form picks between the sum-of-cosines objective
    (default) and the cosine-to-offset form, which differ off the unit
    sphere.
    """

    metric: str = "cos_add"
    constrained: bool = True
    epsilon: float = 0.001
    tie_break: str = "lowest-index"
    top_k: int = 1
    add_form: str = "sum-of-cosines"

    def __post_init__(self) -> None:
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}; expected one of {METRICS}")
        if self.epsilon <= 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.tie_break != "lowest-index":
            raise ValueError(f"unsupported tie_break {self.tie_break!r}")
        if self.top_k < 1:
            raise ValueError(f"top_k must be >= 1, got {self.top_k}")
        if self.add_form not in ADD_FORMS:
            raise ValueError(f"unknown add_form {self.add_form!r}; expected one of {ADD_FORMS}")

    @property
    def protocol(self) -> str:
        return "constrained" if self.constrained else "unconstrained"


class Prediction(NamedTuple):
    qid: str
    predicted: str
    score: float
    rank_of_gold: int | None
    correct: bool
    metric: str
    protocol: str


@dataclass
class Diagnostics:
    """Counters for zero-norm items encountered during scoring."""

    zero_norm_items: set[str] = field(default_factory=set)

    def note_zero(self, table: EmbeddingTable, item_ids: Sequence[str]) -> None:
        norms = table.norms
        for item_id in item_ids:
            if norms[table.index_of(item_id)] == 0.0:
                if item_id not in self.zero_norm_items:
                    logger.warning("zero-norm item %r scored as similarity 0", item_id)
                self.zero_norm_items.add(item_id)


def _unit_row(table: EmbeddingTable, item_id: str) -> np.ndarray:
    return table.unit_matrix()[table.index_of(item_id)]


def score_cos_add(table: EmbeddingTable, a: str, b: str, c: str, d: str) -> float:
    """cos(d,c) + cos(d,b) - cos(d,a); lies in [-3, 3]."""
    u = table.unit_matrix()
    d_vec = u[table.index_of(d)]
    return float(
        np.dot(d_vec, u[table.index_of(c)])
        + np.dot(d_vec, u[table.index_of(b)])
        - np.dot(d_vec, u[table.index_of(a)])
    )


def score_cos_mul(
    table: EmbeddingTable, a: str, b: str, c: str, d: str, epsilon: float = 0.001
) -> float:
    """s(d,c) * s(d,b) / (s(d,a) + epsilon) with s = (cos+1)/2; nonnegative."""
    u = table.unit_matrix()
    d_vec = u[table.index_of(d)]
    s_c = (np.dot(d_vec, u[table.index_of(c)]) + 1.0) / 2.0
    s_b = (np.dot(d_vec, u[table.index_of(b)]) + 1.0) / 2.0
    s_a = (np.dot(d_vec, u[table.index_of(a)]) + 1.0) / 2.0
    return float(s_c * s_b / (s_a + epsilon))


class _CandidateKernel:
    """Shared scoring kernel over one resolved candidate list."""

    def __init__(self, table: EmbeddingTable, candidates: Sequence[str]):
        if not candidates:
            raise ValueError("empty candidate list")
        self.table = table
        self.ids = tuple(candidates)
        self.positions = {item_id: i for i, item_id in enumerate(self.ids)}
        indices = np.fromiter(
            (table.index_of(item_id) for item_id in self.ids), dtype=np.intp, count=len(self.ids)
        )
        self.unit = np.ascontiguousarray(table.unit_matrix()[indices])
        self._columns: dict[str, np.ndarray] = {}

    def column(self, item_id: str) -> np.ndarray:
        """Similarity of every candidate to one item; cached per item id."""
        col = self._columns.get(item_id)
        if col is None:
            col = self.unit @ _unit_row(self.table, item_id)
            self._columns[item_id] = col
        return col

    def offset_scores(self, question: AnalogyQuestion) -> np.ndarray:
        # the offset target is built from raw vectors, so this form agrees
        # with add_scores in ranking only when a, b, c are unit-norm
        m = self.table.matrix
        target = (
            m[self.table.index_of(question.b)]
            - m[self.table.index_of(question.a)]
            + m[self.table.index_of(question.c)]
        )
        norm = np.linalg.norm(target)
        if norm == 0.0:
            return np.zeros(len(self.ids))
        return self.unit @ (target / norm)

    def add_scores(self, question: AnalogyQuestion) -> np.ndarray:
        return self.column(question.c) + self.column(question.b) - self.column(question.a)

    def mul_scores(self, question: AnalogyQuestion, epsilon: float) -> np.ndarray:
        s_c = (self.column(question.c) + 1.0) / 2.0
        s_b = (self.column(question.b) + 1.0) / 2.0
        s_a = (self.column(question.a) + 1.0) / 2.0
        return s_c * s_b / (s_a + epsilon)


def _finish(
    kernel: _CandidateKernel,
    question: AnalogyQuestion,
    scores: np.ndarray,
    cfg: SolverConfig,
) -> Prediction:
    """Apply exclusions, argmax with lowest-index ties, rank the gold item."""
    excluded = []
    if cfg.constrained:
        excluded = [e for e in question.exclusions if e in kernel.positions]
        if len(excluded) == len(scores):
            raise ValueError(f"question {question.qid}: no candidates left after exclusion")
        if excluded:
            scores = scores.copy()
            for item_id in excluded:
                scores[kernel.positions[item_id]] = -np.inf
    best = int(np.argmax(scores))
    gold_pos = kernel.positions.get(question.gold_d)
    rank: int | None = None
    if gold_pos is not None and np.isfinite(scores[gold_pos]):
        gold_score = scores[gold_pos]
        rank = int(
            1 + np.sum(scores > gold_score) + np.sum(scores[:gold_pos] == gold_score)
        )
    predicted = kernel.ids[best]
    return Prediction(
        question.qid,
        predicted,
        float(scores[best]),
        rank,
        predicted == question.gold_d,
        cfg.metric,
        cfg.protocol,
    )


def _score_one(kernel: _CandidateKernel, question: AnalogyQuestion, cfg: SolverConfig) -> np.ndarray:
    if cfg.metric == "cos_mul":
        return kernel.mul_scores(question, cfg.epsilon)
    if cfg.add_form == "offset":
        return kernel.offset_scores(question)
    return kernel.add_scores(question)


def solve(
    question: AnalogyQuestion,
    table: EmbeddingTable,
    candidates: Sequence[str],
    cfg: SolverConfig,
    diag: Diagnostics | None = None,
    _kernel: _CandidateKernel | None = None,
) -> Prediction:
    """Answer one question over a resolved candidate item list."""
    kernel = _kernel if _kernel is not None else _CandidateKernel(table, candidates)
    if diag is not None:
        diag.note_zero(table, (question.a, question.b, question.c))
        diag.note_zero(table, [i for i in kernel.ids if table.norms[table.index_of(i)] == 0.0])
    return _finish(kernel, question, _score_one(kernel, question, cfg), cfg)


def resolve_candidates(questions: Sequence[AnalogyQuestion]) -> dict[str, tuple[str, ...]]:
    """Map qid -> candidate item list.

    Explicit scopes are taken as stored. Category-pool scopes resolve to the
    sorted distinct ids appearing in any of the category's questions (both
    sides of every pair occur across the expansion, so this is the full
    pool); candidate order defines the tie-break order.
    """
    pool_members: dict[str, set[str]] = {}
    for q in questions:
        if q.candidate_scope == CATEGORY_POOL:
            members = pool_members.setdefault(q.category, set())
            members.update((q.a, q.b, q.c, q.gold_d))
    pools = {category: tuple(sorted(members)) for category, members in pool_members.items()}
    out: dict[str, tuple[str, ...]] = {}
    for q in questions:
        if q.candidate_scope == CATEGORY_POOL:
            out[q.qid] = pools[q.category]
        else:
            out[q.qid] = tuple(q.candidate_scope)
    return out


def _batch_pool(
    kernel: _CandidateKernel,
    questions: list[AnalogyQuestion],
    cfg: SolverConfig,
    out: list[Prediction | None],
    positions: list[int],
    max_workers: int | None,
) -> None:
    """Block path over one shared pool; bit-identical to mapping solve()."""
    n = len(kernel.ids)
    use_mul = cfg.metric == "cos_mul"
    use_offset = not use_mul and cfg.add_form == "offset"

    if not use_offset:
        # one matrix-vector product per distinct item, shared by every
        # question that references it; stacked for C-level block gathers
        order: dict[str, int] = {}
        for q in questions:
            for item in (q.a, q.b, q.c):
                if item not in order:
                    order[item] = len(order)
        col_matrix = np.column_stack([kernel.column(item) for item in order])
        a_idx = np.fromiter((order[q.a] for q in questions), dtype=np.intp, count=len(questions))
        b_idx = np.fromiter((order[q.b] for q in questions), dtype=np.intp, count=len(questions))
        c_idx = np.fromiter((order[q.c] for q in questions), dtype=np.intp, count=len(questions))

    def run_block(start: int) -> None:
        block = questions[start : start + _BLOCK]
        stop = start + len(block)
        if use_offset:
            score_block = np.empty((n, len(block)))
            for j, q in enumerate(block):
                score_block[:, j] = kernel.offset_scores(q)
        else:
            a_cols = col_matrix.take(a_idx[start:stop], axis=1)
            b_cols = col_matrix.take(b_idx[start:stop], axis=1)
            c_cols = col_matrix.take(c_idx[start:stop], axis=1)
            if use_mul:
                score_block = ((c_cols + 1.0) / 2.0) * ((b_cols + 1.0) / 2.0)
                score_block /= (a_cols + 1.0) / 2.0 + cfg.epsilon
            else:
                score_block = c_cols + b_cols - a_cols
        for j, q in enumerate(block):
            out[positions[start + j]] = _finish(kernel, q, score_block[:, j], cfg)

    starts = range(0, len(questions), _BLOCK)
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            list(pool.map(run_block, starts))
    else:
        for start in starts:
            run_block(start)


def solve_batch(
    questions: Sequence[AnalogyQuestion],
    table: EmbeddingTable,
    cfg: SolverConfig,
    max_workers: int | None = None,
    diag: Diagnostics | None = None,
) -> list[Prediction]:
    """Answer many questions; output order matches input order.

    Results are identical to mapping solve() over resolve_candidates(),
    independent of block size or max_workers.
    """
    questions = list(questions)
    resolved = resolve_candidates(questions)
    out: list[Prediction | None] = [None] * len(questions)

    pool_groups: dict[tuple[str, ...], tuple[_CandidateKernel, list[AnalogyQuestion], list[int]]] = {}
    for i, q in enumerate(questions):
        candidates = resolved[q.qid]
        group = pool_groups.get(candidates)
        if group is None:
            group = (_CandidateKernel(table, candidates), [], [])
            pool_groups[candidates] = group
        group[1].append(q)
        group[2].append(i)

    for candidates, (kernel, group_qs, positions) in pool_groups.items():
        if diag is not None:
            zero = [i for i in kernel.ids if table.norms[table.index_of(i)] == 0.0]
            diag.note_zero(table, zero)
            for q in group_qs:
                diag.note_zero(table, (q.a, q.b, q.c))
        if len(group_qs) == 1:
            out[positions[0]] = solve(group_qs[0], table, candidates, cfg, _kernel=kernel)
        else:
            _batch_pool(kernel, group_qs, cfg, out, positions, max_workers)
    return out  # type: ignore[return-value]
