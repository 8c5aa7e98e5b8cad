"""Aggregate predictions into accuracy and answer-type report tables.

Rows are keyed (category, metric, protocol); micro (pooled) and macro
(unweighted category mean) aggregates are both emitted per (metric,
protocol) because the aggregation behind a single summary number is easy to
get wrong silently. Emission is byte-deterministic: fixed row ordering,
period decimal separator, 4-decimal accuracy formatting.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .datagen import AnalogyQuestion, SentencePair
from .solver import Prediction

# fixed column order: per metric, unconstrained ("-U") before constrained
METRIC_COLUMNS = (
    ("cos_add", "unconstrained", "3CosAdd-U"),
    ("cos_add", "constrained", "3CosAdd"),
    ("cos_mul", "unconstrained", "3CosMul-U"),
    ("cos_mul", "constrained", "3CosMul"),
)


class ReportError(ValueError):
    """Predictions and questions do not line up."""


@dataclass(frozen=True)
class ReportRow:
    category: str
    metric: str
    protocol: str
    n_questions: int
    n_correct: int

    @property
    def accuracy(self) -> float:
        return self.n_correct / self.n_questions


@dataclass(frozen=True)
class EvaluationReport:
    rows: tuple[ReportRow, ...]
    aggregates: tuple[tuple[str, str, str, float, int], ...]  # (kind, metric, protocol, value, n)
    label_distribution: tuple[tuple[str, float], ...]


def accuracy(
    predictions: Sequence[Prediction], questions: Sequence[AnalogyQuestion]
) -> list[ReportRow]:
    """Exact fraction correct per (category, metric, protocol).

    Every prediction must match a question by qid; unmatched predictions
    raise (the report CLI turns that into a nonzero exit).
    """
    category_of = {q.qid: q.category for q in questions}
    counts: dict[tuple[str, str, str], list[int]] = {}
    for pred in predictions:
        category = category_of.get(pred.qid)
        if category is None:
            raise ReportError(f"prediction {pred.qid!r} matches no question")
        cell = counts.setdefault((category, pred.metric, pred.protocol), [0, 0])
        cell[0] += 1
        cell[1] += int(pred.correct)
    return [
        ReportRow(category, metric, protocol, n, correct)
        for (category, metric, protocol), (n, correct) in sorted(counts.items())
    ]


def aggregates_from_rows(rows: Iterable[ReportRow]) -> list[tuple[str, str, str, float, int]]:
    """Micro (pooled questions) and macro (unweighted mean) per metric/protocol."""
    grouped: dict[tuple[str, str], list[ReportRow]] = {}
    for row in rows:
        grouped.setdefault((row.metric, row.protocol), []).append(row)
    out = []
    for (metric, protocol), group in sorted(grouped.items()):
        total = sum(r.n_questions for r in group)
        correct = sum(r.n_correct for r in group)
        out.append(("micro", metric, protocol, correct / total, total))
        out.append(("macro", metric, protocol, sum(r.accuracy for r in group) / len(group), total))
    return out


def _pair_id_of(item_id: str) -> tuple[str, str] | None:
    """Split an item id into (pair id, side); side is 'a', 'b' or a distractor kind."""
    if "/d/" in item_id:
        pair_id, _, kind = item_id.rpartition("/d/")
        return pair_id, "d:" + kind
    if item_id.endswith("/a") or item_id.endswith("/b"):
        return item_id[:-2], item_id[-1]
    return None


def label_probability(
    predictions: Sequence[Prediction], pairs: Sequence[SentencePair]
) -> dict[str, float]:
    """Normalized frequency of the predicted sentences' slot labels.

    A prediction of a pair's A side counts toward label_a, the B side toward
    label_b; predicted distractor sentences count toward "distractor:<kind>".
    """
    by_id = {p.id: p for p in pairs}
    counts: dict[str, int] = {}
    total = 0
    for pred in predictions:
        parsed = _pair_id_of(pred.predicted)
        if parsed is None:
            continue
        pair_id, side = parsed
        pair = by_id.get(pair_id)
        if pair is None:
            continue
        if side == "a":
            label = pair.label_a
        elif side == "b":
            label = pair.label_b
        else:
            label = "distractor:" + side[2:]
        counts[label] = counts.get(label, 0) + 1
        total += 1
    return {label: count / total for label, count in sorted(counts.items())}


def build_report(
    predictions: Sequence[Prediction],
    questions: Sequence[AnalogyQuestion],
    pairs: Sequence[SentencePair] | None = None,
) -> EvaluationReport:
    rows = accuracy(predictions, questions)
    labels = label_probability(predictions, pairs) if pairs else {}
    return EvaluationReport(
        tuple(rows),
        tuple(aggregates_from_rows(rows)),
        tuple(labels.items()),
    )


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def _render_csv(report: EvaluationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["category", "metric", "protocol", "n_questions", "accuracy"])
    for row in report.rows:
        writer.writerow([row.category, row.metric, row.protocol, row.n_questions, _fmt(row.accuracy)])
    return buf.getvalue()


def _render_json(report: EvaluationReport) -> str:
    payload = {
        "rows": [
            {
                "category": row.category,
                "metric": row.metric,
                "protocol": row.protocol,
                "n_questions": row.n_questions,
                "accuracy": _fmt(row.accuracy),
            }
            for row in report.rows
        ],
        "aggregates": [
            {"kind": kind, "metric": metric, "protocol": protocol, "value": _fmt(value), "n_questions": n}
            for kind, metric, protocol, value, n in report.aggregates
        ],
        "label_distribution": {label: _fmt(value) for label, value in report.label_distribution},
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _render_markdown(report: EvaluationReport) -> str:
    """Wide table: one row per category, one column per metric/protocol seen."""
    present = {(row.metric, row.protocol) for row in report.rows}
    columns = [col for col in METRIC_COLUMNS if (col[0], col[1]) in present]
    cells: dict[tuple[str, str, str], ReportRow] = {
        (row.category, row.metric, row.protocol): row for row in report.rows
    }
    categories = sorted({row.category for row in report.rows})
    lines = []
    header = ["Category", "n"] + [name for _, _, name in columns]
    lines.append("| " + " | ".join(header) + " |")
    lines.append("|" + "|".join(["---"] * len(header)) + "|")
    for category in categories:
        n = max(
            (cells[(category, m, p)].n_questions for m, p, _ in columns if (category, m, p) in cells),
            default=0,
        )
        out = [category, str(n)]
        for metric, protocol, _ in columns:
            row = cells.get((category, metric, protocol))
            out.append(_fmt(row.accuracy) if row is not None else "")
        lines.append("| " + " | ".join(out) + " |")
    for kind in ("micro", "macro"):
        out = [kind, ""]
        for metric, protocol, _ in columns:
            value = next(
                (v for k, m, p, v, _ in report.aggregates if k == kind and m == metric and p == protocol),
                None,
            )
            out.append(_fmt(value) if value is not None else "")
        lines.append("| " + " | ".join(out) + " |")
    text = "\n".join(lines) + "\n"
    if report.label_distribution:
        text += "\n| Label | Probability |\n|---|---|\n"
        for label, value in report.label_distribution:
            text += f"| {label} | {_fmt(value)} |\n"
    return text


_RENDERERS = {"csv": _render_csv, "json": _render_json, "markdown": _render_markdown}


def render_report(report: EvaluationReport, fmt: str) -> str:
    try:
        renderer = _RENDERERS[fmt]
    except KeyError:
        raise ValueError(f"unknown report format {fmt!r}; expected one of {tuple(_RENDERERS)}") from None
    return renderer(report)


def emit_report(report: EvaluationReport, fmt: str, path: str) -> None:
    """Write the report; byte-deterministic for identical inputs."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_report(report, fmt))
