import json

import numpy as np
import pytest
from click.testing import CliRunner

from sentanalogy.cli import main
from sentanalogy.datagen import read_jsonl
from sentanalogy.encoders import tokenize

TEMPLATES = [
    {"category": "toy", "text": "The {W} stands near the gate."},
    {"category": "toy", "text": "Nobody saw the {W} yesterday."},
]
WORD_PAIRS = "king\tqueen\tman\twoman\nactor\tactress\tman\twoman\nuncle\taunt\tman\twoman\n"
RELATIONS = [
    {"premise": "A dog is barking loudly.", "hypothesis": "A dog is barking.", "relation": "entailment"},
    {"premise": "A cat is sleeping on the mat.", "hypothesis": "A cat is sleeping.", "relation": "entailment"},
    {"premise": "There is no bird flying.", "hypothesis": "A bird is flying.", "relation": "negation"},
]


def annotation_row(subject, verb):
    return {
        "tokens": [
            {"text": "A", "lemma": "a", "pos": "DET", "tag": "DT", "dep": "det", "head": 1},
            {"text": subject, "lemma": subject, "pos": "NOUN", "tag": "NN", "dep": "nsubj", "head": 3},
            {"text": "is", "lemma": "be", "pos": "AUX", "tag": "VBZ", "dep": "aux", "head": 3},
            {"text": verb, "lemma": verb[:-3], "pos": "VERB", "tag": "VBG", "dep": "ROOT", "head": 3},
            {"text": ".", "lemma": ".", "pos": "PUNCT", "tag": ".", "dep": "punct", "head": 3},
        ]
    }


ANNOTATIONS = [
    annotation_row("dog", "barking"),
    annotation_row("cat", "sleeping"),
    annotation_row("bird", "flying"),
]


def write_inputs(root):
    (root / "templates.json").write_text(json.dumps(TEMPLATES))
    (root / "pairs.tsv").write_text(WORD_PAIRS)
    (root / "relations.jsonl").write_text("".join(json.dumps(r) + "\n" for r in RELATIONS))
    (root / "annotations.jsonl").write_text("".join(json.dumps(r) + "\n" for r in ANNOTATIONS))


def write_vectors(root, manifests, dim=8, drop=()):
    vocab = sorted(
        {
            token
            for manifest in manifests
            for row in read_jsonl(str(root / manifest))
            for token in tokenize(row["text"])
        }
        - set(drop)
    )
    rng = np.random.default_rng(424242)
    lines = [f"{len(vocab)} {dim}"]
    for word in vocab:
        values = rng.standard_normal(dim)
        lines.append(word + " " + " ".join(f"{v:.6f}" for v in values))
    (root / "vectors.txt").write_text("\n".join(lines) + "\n")


def run_pipeline(runner, root, solve_args=(), encode_args=()):
    write_inputs(root)
    steps = [
        [
            "generate",
            "--templates", str(root / "templates.json"),
            "--word-pairs", f"toy={root / 'pairs.tsv'}",
            "--relations", str(root / "relations.jsonl"),
            "--out", str(root / "pairs.jsonl"),
            "--sentences-out", str(root / "sentences.jsonl"),
        ],
        [
            "gen-distractors",
            "--in", str(root / "pairs.jsonl"),
            "--annotations", str(root / "annotations.jsonl"),
            "--seed", "11",
            "--out", str(root / "cands.jsonl"),
            "--sentences-out", str(root / "dsentences.jsonl"),
        ],
        [
            "expand-questions",
            "--pairs", str(root / "pairs.jsonl"),
            "--cands", str(root / "cands.jsonl"),
            "--out", str(root / "questions.jsonl"),
        ],
    ]
    for step in steps:
        result = runner.invoke(main, step, catch_exceptions=False)
        assert result.exit_code == 0, result.output
    write_vectors(root, ["sentences.jsonl", "dsentences.jsonl"])
    encode = [
        "encode",
        "--input", str(root / "sentences.jsonl"),
        "--input", str(root / "dsentences.jsonl"),
        "--vectors", str(root / "vectors.txt"),
        "--output", str(root / "embeddings.txt"),
        *encode_args,
    ]
    result = runner.invoke(main, encode, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    solve = [
        "solve",
        "--questions", str(root / "questions.jsonl"),
        "--embeddings", str(root / "embeddings.txt"),
        "--out", str(root / "preds.jsonl"),
        *solve_args,
    ]
    result = runner.invoke(main, solve, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    report = [
        "report",
        "--preds", str(root / "preds.jsonl"),
        "--questions", str(root / "questions.jsonl"),
        "--pairs", str(root / "pairs.jsonl"),
        "--format", "markdown",
        "--out", str(root / "report.md"),
    ]
    result = runner.invoke(main, report, catch_exceptions=False)
    assert result.exit_code == 0, result.output


@pytest.fixture
def runner():
    return CliRunner()


def failure_text(result):
    text = result.output
    try:
        text += result.stderr
    except (ValueError, AttributeError):
        pass
    if result.exception is not None:
        text += repr(result.exception)
    return text


class TestPipeline:
    def test_artifact_shapes(self, runner, tmp_path):
        run_pipeline(runner, tmp_path)
        pairs = read_jsonl(str(tmp_path / "pairs.jsonl"))
        # 2 templates x 3 word pairs, plus 3 relation rows
        assert len(pairs) == 9
        assert sum(1 for p in pairs if p["category"] == "toy") == 6
        cands = read_jsonl(str(tmp_path / "cands.jsonl"))
        assert [c["qid"] for c in cands] == ["entailment/p0000", "entailment/p0001", "negation/p0000"]
        questions = read_jsonl(str(tmp_path / "questions.jsonl"))
        # C(6,2) toy questions + C(2,2 choose) = 1 entailment; lone negation pair yields none
        assert len(questions) == 16
        relation_qs = [q for q in questions if q["category"] == "entailment"]
        assert len(relation_qs) == 1
        assert relation_qs[0]["candidate_scope"][0] == "entailment/p0001/b"
        assert all(q["candidate_scope"] == "category-pool" for q in questions if q["category"] == "toy")
        preds = read_jsonl(str(tmp_path / "preds.jsonl"))
        assert len(preds) == 16
        assert {p["metric"] for p in preds} == {"cos_add"}
        report = (tmp_path / "report.md").read_text()
        assert report.startswith("| Category | n | 3CosAdd |")
        assert "| toy | 15 |" in report

    def test_constrained_predictions_avoid_exclusions(self, runner, tmp_path):
        run_pipeline(runner, tmp_path)
        questions = {q["qid"]: q for q in read_jsonl(str(tmp_path / "questions.jsonl"))}
        for pred in read_jsonl(str(tmp_path / "preds.jsonl")):
            assert pred["predicted"] not in questions[pred["qid"]]["exclusions"]
            assert pred["correct"] == (pred["predicted"] == questions[pred["qid"]]["gold_d"])

    def test_two_runs_byte_identical(self, runner, tmp_path):
        first, second = tmp_path / "run1", tmp_path / "run2"
        first.mkdir(), second.mkdir()
        run_pipeline(runner, first)
        run_pipeline(runner, second)
        for name in (
            "pairs.jsonl", "sentences.jsonl", "cands.jsonl", "dsentences.jsonl",
            "questions.jsonl", "embeddings.txt", "preds.jsonl", "report.md",
        ):
            assert (first / name).read_bytes() == (second / name).read_bytes(), name

    def test_worker_count_does_not_change_output(self, runner, tmp_path):
        serial, threaded = tmp_path / "serial", tmp_path / "threaded"
        serial.mkdir(), threaded.mkdir()
        run_pipeline(runner, serial)
        run_pipeline(runner, threaded, solve_args=("--workers", "2"))
        assert (serial / "preds.jsonl").read_bytes() == (threaded / "preds.jsonl").read_bytes()

    def test_mul_metric_and_offset_form(self, runner, tmp_path):
        mul, offset = tmp_path / "mul", tmp_path / "offset"
        mul.mkdir(), offset.mkdir()
        run_pipeline(runner, mul, solve_args=("--metric", "mul", "--constrained", "false"))
        preds = read_jsonl(str(mul / "preds.jsonl"))
        assert {p["metric"] for p in preds} == {"cos_mul"}
        assert {p["protocol"] for p in preds} == {"unconstrained"}
        run_pipeline(runner, offset, solve_args=("--add-form", "offset"))
        assert all(p["metric"] == "cos_add" for p in read_jsonl(str(offset / "preds.jsonl")))

    def test_dct_encoding_dimension(self, runner, tmp_path):
        run_pipeline(runner, tmp_path, encode_args=("--method", "dct", "--k", "2"))
        header = (tmp_path / "embeddings.txt").read_text().splitlines()[0]
        assert header.split()[1] == "24"  # (k+1) * word dim 8


class TestGenerateBundled:
    def test_category_filter_uses_bundled_assets(self, runner, tmp_path):
        out = tmp_path / "pairs.jsonl"
        result = runner.invoke(
            main,
            ["generate", "--categories", "currency", "--out", str(out)],
            catch_exceptions=False,
        )
        assert result.exit_code == 0
        rows = read_jsonl(str(out))
        assert len(rows) == 150
        assert {r["category"] for r in rows} == {"currency"}

    def test_unknown_annotated_category_rejected(self, runner, tmp_path):
        (tmp_path / "x.jsonl").write_text("")
        result = runner.invoke(
            main,
            ["generate", "--annotated", f"chunking={tmp_path / 'x.jsonl'}", "--out", str(tmp_path / "o")],
        )
        assert result.exit_code != 0
        assert "chunking" in failure_text(result)

    def test_verbose_flag_accepted(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["--verbose", "generate", "--categories", "currency", "--out", str(tmp_path / "o.jsonl")],
            catch_exceptions=False,
        )
        assert result.exit_code == 0


class TestErrorPaths:
    def test_encode_oov_error_names_token(self, runner, tmp_path):
        write_inputs(tmp_path)
        (tmp_path / "manifest.jsonl").write_text(json.dumps({"id": "s0", "text": "A dog is barking."}) + "\n")
        write_vectors(tmp_path, ["manifest.jsonl"], drop=("barking",))
        result = runner.invoke(
            main,
            [
                "encode",
                "--input", str(tmp_path / "manifest.jsonl"),
                "--vectors", str(tmp_path / "vectors.txt"),
                "--output", str(tmp_path / "emb.txt"),
            ],
        )
        assert result.exit_code != 0
        assert "barking" in failure_text(result)

    def test_encode_oov_zero_policy_succeeds(self, runner, tmp_path):
        write_inputs(tmp_path)
        (tmp_path / "manifest.jsonl").write_text(json.dumps({"id": "s0", "text": "A dog is barking."}) + "\n")
        write_vectors(tmp_path, ["manifest.jsonl"], drop=("barking",))
        result = runner.invoke(
            main,
            [
                "encode",
                "--input", str(tmp_path / "manifest.jsonl"),
                "--vectors", str(tmp_path / "vectors.txt"),
                "--oov", "zero",
                "--output", str(tmp_path / "emb.txt"),
            ],
            catch_exceptions=False,
        )
        assert result.exit_code == 0

    def test_encode_duplicate_sentence_id(self, runner, tmp_path):
        write_inputs(tmp_path)
        (tmp_path / "manifest.jsonl").write_text(json.dumps({"id": "s0", "text": "A dog is barking."}) + "\n")
        write_vectors(tmp_path, ["manifest.jsonl"])
        result = runner.invoke(
            main,
            [
                "encode",
                "--input", str(tmp_path / "manifest.jsonl"),
                "--input", str(tmp_path / "manifest.jsonl"),
                "--vectors", str(tmp_path / "vectors.txt"),
                "--output", str(tmp_path / "emb.txt"),
            ],
        )
        assert result.exit_code != 0
        assert "duplicate sentence id" in failure_text(result)

    def test_gen_distractors_missing_annotation(self, runner, tmp_path):
        write_inputs(tmp_path)
        (tmp_path / "annotations.jsonl").write_text(json.dumps(ANNOTATIONS[0]) + "\n")
        result = runner.invoke(
            main,
            [
                "generate",
                "--templates", str(tmp_path / "templates.json"),
                "--word-pairs", f"toy={tmp_path / 'pairs.tsv'}",
                "--relations", str(tmp_path / "relations.jsonl"),
                "--out", str(tmp_path / "pairs.jsonl"),
            ],
            catch_exceptions=False,
        )
        assert result.exit_code == 0
        result = runner.invoke(
            main,
            [
                "gen-distractors",
                "--in", str(tmp_path / "pairs.jsonl"),
                "--annotations", str(tmp_path / "annotations.jsonl"),
                "--seed", "1",
                "--out", str(tmp_path / "cands.jsonl"),
            ],
        )
        assert result.exit_code != 0
        assert "no annotation found" in failure_text(result)

    def test_report_unmatched_prediction(self, runner, tmp_path):
        run_pipeline(runner, tmp_path)
        questions = read_jsonl(str(tmp_path / "questions.jsonl"))
        trimmed = tmp_path / "some_questions.jsonl"
        trimmed.write_text("".join(json.dumps(q) + "\n" for q in questions[:3]))
        result = runner.invoke(
            main,
            [
                "report",
                "--preds", str(tmp_path / "preds.jsonl"),
                "--questions", str(trimmed),
                "--out", str(tmp_path / "r.csv"),
            ],
        )
        assert result.exit_code != 0
        assert "matches no question" in failure_text(result)

    def test_bad_word_pairs_spec_rejected(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["generate", "--word-pairs", "missing-equals-sign", "--out", str(tmp_path / "o")],
        )
        assert result.exit_code != 0


class TestReportFormats:
    def test_combined_prediction_files(self, runner, tmp_path):
        run_pipeline(runner, tmp_path)
        second = tmp_path / "preds_mul.jsonl"
        result = runner.invoke(
            main,
            [
                "solve",
                "--questions", str(tmp_path / "questions.jsonl"),
                "--embeddings", str(tmp_path / "embeddings.txt"),
                "--metric", "mul",
                "--out", str(second),
            ],
            catch_exceptions=False,
        )
        assert result.exit_code == 0
        result = runner.invoke(
            main,
            [
                "report",
                "--preds", str(tmp_path / "preds.jsonl"),
                "--preds", str(second),
                "--questions", str(tmp_path / "questions.jsonl"),
                "--format", "csv",
                "--out", str(tmp_path / "combined.csv"),
            ],
            catch_exceptions=False,
        )
        assert result.exit_code == 0
        body = (tmp_path / "combined.csv").read_text().splitlines()
        assert sum(1 for line in body if line.startswith("toy,")) == 2
