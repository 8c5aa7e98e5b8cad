"""Command-line pipeline: generate, expand-questions, gen-distractors,
encode, solve, report.

Every step is deterministic: same inputs and seed give byte-identical
outputs, so full pipeline runs can be diffed.
"""

from __future__ import annotations

import json
import logging
import sys
from importlib.resources import files

import click

from . import datagen, distractors, encoders, evaluator, solver, store

logger = logging.getLogger(__name__)

DEFAULT_PAIR_FILES = {
    "common-capital": "pairs_common_capital.tsv",
    "all-capital": "pairs_all_capital.tsv",
    "city-in-state": "pairs_city_in_state.tsv",
    "currency": "pairs_currency.tsv",
    "man-woman": "pairs_man_woman.tsv",
    "nationality": "pairs_nationality.tsv",
}

_GENERATORS = {
    "comparative": lambda corpus, lex: datagen.gen_comparative(corpus, lex.get("base_forms")),
    "opposite": lambda corpus, lex: datagen.gen_opposite(corpus, lex.get("antonyms", {})),
    "plural": lambda corpus, lex: datagen.gen_plural(corpus, lex.get("singular_forms")),
    "verb-conjugation": lambda corpus, lex: datagen.gen_verb_conjugation(corpus, lex.get("inflections")),
}

OOV_BY_FLAG = {"error": "error", "skip": "skip-token", "zero": "zero-vector"}


def asset_path(name: str) -> str:
    return str(files("sentanalogy") / "assets" / name)


def _parse_keyed(values: tuple[str, ...], flag: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for value in values:
        key, sep, path = value.partition("=")
        if not sep:
            raise click.BadParameter(f"expected CATEGORY=PATH, got {value!r}", param_hint=flag)
        out[key] = path
    return out


@click.group()
@click.option("--verbose", is_flag=True, help="Log generation skips and collisions.")
def main(verbose: bool) -> None:
    """Sentence-analogy dataset generation and evaluation."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.option("--templates", "templates_path", type=click.Path(exists=True), default=None,
              help="Template JSON (defaults to the bundled asset).")
@click.option("--word-pairs", "word_pairs", multiple=True, metavar="CATEGORY=TSV",
              help="Word-pair TSVs; defaults to all bundled categories.")
@click.option("--categories", "categories", multiple=True,
              type=click.Choice(tuple(DEFAULT_PAIR_FILES)),
              help="Restrict the bundled word-pair categories (default: all).")
@click.option("--annotated", "annotated", multiple=True, metavar="CATEGORY=JSONL",
              help="Pre-annotated corpora for comparative/opposite/plural/verb-conjugation.")
@click.option("--relations", "relations_path", type=click.Path(exists=True), default=None,
              help="Premise/hypothesis/relation JSONL for entailment and negation pairs.")
@click.option("--lexicons", "lexicons_path", type=click.Path(exists=True), default=None,
              help="Lexicon JSON: antonyms, base_forms, singular_forms, inflections.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Sentence-pair JSONL.")
@click.option("--sentences-out", "sentences_out", type=click.Path(), default=None,
              help="Also write an {id, text} manifest of every pair sentence.")
def generate(templates_path, word_pairs, categories, annotated, relations_path, lexicons_path,
             out_path, sentences_out):
    """Generate sentence pairs from templates, corpora, and relation files."""
    templates = datagen.load_templates(templates_path or asset_path("templates.json"))
    if word_pairs:
        pair_files = _parse_keyed(word_pairs, "--word-pairs")
    else:
        wanted = categories or tuple(DEFAULT_PAIR_FILES)
        pair_files = {c: asset_path(DEFAULT_PAIR_FILES[c]) for c in wanted}
    word_pair_rows = []
    for category, path in pair_files.items():
        word_pair_rows.extend(datagen.load_word_pairs(path, category))
    pairs = datagen.gen_semantic(templates, word_pair_rows)

    with open(lexicons_path or asset_path("lexicons.json"), encoding="utf-8") as fh:
        lexicons = json.load(fh)
    for category, path in _parse_keyed(annotated, "--annotated").items():
        generator = _GENERATORS.get(category)
        if generator is None:
            raise click.BadParameter(
                f"unknown annotated category {category!r}; expected one of {tuple(_GENERATORS)}",
                param_hint="--annotated",
            )
        pairs.extend(generator(datagen.load_annotated(path), lexicons))
    if relations_path:
        pairs.extend(datagen.ingest_relation_pairs(relations_path))

    datagen.write_jsonl(out_path, (datagen.pair_to_dict(p) for p in pairs))
    click.echo(f"wrote {len(pairs)} sentence pairs to {out_path}")
    if sentences_out:
        rows = datagen.export_sentences(pairs)
        datagen.write_jsonl(sentences_out, ({"id": i, "text": t} for i, t in rows))
        click.echo(f"wrote {len(rows)} sentences to {sentences_out}")


@main.command("gen-distractors")
@click.option("--in", "pairs_path", required=True, type=click.Path(exists=True),
              help="Sentence-pair JSONL; relation-category pairs get candidate sets.")
@click.option("--annotations", "annotations_path", required=True, type=click.Path(exists=True),
              help="AnnotatedSentence JSONL covering the relation hypotheses (matched by text).")
@click.option("--seed", required=True, type=int)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--sentences-out", "sentences_out", type=click.Path(), default=None,
              help="Also write an {id, text} manifest of the distractor sentences.")
@click.option("--deletion-prob", type=float, default=0.20, show_default=True)
@click.option("--mask-prob", type=float, default=0.20, show_default=True)
@click.option("--span-lambda", type=float, default=3.0, show_default=True)
def gen_distractors(pairs_path, annotations_path, seed, out_path, sentences_out,
                    deletion_prob, mask_prob, span_lambda):
    """Build seeded distractor candidate sets for relation-based pairs."""
    pairs = [datagen.pair_from_dict(r) for r in datagen.read_jsonl(pairs_path)]
    by_text = {s.text: s for s in datagen.load_annotated(annotations_path)}
    cfg = distractors.DistractorConfig(
        seed=seed, deletion_prob=deletion_prob, mask_prob=mask_prob, span_lambda=span_lambda
    )
    sets = []
    for pair in pairs:
        if pair.category not in datagen.RELATION_CATEGORIES:
            continue
        annotated = by_text.get(pair.s_b)
        if annotated is None:
            raise click.ClickException(
                f"no annotation found for sentence {pair.s_b!r} (pair {pair.id}); "
                f"annotate the hypothesis sentences first"
            )
        sets.append(distractors.build_candidate_set(annotated, cfg, pair.id, pair.id + "/b"))
    datagen.write_jsonl(out_path, (distractors.candidate_set_to_dict(s) for s in sets))
    click.echo(f"wrote {len(sets)} candidate sets to {out_path}")
    if sentences_out:
        rows = [
            {"id": f"{s.question_id}/d/{kind}", "text": text}
            for s in sets
            for kind, text in s.distractors
        ]
        datagen.write_jsonl(sentences_out, rows)
        click.echo(f"wrote {len(rows)} distractor sentences to {sentences_out}")


@main.command("expand-questions")
@click.option("--pairs", "pairs_path", required=True, type=click.Path(exists=True))
@click.option("--cands", "cands_path", type=click.Path(exists=True), default=None,
              help="Candidate-set JSONL; questions whose C:D pair has one get an explicit scope.")
@click.option("--out", "out_path", required=True, type=click.Path())
def expand_questions(pairs_path, cands_path, out_path):
    """Expand sentence pairs into analogy questions, n(n-1)/2 per category."""
    pairs = [datagen.pair_from_dict(r) for r in datagen.read_jsonl(pairs_path)]
    candidate_sets = None
    if cands_path:
        candidate_sets = {}
        for row in datagen.read_jsonl(cands_path):
            cand_set = distractors.candidate_set_from_dict(row)
            candidate_sets[cand_set.question_id] = distractors.candidate_item_ids(cand_set)
    questions = datagen.expand_questions(pairs, candidate_sets)
    datagen.write_jsonl(out_path, (datagen.question_to_dict(q) for q in questions))
    click.echo(f"wrote {len(questions)} questions to {out_path}")


@main.command()
@click.option("--input", "input_paths", required=True, multiple=True, type=click.Path(exists=True),
              help="Sentence manifest JSONL ({id, text}); repeatable.")
@click.option("--vectors", "vectors_path", required=True, type=click.Path(exists=True))
@click.option("--method", type=click.Choice(encoders.ENCODE_METHODS), default="avg", show_default=True)
@click.option("--k", type=int, default=0, show_default=True, help="Highest DCT coefficient index.")
@click.option("--oov", type=click.Choice(tuple(OOV_BY_FLAG)), default="error", show_default=True)
@click.option("--report-oov", is_flag=True, help="Log out-of-vocabulary tokens.")
@click.option("--output", "output_path", required=True, type=click.Path())
def encode(input_paths, vectors_path, method, k, oov, report_oov, output_path):
    """Encode sentences into the sentence-embedding text format."""
    words = store.load_word_vectors(vectors_path)
    policy = store.OovPolicy(OOV_BY_FLAG[oov], report=report_oov)
    sentences = []
    seen = set()
    for path in input_paths:
        for row in datagen.read_jsonl(path):
            if row["id"] in seen:
                raise click.ClickException(f"duplicate sentence id {row['id']!r}")
            seen.add(row["id"])
            sentences.append(encoders.sentence_from_text(row["id"], row["text"]))
    try:
        table = encoders.encode_corpus(sentences, words, policy, method, encoders.DctConfig(k))
    except (encoders.OovError, encoders.EmptySentenceError) as exc:
        raise click.ClickException(str(exc)) from None
    store.write_table(table, output_path)
    click.echo(f"wrote {len(table)} embeddings (dim {table.dim}) to {output_path}")


@main.command()
@click.option("--questions", "questions_path", required=True, type=click.Path(exists=True))
@click.option("--embeddings", "embeddings_path", required=True, type=click.Path(exists=True))
@click.option("--metric", type=click.Choice(["add", "mul"]), default="add", show_default=True)
@click.option("--constrained", type=click.Choice(["true", "false"]), default="true", show_default=True)
@click.option("--epsilon", type=float, default=0.001, show_default=True)
@click.option("--add-form", type=click.Choice(solver.ADD_FORMS), default="sum-of-cosines",
              show_default=True, help="3CosAdd objective form.")
@click.option("--workers", type=int, default=None, help="Thread count for batch scoring.")
@click.option("--out", "out_path", required=True, type=click.Path())
def solve(questions_path, embeddings_path, metric, constrained, epsilon, add_form, workers, out_path):
    """Answer analogy questions over a sentence-embedding table."""
    questions = [datagen.question_from_dict(r) for r in datagen.read_jsonl(questions_path)]
    table = store.load_sentence_embeddings(embeddings_path)
    cfg = solver.SolverConfig(
        metric="cos_add" if metric == "add" else "cos_mul",
        constrained=constrained == "true",
        epsilon=epsilon,
        add_form=add_form,
    )
    diag = solver.Diagnostics()
    predictions = solver.solve_batch(questions, table, cfg, max_workers=workers, diag=diag)
    with open(out_path, "w", encoding="utf-8") as fh:
        for pred in predictions:
            fh.write(json.dumps(prediction_to_dict(pred), ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")
    if diag.zero_norm_items:
        click.echo(f"warning: {len(diag.zero_norm_items)} zero-norm item(s) scored as 0", err=True)
    click.echo(f"wrote {len(predictions)} predictions to {out_path}")


def prediction_to_dict(pred: solver.Prediction) -> dict:
    return {
        "qid": pred.qid,
        "predicted": pred.predicted,
        "score": pred.score,
        "rank_of_gold": pred.rank_of_gold,
        "correct": pred.correct,
        "metric": pred.metric,
        "protocol": pred.protocol,
    }


def prediction_from_dict(row: dict) -> solver.Prediction:
    return solver.Prediction(
        row["qid"], row["predicted"], float(row["score"]),
        row["rank_of_gold"], bool(row["correct"]), row["metric"], row["protocol"],
    )


@main.command()
@click.option("--preds", "preds_paths", required=True, multiple=True, type=click.Path(exists=True),
              help="Prediction JSONL; repeatable to combine metric/protocol runs.")
@click.option("--questions", "questions_path", required=True, type=click.Path(exists=True))
@click.option("--pairs", "pairs_path", type=click.Path(exists=True), default=None,
              help="Sentence-pair JSONL enabling the answer-type label distribution.")
@click.option("--format", "fmt", type=click.Choice(("csv", "json", "markdown")), default="csv",
              show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def report(preds_paths, questions_path, pairs_path, fmt, out_path):
    """Aggregate predictions into accuracy and answer-type tables."""
    predictions = []
    for path in preds_paths:
        predictions.extend(prediction_from_dict(r) for r in datagen.read_jsonl(path))
    questions = [datagen.question_from_dict(r) for r in datagen.read_jsonl(questions_path)]
    pairs = None
    if pairs_path:
        pairs = [datagen.pair_from_dict(r) for r in datagen.read_jsonl(pairs_path)]
    try:
        built = evaluator.build_report(predictions, questions, pairs)
    except evaluator.ReportError as exc:
        raise click.ClickException(str(exc)) from None
    evaluator.emit_report(built, fmt, out_path)
    click.echo(f"wrote {fmt} report to {out_path}")


if __name__ == "__main__":
    main()
