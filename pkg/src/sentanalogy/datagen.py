"""Sentence-pair generation and analogy-question expansion.

Lexical categories come from templates plus word pairs (semantic categories,
nationality) or from pre-annotated corpora (comparative, opposite, plural,
verb conjugation). Relation categories (entailment, negation) are ingested
from premise/hypothesis JSONL. Sentence pairs expand into analogy questions
over all unordered pair combinations, n(n-1)/2 per category.

Item id scheme: pair ``{category}/p{i:04d}`` owns sentences
``{pair_id}/a`` and ``{pair_id}/b``; distractor sentences (built elsewhere)
are ``{pair_id}/d/{kind}``.
"""

from __future__ import annotations

import gc
import json
import logging
import re
from dataclasses import dataclass
from itertools import repeat
from typing import Iterable, NamedTuple

logger = logging.getLogger(__name__)

RELATION_CATEGORIES = ("entailment", "negation")
CATEGORY_POOL = "category-pool"

ADAPTATION_CONDITIONS = ("occupation", "pronoun", "default")
ADAPTATION_ACTIONS = ("replace_prefix", "drop_prefix", "none")

NUMBER_WORDS = frozenset(
    "one two three four five six seven eight nine ten eleven twelve thirteen fourteen fifteen "
    "sixteen seventeen eighteen nineteen twenty thirty forty fifty sixty seventy eighty ninety "
    "hundred thousand million billion dozen".split()
)

_DIGITS_RE = re.compile(r"^\d+([.,]\d+)*$")
_DETOK_RE = re.compile(r" ([.,!?;:])")


class GenerationError(ValueError):
    """Invalid templates, word pairs, or corpus rows."""


def detokenize(tokens: Iterable[str]) -> str:
    """Join tokens with spaces, attaching punctuation to the preceding token."""
    return _DETOK_RE.sub(r"\1", " ".join(tokens))


@dataclass(frozen=True)
class AdaptationRule:
    """Prefix rewrite applied when the slot word belongs to a given class."""

    condition: str
    action: str = "none"
    args: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.condition not in ADAPTATION_CONDITIONS:
            raise GenerationError(f"unknown adaptation condition {self.condition!r}")
        if self.action not in ADAPTATION_ACTIONS:
            raise GenerationError(f"unknown adaptation action {self.action!r}")
        needed = {"replace_prefix": 2, "drop_prefix": 1, "none": 0}[self.action]
        if len(self.args) != needed:
            raise GenerationError(f"action {self.action!r} takes {needed} argument(s)")


@dataclass(frozen=True)
class Template:
    """One sentence template with a single `{W}` slot.

    side: which member of the word pair fills the slot; "both" templates
    generate the A and B sentences alike, "A"/"B" templates come in
    coordinated ordered groups (the k-th A template pairs with the k-th B
    template).
    """

    category: str
    text: str
    side: str = "both"
    adaptation_rules: tuple[AdaptationRule, ...] = (AdaptationRule("default", "none"),)

    def __post_init__(self) -> None:
        if self.text.count("{W}") != 1:
            raise GenerationError(f"template {self.text!r} must contain exactly one {{W}}")
        if self.side not in ("A", "B", "both"):
            raise GenerationError(f"template side must be A, B or both, got {self.side!r}")
        if not any(r.condition == "default" for r in self.adaptation_rules):
            raise GenerationError(f"template {self.text!r}: adaptation rules must cover 'default'")

    def render(self, word: str, word_class: str) -> str:
        """Substitute the slot word and apply the matching adaptation rule."""
        text = self.text.replace("{W}", word)
        rule = next(
            (r for r in self.adaptation_rules if r.condition == word_class),
            next(r for r in self.adaptation_rules if r.condition == "default"),
        )
        if rule.action == "replace_prefix":
            old, new = rule.args
            if not text.startswith(old + " "):
                raise GenerationError(
                    f"template {self.text!r}: cannot replace missing prefix {old!r}"
                )
            text = new + text[len(old):]
        elif rule.action == "drop_prefix":
            (old,) = rule.args
            if not text.startswith(old + " "):
                raise GenerationError(f"template {self.text!r}: cannot drop missing prefix {old!r}")
            rest = text[len(old) + 1:]
            text = rest[:1].upper() + rest[1:]
        return text


class WordPair(NamedTuple):
    w_a: str
    w_b: str
    label_a: str
    label_b: str
    category: str


@dataclass(frozen=True)
class SentencePair:
    """One (S_A, S_B) pair with its slot words and slot labels."""

    id: str
    category: str
    s_a: str
    s_b: str
    slot_a: str
    slot_b: str
    label_a: str
    label_b: str

    def __post_init__(self) -> None:
        if self.s_a == self.s_b:
            raise GenerationError(f"pair {self.id}: identical sentences {self.s_a!r}")
        # case-insensitive: adaptation may capitalize a slot word sentence-initially
        if self.slot_a.lower() not in self.s_a.lower() or self.slot_b.lower() not in self.s_b.lower():
            raise GenerationError(f"pair {self.id}: slot word missing from its sentence")


class Token(NamedTuple):
    text: str
    lemma: str
    pos: str
    tag: str
    dep: str
    head: int


class AnnotatedSentence(NamedTuple):
    """Tagged and dependency-parsed token sequence (heads are 0-based)."""

    tokens: tuple[Token, ...]

    @property
    def text(self) -> str:
        return detokenize(t.text for t in self.tokens)

    def validate(self) -> None:
        n = len(self.tokens)
        if n == 0:
            raise GenerationError("annotated sentence has no tokens")
        roots = 0
        for i, tok in enumerate(self.tokens):
            if not 0 <= tok.head < n:
                raise GenerationError(f"token {i} head {tok.head} out of range 0..{n - 1}")
            if tok.dep.lower() == "root":
                roots += 1
        if roots != 1:
            raise GenerationError(f"expected exactly one root token, found {roots}")


class AnalogyQuestion(NamedTuple):
    """A:B :: C:gold_d over sentence ids.

    candidate_scope is either the CATEGORY_POOL marker (all distinct
    sentences of the category, both sides) or an explicit tuple of item
    ids. exclusions are applied by the solver in constrained mode only.
    """

    qid: str
    category: str
    a: str
    b: str
    c: str
    gold_d: str
    candidate_scope: str | tuple[str, ...]
    exclusions: tuple[str, ...]


# ---------------------------------------------------------------------------
# template-driven generation


def _dedup_pairs(pairs: Iterable[WordPair]) -> list[WordPair]:
    out: list[WordPair] = []
    seen: set[tuple[str, str, str]] = set()
    for pair in pairs:
        if pair.w_a == pair.w_b:
            logger.warning("rejecting word pair with w_a == w_b: %r", pair.w_a)
            continue
        key = (pair.category, pair.w_a, pair.w_b)
        if key in seen:
            logger.info("duplicate word pair deduplicated: %s/%s (%s)", pair.w_a, pair.w_b, pair.category)
            continue
        seen.add(key)
        out.append(pair)
    return out


class _PairBuilder:
    """Accumulates SentencePairs for one category with exact-string dedup."""

    def __init__(self, category: str):
        self.category = category
        self.pairs: list[SentencePair] = []
        self._seen: set[tuple[str, str]] = set()

    def add(self, s_a: str, s_b: str, slot_a: str, slot_b: str, label_a: str, label_b: str) -> None:
        if s_a == s_b:
            logger.warning("%s: skipping pair with identical sentences %r", self.category, s_a)
            return
        key = (s_a, s_b)
        if key in self._seen:
            logger.info("%s: sentence collision deduplicated: %r / %r", self.category, s_a, s_b)
            return
        self._seen.add(key)
        pair_id = f"{self.category}/p{len(self.pairs):04d}"
        self.pairs.append(SentencePair(pair_id, self.category, s_a, s_b, slot_a, slot_b, label_a, label_b))


def gen_semantic(templates: list[Template], pairs: list[WordPair]) -> list[SentencePair]:
    """One SentencePair per (template combination, word pair).

    Single-template categories use side="both" templates, each a combination
    on its own. Categories with distinct A and B sentence forms list equal
    counts of side="A" and side="B" templates; the k-th of each side form
    one coordinated combination.
    """
    by_cat_templates: dict[str, list[Template]] = {}
    for template in templates:
        by_cat_templates.setdefault(template.category, []).append(template)
    by_cat_pairs: dict[str, list[WordPair]] = {}
    for pair in _dedup_pairs(pairs):
        by_cat_pairs.setdefault(pair.category, []).append(pair)

    out: list[SentencePair] = []
    for category, cat_pairs in by_cat_pairs.items():
        cat_templates = by_cat_templates.get(category)
        if not cat_templates:
            raise GenerationError(f"no templates for category {category!r}")
        both = [t for t in cat_templates if t.side == "both"]
        a_side = [t for t in cat_templates if t.side == "A"]
        b_side = [t for t in cat_templates if t.side == "B"]
        if len(a_side) != len(b_side):
            raise GenerationError(
                f"category {category!r}: {len(a_side)} A-side vs {len(b_side)} B-side templates"
            )
        combos = [(t, t) for t in both] + list(zip(a_side, b_side))
        builder = _PairBuilder(category)
        for template_a, template_b in combos:
            for pair in cat_pairs:
                builder.add(
                    template_a.render(pair.w_a, pair.label_a),
                    template_b.render(pair.w_b, pair.label_b),
                    pair.w_a,
                    pair.w_b,
                    pair.label_a,
                    pair.label_b,
                )
        out.extend(builder.pairs)
    return out


def gen_nationality(templates: list[Template], pairs: list[WordPair]) -> list[SentencePair]:
    """Country-phrase vs nationality-adjective pairs; coordinated A/B templates."""
    return gen_semantic(templates, pairs)


# ---------------------------------------------------------------------------
# corpus-driven generation (pre-annotated sentences)


def _terminal_punct(sentence: AnnotatedSentence) -> str | None:
    last = sentence.tokens[-1]
    if last.pos == "PUNCT" or last.text in (".", ",", "!", "?"):
        return last.text
    return None


def _capitalized_like(model: str, text: str) -> str:
    if model[:1].isupper():
        return text[:1].upper() + text[1:]
    return text


def gen_comparative(
    corpus: list[AnnotatedSentence], base_forms: dict[str, str] | None = None
) -> list[SentencePair]:
    """Pairs (base-form sentence, comparative sentence).

    S_B is the original sentence containing a comparative adjective directly
    followed by "than"; S_A replaces the comparative with its base form and
    drops "than" and everything after it, restoring terminal punctuation.
    """
    base_forms = base_forms or {}
    builder = _PairBuilder("comparative")
    for sentence in corpus:
        tokens = sentence.tokens
        hit = next(
            (
                i
                for i in range(len(tokens) - 1)
                if tokens[i].tag == "JJR" and tokens[i + 1].text.lower() == "than"
            ),
            None,
        )
        if hit is None:
            continue
        comp = tokens[hit]
        base = base_forms.get(comp.text.lower())
        if base is None and comp.lemma.lower() != comp.text.lower():
            base = comp.lemma.lower()
        if base is None:
            logger.warning("comparative: no base form known for %r; sentence skipped", comp.text)
            continue
        kept = [t.text for t in tokens[:hit]] + [base]
        punct = _terminal_punct(sentence)
        if punct is not None:
            kept.append(punct)
        builder.add(detokenize(kept), sentence.text, base, comp.text, "base", "comparative")
    return builder.pairs


def gen_opposite(
    corpus: list[AnnotatedSentence], antonyms: dict[str, str]
) -> list[SentencePair]:
    """Pairs (original sentence, sentence with the adjective swapped for its antonym)."""
    builder = _PairBuilder("opposite")
    for sentence in corpus:
        tokens = sentence.tokens
        hit = next(
            (i for i, t in enumerate(tokens) if t.pos == "ADJ" and t.text.lower() in antonyms),
            None,
        )
        if hit is None:
            continue
        adj = tokens[hit]
        opposite = _capitalized_like(adj.text, antonyms[adj.text.lower()])
        swapped = [t.text for t in tokens]
        swapped[hit] = opposite
        builder.add(sentence.text, detokenize(swapped), adj.text, opposite, "adjective", "antonym")
    return builder.pairs


def _article_for(numeral: str, singular: str) -> str:
    if _DIGITS_RE.match(numeral) or numeral.lower() in NUMBER_WORDS:
        return "one"
    return "an" if singular[:1].lower() in "aeiou" else "a"


def gen_plural(
    corpus: list[AnnotatedSentence], singular_forms: dict[str, str] | None = None
) -> list[SentencePair]:
    """Pairs (singular sentence, plural sentence with a numeral).

    S_B is the original sentence with a plural noun governed by or directly
    preceded by a numeral; S_A replaces the numeral with "one"/"a"/"an" and
    the noun with its singular form.
    """
    singular_forms = singular_forms or {}
    builder = _PairBuilder("plural")
    for sentence in corpus:
        tokens = sentence.tokens
        found = None
        for i, tok in enumerate(tokens):
            if tok.tag != "NNS":
                continue
            num_idx = next(
                (
                    j
                    for j, other in enumerate(tokens)
                    if other.pos == "NUM" and (other.head == i or j == i - 1)
                ),
                None,
            )
            if num_idx is not None:
                found = (i, num_idx)
                break
        if found is None:
            continue
        noun_idx, num_idx = found
        noun = tokens[noun_idx]
        singular = singular_forms.get(noun.text.lower())
        if singular is None and noun.lemma.lower() != noun.text.lower():
            singular = noun.lemma.lower()
        if singular is None:
            logger.warning("plural: no singular form known for %r; sentence skipped", noun.text)
            continue
        texts = [t.text for t in tokens]
        texts[num_idx] = _article_for(tokens[num_idx].text, singular)
        texts[noun_idx] = singular
        builder.add(detokenize(texts), sentence.text, singular, noun.text, "singular", "plural")
    return builder.pairs


_INFLECT_IRREGULAR = {"be": "is", "have": "has", "do": "does", "go": "goes"}


def inflect_third_person(verb: str) -> str:
    """Third-person singular present form of a base verb."""
    low = verb.lower()
    if low in _INFLECT_IRREGULAR:
        return _INFLECT_IRREGULAR[low]
    if low.endswith(("s", "sh", "ch", "x", "z", "o")):
        return low + "es"
    if low.endswith("y") and len(low) > 1 and low[-2] not in "aeiou":
        return low[:-1] + "ies"
    return low + "s"


def gen_verb_conjugation(
    corpus: list[AnnotatedSentence], inflections: dict[str, str] | None = None
) -> list[SentencePair]:
    """Pairs (inflected sentence, auxiliary + base-verb sentence).

    S_B is the original sentence with an auxiliary immediately before a
    base-form verb; S_A removes the auxiliary and inflects the verb to
    third-person singular.
    """
    inflections = inflections or {}
    builder = _PairBuilder("verb-conjugation")
    for sentence in corpus:
        tokens = sentence.tokens
        hit = next(
            (
                i
                for i in range(len(tokens) - 1)
                if tokens[i].pos == "AUX" and tokens[i + 1].tag == "VB"
            ),
            None,
        )
        if hit is None:
            continue
        verb = tokens[hit + 1]
        inflected = inflections.get(verb.text.lower()) or inflect_third_person(verb.text)
        texts = [t.text for t in tokens]
        texts[hit + 1] = inflected
        del texts[hit]
        if hit == 0:
            texts[0] = texts[0][:1].upper() + texts[0][1:]
        builder.add(detokenize(texts), sentence.text, inflected, verb.text, "third-person", "base")
    return builder.pairs


# ---------------------------------------------------------------------------
# relation ingestion and question expansion


def ingest_relation_pairs(path: str) -> list[SentencePair]:
    """Read premise/hypothesis/relation JSONL into relation-category pairs.

    Every row is kept (no silent drops); unknown relation labels and
    malformed rows raise.
    """
    out: list[SentencePair] = []
    counters = {category: 0 for category in RELATION_CATEGORIES}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
                premise, hypothesis, relation = row["premise"], row["hypothesis"], row["relation"]
            except (json.JSONDecodeError, KeyError) as exc:
                raise GenerationError(f"{path}:{lineno}: malformed relation row ({exc})") from None
            if relation not in RELATION_CATEGORIES:
                raise GenerationError(
                    f"{path}:{lineno}: unknown relation {relation!r}; expected one of {RELATION_CATEGORIES}"
                )
            pair_id = f"{relation}/p{counters[relation]:04d}"
            counters[relation] += 1
            out.append(SentencePair(pair_id, relation, premise, hypothesis, "", "", "premise", "hypothesis"))
    return out


def expand_questions(
    pairs: list[SentencePair],
    candidate_sets: dict[str, tuple[str, ...]] | None = None,
) -> list[AnalogyQuestion]:
    """One question per unordered pair of distinct SentencePairs per category.

    The lower-indexed pair supplies A:B, the higher-indexed one C:gold_d;
    counts are n(n-1)/2. candidate_sets maps a pair id to the explicit
    candidate item ids for questions whose C:D pair it is (relation
    categories); other questions get the category-pool scope.
    """
    by_category: dict[str, list[SentencePair]] = {}
    for pair in pairs:
        by_category.setdefault(pair.category, []).append(pair)

    # hot loop: full expansions run to millions of questions, so rows are
    # built with tuple.__new__ over zipped columns instead of the (slower)
    # generated namedtuple constructor, and the cycle collector is paused
    # while the (cycle-free) question tuples are allocated in bulk
    new = tuple.__new__
    questions: list[AnalogyQuestion] = []
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for category, cat_pairs in by_category.items():
            n = len(cat_pairs)
            if n < 2:
                logger.warning("category %s has %d pair(s); no questions generated", category, n)
                continue
            a_ids = [p.id + "/a" for p in cat_pairs]
            b_ids = [p.id + "/b" for p in cat_pairs]
            prefixes = [f"{category}/q{i:05d}-" for i in range(n)]
            suffixes = [f"{j:05d}" for j in range(n)]
            scopes: list[str | tuple[str, ...]] | None = None
            if candidate_sets:
                scopes = [candidate_sets.get(p.id, CATEGORY_POOL) for p in cat_pairs]
            for i in range(n):
                a = a_ids[i]
                b = b_ids[i]
                prefix = prefixes[i]
                tail_scopes = scopes[i + 1 :] if scopes is not None else repeat(CATEGORY_POOL)
                questions += [
                    new(AnalogyQuestion, (prefix + s, category, a, b, c, d, scope, (a, b, c)))
                    for s, c, d, scope in zip(
                        suffixes[i + 1 :], a_ids[i + 1 :], b_ids[i + 1 :], tail_scopes
                    )
                ]
    finally:
        if gc_was_enabled:
            gc.enable()
    return questions


def export_sentences(pairs: list[SentencePair]) -> list[tuple[str, str]]:
    """(item id, text) manifest rows for both sides of every pair, in order."""
    out: list[tuple[str, str]] = []
    for pair in pairs:
        out.append((pair.id + "/a", pair.s_a))
        out.append((pair.id + "/b", pair.s_b))
    return out


# ---------------------------------------------------------------------------
# interchange formats


def load_templates(path: str) -> list[Template]:
    """Read the JSON template asset (array of template records)."""
    with open(path, encoding="utf-8") as fh:
        records = json.load(fh)
    templates = []
    for record in records:
        rules = tuple(
            AdaptationRule(r["condition"], r.get("action", "none"), tuple(r.get("args", ())))
            for r in record.get("adaptation_rules", [{"condition": "default"}])
        )
        templates.append(Template(record["category"], record["text"], record.get("side", "both"), rules))
    return templates


def load_word_pairs(path: str, category: str) -> list[WordPair]:
    """Read a `w_a TAB w_b TAB label_a TAB label_b` TSV for one category."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise GenerationError(f"{path}:{lineno}: expected 4 tab-separated fields, got {len(fields)}")
            out.append(WordPair(fields[0], fields[1], fields[2], fields[3], category))
    return out


def load_annotated(path: str) -> list[AnnotatedSentence]:
    """Read AnnotatedSentence JSONL; `#` comment lines and blanks are skipped."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                record = json.loads(line)
                tokens = tuple(
                    Token(t["text"], t["lemma"], t["pos"], t["tag"], t["dep"], int(t["head"]))
                    for t in record["tokens"]
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise GenerationError(f"{path}:{lineno}: malformed annotated sentence ({exc})") from None
            sentence = AnnotatedSentence(tokens)
            try:
                sentence.validate()
            except GenerationError as exc:
                raise GenerationError(f"{path}:{lineno}: {exc}") from None
            out.append(sentence)
    return out


def pair_to_dict(pair: SentencePair) -> dict:
    return {
        "id": pair.id,
        "category": pair.category,
        "s_a": pair.s_a,
        "s_b": pair.s_b,
        "slot_a": pair.slot_a,
        "slot_b": pair.slot_b,
        "label_a": pair.label_a,
        "label_b": pair.label_b,
    }


def pair_from_dict(row: dict) -> SentencePair:
    return SentencePair(
        row["id"], row["category"], row["s_a"], row["s_b"],
        row["slot_a"], row["slot_b"], row["label_a"], row["label_b"],
    )


def question_to_dict(question: AnalogyQuestion) -> dict:
    scope = question.candidate_scope
    return {
        "qid": question.qid,
        "category": question.category,
        "a": question.a,
        "b": question.b,
        "c": question.c,
        "gold_d": question.gold_d,
        "candidate_scope": scope if isinstance(scope, str) else list(scope),
        "exclusions": list(question.exclusions),
    }


def question_from_dict(row: dict) -> AnalogyQuestion:
    scope = row["candidate_scope"]
    return AnalogyQuestion(
        row["qid"], row["category"], row["a"], row["b"], row["c"], row["gold_d"],
        scope if isinstance(scope, str) else tuple(scope),
        tuple(row["exclusions"]),
    )


def write_jsonl(path: str, rows: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")


def read_jsonl(path: str) -> list[dict]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(json.loads(line))
    return out
