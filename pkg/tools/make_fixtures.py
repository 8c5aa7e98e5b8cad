"""Build the checked-in annotated corpora and the bundled relation demo.

Sentences are authored as pre-split token strings over a closed vocabulary;
a rule/lexicon tagger assigns pos/tag/lemma and a flat dependency tree.
Unknown words fall back to NOUN/NN and are printed for audit.
"""

from __future__ import annotations

import json
import pathlib
import random
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from sentanalogy.datagen import AnnotatedSentence, Token, detokenize  # noqa: E402

ASSETS = ROOT / "src" / "sentanalogy" / "assets"
TESTDATA = ROOT / "tests" / "data"

# word -> (pos, tag); lemma defaults to lowercase text unless LEMMAS overrides
POS_TAGS: dict[str, tuple[str, str]] = {}


def _add(pos: str, tag: str, words: str) -> None:
    for word in words.split():
        POS_TAGS[word] = (pos, tag)


_add("AUX", "VBZ", "is does has")
_add("AUX", "VBP", "are do have")
_add("AUX", "VBD", "was were did had")
_add("AUX", "MD", "can could will would shall should may might must")
_add("DET", "DT", "the a an this that these those")
_add("DET", "PRP$", "my her his our their its")
_add("PRON", "PRP", "she he they we it mine expected")
_add("ADP", "IN", "than near beside under over behind across toward along around past "
     "in on at of for with from to through by up")
_add("PART", "RB", "not")
_add("CCONJ", "CC", "and or but")
_add("PUNCT", ".", ". ! ?")
_add("PUNCT", ",", ",")
_add("ADV", "RB", "slowly quietly carefully happily eagerly gently loudly early home very")
_add("NUM", "CD", "one two three five seven several 3")
_add("VERB", "VBG",
     "singing playing heaving lifting slicing cutting sprinting running giggling laughing "
     "dicing strolling walking sketching drawing pedaling riding applauding clapping munching "
     "eating dozing sleeping performing constructing building jogging scribbling plowing "
     "working whispering talking gliding swimming kneading making carrying painting watching "
     "holding reading climbing washing pushing pulling fixing filling counting hitting chasing "
     "peeling dancing tasting throwing flying jumping honking")
_add("VERB", "VB", "solve carry wash go fix pass echo study")
_add("VERB", "VBZ", "barks carries paints watches holds reads pushes pulls draws rides fixes "
     "fills counts climbs washes glitters")
_add("VERB", "VBD", "adopted bought sold painted visited photographed collected graded "
     "appeared glittered filled")
_add("ADJ", "JJR", "taller deeper wider louder easier faster colder heavier quieter costlier "
     "balmier older wiser")
_add("ADJ", "JJ",
     "hot cold possible impossible happy unhappy easy wide full narrow correct big small old "
     "young tall quiet clever tired curious bright heavy red rare ripe wet funny busy steep "
     "brilliant crisp warm icy fresh muddy skilled dirty empty")

LEMMAS = {
    "taller": "tall", "deeper": "deep", "wider": "wide", "louder": "loud",
    "easier": "easy", "faster": "fast", "colder": "cold", "heavier": "heavy",
    "quieter": "quiet", "costlier": "costly", "balmier": "balmier",
    "older": "old", "wiser": "wise",
    "dogs": "dog", "apples": "apple", "geese": "goose", "boxes": "box",
    "cities": "city", "essays": "essay", "umbrellas": "umbrella",
    "stamps": "stamp", "scissors": "scissors", "wolves": "wolf",
    "barbells": "barbell", "onions": "onion", "winters": "winter",
    "autumns": "autumn", "children": "child", "dishes": "dish",
    "is": "be", "are": "be", "was": "be", "were": "be",
    "does": "do", "has": "have", "did": "do", "had": "have",
}

PLURALS = set(
    "dogs apples geese boxes cities essays umbrellas stamps scissors wolves barbells onions "
    "winters autumns children dishes".split()
)

_unknown: set[str] = set()


def lex(word: str) -> tuple[str, str, str]:
    low = word.lower()
    if low in PLURALS:
        pos, tag = "NOUN", "NNS"
    elif low in POS_TAGS:
        pos, tag = POS_TAGS[low]
    else:
        pos, tag = "NOUN", "NN"
        if not word[:1].isupper():
            _unknown.add(low)
    return pos, tag, LEMMAS.get(low, low)


def annotate(sentence: str) -> AnnotatedSentence:
    """Tag a pre-split token string and attach a flat dependency tree."""
    texts = sentence.split()
    infos = [lex(t) for t in texts]
    poses = [p for p, _, _ in infos]
    root = next((i for i, p in enumerate(poses) if p == "VERB"), None)
    if root is None:
        root = next((i for i, p in enumerate(poses) if p == "AUX"), None)
    if root is None:
        root = next((i for i, p in enumerate(poses) if p == "NOUN"), 0)

    def next_noun(i: int, tag: str | None = None) -> int | None:
        for j in range(i + 1, len(texts)):
            if poses[j] == "NOUN" and (tag is None or infos[j][1] == tag):
                return j
        return None

    tokens = []
    seen_root_noun = False
    for i, (text, (pos, tag, lemma)) in enumerate(zip(texts, infos)):
        if i == root:
            dep, head = "ROOT", i
        elif pos == "DET":
            head = next_noun(i)
            dep, head = "det", root if head is None else head
        elif pos == "ADJ":
            head = next_noun(i)
            dep, head = "amod", root if head is None else head
        elif pos == "NUM":
            head = next_noun(i, "NNS")
            if head is None:
                head = next_noun(i)
            dep, head = "nummod", root if head is None else head
        elif pos == "AUX":
            dep, head = "aux", root
        elif pos == "ADV":
            dep, head = "advmod", root
        elif pos == "ADP":
            dep, head = "prep", root
        elif pos == "CCONJ":
            dep, head = "cc", root
        elif pos == "PUNCT":
            dep, head = "punct", root
        elif pos == "PART":
            dep, head = "neg", root
        elif pos == "VERB":
            dep, head = "conj", root
        elif pos == "PRON":
            dep, head = ("nsubj", root) if i < root else ("obj", root)
        else:  # NOUN
            if i < root and not seen_root_noun:
                dep, head = "nsubj", root
                seen_root_noun = True
            else:
                dep, head = "obj", root
        tokens.append(Token(text, lemma, pos, tag, dep, head))
    out = AnnotatedSentence(tuple(tokens))
    out.validate()
    return out


def ann_to_dict(sentence: AnnotatedSentence) -> dict:
    return {"tokens": [t._asdict() for t in sentence.tokens]}


def write_annotated(path: pathlib.Path, sentences: list[AnnotatedSentence], header: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {header}\n")
        for sentence in sentences:
            fh.write(json.dumps(ann_to_dict(sentence), ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")


# --------------------------------------------------------------------------
# relation demo: premise/hypothesis rows; hypotheses are annotated

ENTAILMENT = [
    ("A man is singing a song and playing the guitar .", "A man is singing and playing the guitar ."),
    ("The man is heaving barbells slowly .", "The man is lifting barbells ."),
    ("A woman is slicing a ripe tomato .", "A woman is cutting a tomato ."),
    ("Two dogs are sprinting across the wet field .", "Two dogs are running across the field ."),
    ("The children are giggling at the funny clown .", "The children are laughing at the clown ."),
    ("A chef is dicing onions in the busy kitchen .", "A chef is cutting onions in the kitchen ."),
    ("An old man is strolling along the beach .", "A man is walking along the beach ."),
    ("The girl is sketching a portrait of her friend .", "The girl is drawing a picture ."),
    ("A cyclist is pedaling up the steep hill .", "A cyclist is riding up the hill ."),
    ("The crowd is applauding the brilliant performance .", "The crowd is clapping at the performance ."),
    ("A boy is munching on a crisp apple .", "A boy is eating an apple ."),
    ("The cat is dozing on the warm windowsill .", "The cat is sleeping on the windowsill ."),
    ("A pianist is performing a sonata for the guests .", "A pianist is playing music for the guests ."),
    ("The workers are constructing a tall brick wall .", "The workers are building a wall ."),
    ("A young woman is jogging through the quiet park .", "A woman is running through the park ."),
    ("The toddler is scribbling with a red crayon .", "The toddler is drawing with a crayon ."),
    ("A farmer is plowing the muddy field at dawn .", "A farmer is working in the field ."),
    ("The students are whispering in the library .", "The students are talking in the library ."),
    ("A seal is gliding through the icy water .", "A seal is swimming through the water ."),
    ("The baker is kneading dough for fresh bread .", "The baker is making bread ."),
]

NEGATION = [
    ("There is no boy hitting the football .", "A boy is hitting the football ."),
    ("Nobody is riding the bicycle .", "A skilled person is riding the bicycle ."),
    ("The dog is not running in the yard .", "The dog is running in the yard ."),
    ("No woman is peeling a potato .", "A woman is peeling a potato ."),
    ("The man is not climbing the ladder .", "The man is climbing the ladder ."),
    ("Nobody is washing the dirty dishes .", "Someone is washing the dishes ."),
    ("There is no cat chasing the mouse .", "A cat is chasing the mouse ."),
    ("The girls are not dancing on the stage .", "The girls are dancing on the stage ."),
    ("No chef is tasting the soup .", "A chef is tasting the soup ."),
    ("The boy is not throwing a snowball .", "The boy is throwing a snowball ."),
    ("There is no plane flying over the city .", "A plane is flying over the city ."),
    ("Nobody is painting the old fence .", "A man is painting the fence ."),
    ("The horse is not jumping over the hedge .", "The horse is jumping over the hedge ."),
    ("No child is swimming in the pool .", "A child is swimming in the pool ."),
    ("The driver is not honking the horn .", "The driver is honking the horn ."),
    ("There is no band playing in the square .", "A band is playing in the square ."),
]


def make_relations() -> None:
    rows = []
    annotated = []
    seen = set()
    for relation, items in (("entailment", ENTAILMENT), ("negation", NEGATION)):
        for premise, hypothesis in items:
            ann = annotate(hypothesis)
            rows.append({
                "premise": detokenize(premise.split()),
                "hypothesis": ann.text,
                "relation": relation,
            })
            assert ann.text not in seen, f"duplicate hypothesis {ann.text!r}"
            seen.add(ann.text)
            annotated.append(ann)
    with open(ASSETS / "relations_sample.jsonl", "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False, separators=(",", ":")) + "\n")
    write_annotated(ASSETS / "relations_annotated.jsonl", annotated,
                    "annotator: rule-lexicon fixture tagger v1")
    print(f"relations: {len(rows)} rows ({len(ENTAILMENT)} entailment, {len(NEGATION)} negation)")


# --------------------------------------------------------------------------
# curated corpus for the pair-generator tests

CURATED = [
    # comparative: JJR followed by "than"
    "My sister is taller than my brother .",
    "The river is deeper than the lake .",
    "This road is wider than that alley .",
    "Her voice is louder than the radio .",
    "The test was easier than expected .",
    "His car is faster than mine .",
    "The box is heavier than the bag .",
    "The library is quieter than the cafe .",
    "Gold is costlier than silver .",
    "The weather is balmier than in autumn .",  # no known base form: skipped
    "She is older and wiser .",  # JJR not followed by "than": no pair
    # opposite: first adjective with a known antonym
    "It is possible to finish today .",
    "Happy children filled the hall .",
    "The test was easy .",
    "The stove is hot .",
    "His answer was correct .",
    "The bottle is full .",
    "The alley is narrow .",
    "The big red barn is old .",
    # plural: numeral + plural noun
    "She adopted three dogs .",
    "He bought two apples at the market .",
    "The farmer sold five geese .",
    "They painted 3 boxes .",
    "We visited seven cities .",
    "He carried several umbrellas .",
    "She photographed two very old wolves .",
    "He bought two scissors .",  # no singular form known: skipped
    # verb conjugation: auxiliary immediately before a base verb
    "She can solve the puzzle .",
    "He will carry the basket .",
    "He must wash the dishes .",
    "The student may go home early .",
    "She should fix the hinge .",
    "He might pass the exam .",
    "The choir will echo the melody .",
    "He does study on weekends .",
    "Do wash the dishes .",  # sentence-initial auxiliary
    # negation / auxiliary shapes for the distractor tests
    "A man is singing and playing the guitar .",
    "The boys are not sleeping .",
    "The dog barks loudly .",
    "The quiet librarian is reading an old book near the red window and "
    "watching the curious child slowly .",
    # plain sentences no generator should match
    "The night sky glittered .",
    "A bird sang in the garden .",
    "The market opened at dawn .",
    "Rain fell on the quiet road .",
    "The letters arrived by noon .",
    "Horses grazed near the river .",
    "The bridge creaked in the wind .",
    "Lanterns lit the empty street at dusk .",
    "The sailor tied the rope to the mast .",
    "A fox slipped behind the barn .",
    "The nurse checked the chart twice .",
]


def make_curated() -> None:
    annotated = [annotate(s) for s in CURATED]
    texts = [a.text for a in annotated]
    assert len(set(texts)) == len(texts), "duplicate curated sentence"
    write_annotated(TESTDATA / "annotated_sample.jsonl", annotated,
                    "annotator: rule-lexicon fixture tagger v1")
    print(f"curated: {len(annotated)} sentences")


# --------------------------------------------------------------------------
# grammar-generated corpus for the distractor property tests

G_ADJS = "old young tall quiet clever tired curious bright heavy narrow warm busy steep muddy fresh".split()
G_NOUNS = ("teacher farmer sailor girl boy neighbor librarian fox nurse child garden river "
           "market ladder basket letter song wall road bridge kitchen window horse dog cat "
           "bird apple guitar piano book").split()
G_VING = ("carrying painting watching holding reading singing climbing washing pushing "
          "pulling drawing riding fixing filling counting").split()
G_VBZ = ("carries paints watches holds reads pushes pulls draws rides fixes fills counts "
         "climbs washes").split()
G_PREPS = "near beside under over behind across toward along around past".split()
G_ADVS = "slowly quietly carefully happily eagerly gently".split()


def make_corpus_500() -> None:
    rng = random.Random(20240811)
    sentences: list[str] = []
    seen: set[str] = set()

    def emit(tokens: list[str]) -> None:
        text = " ".join(tokens)
        if text not in seen:
            seen.add(text)
            sentences.append(text)

    def np(det: str | None = None, with_adj: bool | None = None) -> list[str]:
        det = det or rng.choice(["the", "a"])
        with_adj = rng.random() < 0.5 if with_adj is None else with_adj
        out = [det]
        if with_adj:
            out.append(rng.choice(G_ADJS))
        out.append(rng.choice(G_NOUNS))
        return out

    while sum(1 for s in sentences if " not " not in f" {s} " and " is " in f" {s} "
              and len(s.split()) < 14) < 300:
        tokens = ["The"] + ([rng.choice(G_ADJS)] if rng.random() < 0.5 else [])
        tokens += [rng.choice(G_NOUNS), "is", rng.choice(G_VING)]
        tokens += np()
        tokens += [rng.choice(G_PREPS)] + np(det="the", with_adj=False)
        if rng.random() < 0.5:
            tokens.append(rng.choice(G_ADVS))
        tokens.append(".")
        emit(tokens)

    long_count = 0
    while long_count < 100:
        tokens = ["The", rng.choice(G_ADJS), rng.choice(G_NOUNS), "is", rng.choice(G_VING),
                  "the", rng.choice(G_ADJS), rng.choice(G_NOUNS), rng.choice(G_PREPS),
                  "the", rng.choice(G_ADJS), rng.choice(G_NOUNS), "and", rng.choice(G_VING),
                  "the", rng.choice(G_ADJS), rng.choice(G_NOUNS), rng.choice(G_ADVS), "."]
        before = len(seen)
        emit(tokens)
        long_count += len(seen) - before

    not_count = 0
    while not_count < 50:
        tokens = ["The", rng.choice(G_NOUNS), "is", "not", rng.choice(G_VING),
                  "the", rng.choice(G_NOUNS), rng.choice(G_PREPS), "the", rng.choice(G_NOUNS), "."]
        before = len(seen)
        emit(tokens)
        not_count += len(seen) - before

    finite_count = 0
    while finite_count < 50:
        tokens = ["The", rng.choice(G_NOUNS), rng.choice(G_VBZ),
                  "the", rng.choice(G_NOUNS), rng.choice(G_ADVS), "."]
        before = len(seen)
        emit(tokens)
        finite_count += len(seen) - before

    annotated = [annotate(s) for s in sentences]
    assert len(annotated) == 500, f"got {len(annotated)} sentences"
    write_annotated(TESTDATA / "annotated_500.jsonl", annotated,
                    "annotator: rule-lexicon fixture tagger v1")
    longs = sum(1 for a in annotated if len(a.tokens) >= 14)
    nots = sum(1 for a in annotated if any(t.text == "not" for t in a.tokens))
    no_aux = sum(1 for a in annotated if all(t.pos != "AUX" for t in a.tokens))
    print(f"corpus-500: {len(annotated)} sentences ({longs} long, {nots} with not, {no_aux} without aux)")


def main() -> None:
    make_relations()
    make_curated()
    make_corpus_500()
    if _unknown:
        print(f"NOTE lexicon fallbacks to NOUN/NN: {sorted(_unknown)}")


if __name__ == "__main__":
    main()
