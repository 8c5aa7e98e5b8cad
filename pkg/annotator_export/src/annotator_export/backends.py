"""Tagging backends that turn one raw sentence into annotated tokens.

Each backend maps a sentence string to a list of token dicts with
``text/lemma/pos/tag/dep/head`` fields, heads being 0-based indices into the
sentence and exactly one token acting as its own head with dep ``ROOT``.
The default backend wraps spaCy's English pipeline; a dependency-free
rule/lexicon tagger over a closed vocabulary is bundled so the exporter can
run (and be tested) without any model download.
"""

from __future__ import annotations


class BackendUnavailable(Exception):
    """The requested tagging backend cannot be constructed on this machine."""


class AnnotationError(Exception):
    """The line cannot be annotated (malformed input; caller skips it)."""


_PUNCT = ".,!?;:"


def tokenize(line: str) -> list[str]:
    """Whitespace split with leading/trailing punctuation peeled off.

    Case is preserved and word-internal punctuation is kept, so "Really?!"
    yields ["Really", "?", "!"] while "3.5" stays one token.
    """
    tokens: list[str] = []
    for chunk in line.split():
        head: list[str] = []
        while chunk and chunk[0] in _PUNCT:
            head.append(chunk[0])
            chunk = chunk[1:]
        tail: list[str] = []
        while chunk and chunk[-1] in _PUNCT:
            tail.insert(0, chunk[-1])
            chunk = chunk[:-1]
        tokens += head + ([chunk] if chunk else []) + tail
    return tokens


# ---------------------------------------------------------------------------
# rule/lexicon backend

# word -> (pos, tag); lemma defaults to the lowercased text unless LEMMAS
# overrides; words outside the lexicon fall back to NOUN/NN
POS_TAGS: dict[str, tuple[str, str]] = {}


def _add(pos: str, tag: str, words: str) -> None:
    for word in words.split():
        POS_TAGS[word] = (pos, tag)


_add("AUX", "VBZ", "is does has")
_add("AUX", "VBP", "are do have")
_add("AUX", "VBD", "was were did had")
_add("AUX", "MD", "can could will would shall should may might must")
_add("DET", "DT", "the a an this that these those no some every each")
_add("DET", "PRP$", "my her his our their its")
_add("PRON", "PRP", "she he they we it")
_add("ADP", "IN", "than near beside under over behind across toward along around past "
     "in on at of for with from to through by up")
_add("PART", "RB", "not")
_add("CCONJ", "CC", "and or but")
_add("PUNCT", ".", ". ! ?")
_add("PUNCT", ",", ", ; :")
_add("ADV", "RB", "slowly quietly carefully happily eagerly gently loudly early home very "
     "soon quickly twice upstairs today tonight")
_add("ADV", "RBR", "better")
_add("NUM", "CD", "one two three four five six seven ten several 3")
_add("VERB", "VBG",
     "singing playing heaving lifting slicing cutting sprinting running giggling laughing "
     "dicing strolling walking sketching drawing pedaling riding applauding clapping munching "
     "eating dozing sleeping performing constructing building jogging scribbling plowing "
     "working whispering talking gliding swimming kneading making carrying painting watching "
     "holding reading climbing washing pushing pulling fixing filling counting hitting chasing "
     "peeling dancing tasting throwing flying jumping honking")
_add("VERB", "VB", "solve carry wash go fix pass echo study play visit")
_add("VERB", "VBZ", "barks carries paints watches holds reads pushes pulls draws rides fixes "
     "fills counts climbs washes glitters")
_add("VERB", "VBD", "adopted bought sold painted visited photographed collected graded "
     "appeared glittered filled tied counted arranged sang opened fell arrived grazed lit")
_add("ADJ", "JJR", "taller deeper wider louder easier faster colder heavier quieter costlier "
     "balmier older wiser longer")
_add("ADJ", "JJ",
     "hot cold possible impossible happy unhappy easy wide full narrow correct big small old "
     "young tall quiet clever tired curious bright heavy red rare ripe wet funny busy steep "
     "brilliant crisp warm icy fresh muddy skilled dirty empty")

LEMMAS = {
    "taller": "tall", "deeper": "deep", "wider": "wide", "louder": "loud",
    "easier": "easy", "faster": "fast", "colder": "cold", "heavier": "heavy",
    "quieter": "quiet", "costlier": "costly", "balmier": "balmier",
    "older": "old", "wiser": "wise", "longer": "long", "better": "well",
    "dogs": "dog", "apples": "apple", "geese": "goose", "boxes": "box",
    "cities": "city", "essays": "essay", "umbrellas": "umbrella",
    "stamps": "stamp", "scissors": "scissors", "wolves": "wolf",
    "barbells": "barbell", "onions": "onion", "winters": "winter",
    "autumns": "autumn", "children": "child", "dishes": "dish",
    "knots": "knot", "envelopes": "envelope", "tulips": "tulip",
    "letters": "letter", "coins": "coin", "glasses": "glass",
    "boys": "boy", "girls": "girl", "workers": "worker",
    "students": "student", "dancers": "dancer", "horses": "horse",
    "lanterns": "lantern", "weekends": "weekend",
    "is": "be", "are": "be", "was": "be", "were": "be",
    "does": "do", "has": "have", "did": "do", "had": "have",
}

PLURALS = set(
    "dogs apples geese boxes cities essays umbrellas stamps scissors wolves barbells onions "
    "winters autumns children dishes knots envelopes tulips letters coins glasses boys girls "
    "workers students dancers horses lanterns weekends".split()
)


def _lex(word: str) -> tuple[str, str, str]:
    low = word.lower()
    if low in PLURALS:
        pos, tag = "NOUN", "NNS"
    elif low in POS_TAGS:
        pos, tag = POS_TAGS[low]
    else:
        pos, tag = "NOUN", "NN"
    return pos, tag, LEMMAS.get(low, low)


class RuleLexiconBackend:
    """Deterministic closed-vocabulary tagger with a flat dependency tree.

    The root is the first verb (else the first auxiliary, else the first
    noun); determiners, adjectives, and numerals attach to the next noun and
    everything else to the root. Words outside the lexicon become NOUN/NN.
    """

    provenance = "rule-lexicon tagger v1"

    def tokenize(self, line: str) -> list[str]:
        return tokenize(line)

    def annotate_line(self, line: str) -> list[dict]:
        texts = tokenize(line)
        if not texts:
            raise AnnotationError("no tokens")
        infos = [_lex(t) for t in texts]
        poses = [p for p, _, _ in infos]
        root = next((i for i, p in enumerate(poses) if p == "VERB"), None)
        if root is None:
            root = next((i for i, p in enumerate(poses) if p == "AUX"), None)
        if root is None:
            root = next((i for i, p in enumerate(poses) if p == "NOUN"), None)
        if root is None:
            raise AnnotationError("only punctuation or function words; no root candidate")

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
            tokens.append(
                {"text": text, "lemma": lemma, "pos": pos, "tag": tag, "dep": dep, "head": head}
            )
        return tokens


class SpacyBackend:
    """Thin wrapper over a spaCy English pipeline."""

    def __init__(self, model: str = "en_core_web_sm"):
        try:
            import spacy
        except ImportError as exc:
            raise BackendUnavailable(
                "spaCy is not installed; run `pip install spacy` and "
                "`python -m spacy download en_core_web_sm`, or use the bundled "
                "tagger with --backend rule-lexicon"
            ) from exc
        try:
            self.nlp = spacy.load(model)
        except OSError as exc:
            raise BackendUnavailable(
                f"spaCy model {model!r} is not available; run "
                f"`python -m spacy download {model}`, or use the bundled "
                "tagger with --backend rule-lexicon"
            ) from exc
        self.provenance = f"spacy {spacy.__version__} {model} {self.nlp.meta.get('version', '?')}"

    def tokenize(self, line: str) -> list[str]:
        return [t.text for t in self.nlp.tokenizer(line) if not t.is_space]

    def annotate_line(self, line: str) -> list[dict]:
        doc = [t for t in self.nlp(line) if not t.is_space]
        if not doc:
            raise AnnotationError("no tokens")
        index = {t.i: i for i, t in enumerate(doc)}
        tokens = []
        for i, t in enumerate(doc):
            is_root = t.head is t or t.dep_ == "ROOT"
            head = i if is_root else index.get(t.head.i)
            if head is None:
                raise AnnotationError(f"head of {t.text!r} is a whitespace token")
            tokens.append(
                {
                    "text": t.text,
                    "lemma": t.lemma_,
                    "pos": t.pos_,
                    "tag": t.tag_,
                    "dep": "ROOT" if is_root else t.dep_,
                    "head": head,
                }
            )
        return tokens


def get_backend(name: str, model: str | None = None):
    if name == "rule-lexicon":
        return RuleLexiconBackend()
    if name == "spacy":
        return SpacyBackend(model) if model else SpacyBackend()
    raise ValueError(f"unknown backend {name!r}; expected 'spacy' or 'rule-lexicon'")
