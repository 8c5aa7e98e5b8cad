"""Command-line interface: annotate a raw corpus into JSONL."""

from __future__ import annotations

import argparse
import logging
import sys

from .backends import BackendUnavailable, get_backend
from .exporter import annotate


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="annotate-corpus",
        description="Tag a raw corpus (one sentence per line) into annotated-token JSONL.",
    )
    parser.add_argument("--in", dest="input", required=True, metavar="RAW.TXT",
                        help="UTF-8 input, one sentence per line; blank lines skipped")
    parser.add_argument("--out", dest="output", required=True, metavar="ANNOTATED.JSONL")
    parser.add_argument("--backend", choices=("spacy", "rule-lexicon"), default="spacy",
                        help="tagger to use (default: spacy)")
    parser.add_argument("--model", default=None,
                        help="spaCy model name (default: en_core_web_sm)")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        backend = get_backend(args.backend, args.model)
    except BackendUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    count = annotate(args.input, args.output, backend)
    print(f"wrote {count} annotated sentence(s) to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
