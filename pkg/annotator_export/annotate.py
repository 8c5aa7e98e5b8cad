#!/usr/bin/env python3
"""Annotate a raw corpus into annotated-token JSONL.

Usage: annotate.py --in raw.txt --out annotated.jsonl [--backend spacy|rule-lexicon]
Runs from a fresh checkout (no install needed) or against the installed package.
"""

import pathlib
import sys

try:
    from annotator_export.cli import main
except ImportError:
    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent / "src"))
    from annotator_export.cli import main

if __name__ == "__main__":
    sys.exit(main())
