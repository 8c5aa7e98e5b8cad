import json
import pathlib

import numpy as np
import pytest

from sentanalogy.datagen import load_annotated
from sentanalogy.store import EmbeddingTable

DATA = pathlib.Path(__file__).parent / "data"
ASSETS = pathlib.Path(__file__).parent.parent / "src" / "sentanalogy" / "assets"


@pytest.fixture(scope="session")
def lexicons():
    return json.loads((ASSETS / "lexicons.json").read_text())


@pytest.fixture(scope="session")
def curated_corpus():
    return load_annotated(str(DATA / "annotated_sample.jsonl"))


@pytest.fixture(scope="session")
def corpus_500():
    return load_annotated(str(DATA / "annotated_500.jsonl"))


@pytest.fixture
def random_table():
    def make(ids, dim, seed=0):
        rng = np.random.default_rng(seed)
        return EmbeddingTable(list(ids), rng.standard_normal((len(ids), dim)))

    return make
