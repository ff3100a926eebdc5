import random
from pathlib import Path

import numpy as np
import pytest

from simplikit.lexres import (
    Analysis,
    CefrLexicon,
    EmbeddingTable,
    FreqLexicon,
    MorphLexicon,
    ResourceSet,
)

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def pipeline_dir() -> Path:
    return DATA / "pipeline"


def make_resources(freq=None, cefr=None, morph=None, embeddings=None, stoplist=()):
    """Assemble a ResourceSet from plain dicts for in-memory fixtures."""
    return ResourceSet(
        freq=FreqLexicon(freq) if freq is not None else None,
        cefr=CefrLexicon(cefr) if cefr is not None else None,
        morph=MorphLexicon(morph) if morph is not None else None,
        embeddings=EmbeddingTable(embeddings) if embeddings is not None else None,
        stoplist=frozenset(stoplist),
    )


def analysis(lemma, upos, feats=()) -> Analysis:
    return Analysis(lemma, upos, tuple(sorted(feats)))


ALPHABET = "abcdefgh"


def random_word(rng: random.Random, min_len=3, max_len=6) -> str:
    return "".join(rng.choice(ALPHABET) for _ in range(rng.randint(min_len, max_len)))


def random_orthogonal(rng: np.random.Generator, dim: int) -> np.ndarray:
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q
