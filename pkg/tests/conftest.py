from __future__ import annotations

import pytest

from macrofy import data_path, parse_corpus
from macrofy.corpus_io import CorpusDocument


def load(name: str) -> CorpusDocument:
    with open(data_path(name), encoding="utf-8") as fh:
        return parse_corpus(fh.read())


@pytest.fixture
def ex1() -> CorpusDocument:
    return load("example1.trm")


@pytest.fixture
def ex1_defs(ex1):
    return ex1.definitions()


@pytest.fixture
def unary_doc() -> CorpusDocument:
    return load("unary_example.trm")
