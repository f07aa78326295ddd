from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from macrofy import (
    EMPTY,
    Encoding,
    Language,
    data_path,
    minimize_p2,
    minimize_p3,
    parse_corpus,
    read_encoding,
    write_corpus,
    write_encoding,
)
from macrofy.corpus_io import _percent, parse_term, stats_dict, write_stats
from macrofy.errors import (
    ArityMismatch,
    CorpusSyntaxError,
    DuplicateSymbolDeclaration,
    UndeclaredSymbol,
)
from macrofy.generate import random_instance


def test_parse_example(ex1):
    assert len(ex1.terms) == 3 and len(ex1.macros) == 3
    assert ex1.terms.size == 14
    assert ex1.expanded() == ex1.terms


def test_empty_corpus():
    doc = parse_corpus("# nothing here\n\n")
    assert len(doc.terms) == 0 and doc.macros == {}
    assert len(parse_corpus("symbol e : ordered/0\n").terms) == 0


def test_arity_mismatch_has_location():
    with pytest.raises(ArityMismatch) as err:
        parse_corpus("symbol a : ordered/2\nsymbol b : ordered/0\nterm a(b)\n")
    assert err.value.line == 3 and err.value.column == 6


def test_syntax_errors():
    cases = [
        ("symbol a ordered/2\n", 1),
        ("symbol a : sorted\n", 1),
        ("symbol e : ordered/0\nterm e(\n", 2),
        ("symbol e : ordered/0\nterm e e\n", 2),
        ("thing e\n", 1),
        ("symbol w : mixed/0\n", 1),
        ("macro m\n", 1),
        ("term\n", 1),
    ]
    for text, line in cases:
        with pytest.raises(CorpusSyntaxError) as err:
            parse_corpus(text)
        assert err.value.line == line, text


def test_undeclared_and_duplicates():
    with pytest.raises(UndeclaredSymbol) as err:
        parse_corpus("term f(x)\n")
    # children resolve first, so the innermost unknown name is reported
    assert err.value.line == 1 and err.value.column == 8
    with pytest.raises(DuplicateSymbolDeclaration):
        parse_corpus("symbol e : ordered/0\nsymbol e : unordered\n")
    with pytest.raises(DuplicateSymbolDeclaration):
        parse_corpus("symbol e : ordered/0\nmacro e -> e\n")
    with pytest.raises(DuplicateSymbolDeclaration):
        parse_corpus("symbol f : ordered/2\nsymbol e : ordered/0\nmacro m -> f(e,e)\nmacro m -> f(e,e)\n")


def test_lenient_mode():
    doc = parse_corpus("term f(x, g(x))\n", infer_alphabet=True)
    assert doc.alphabet["f"].arity == 2 and doc.alphabet["x"].is_constant
    with pytest.raises(ArityMismatch):
        parse_corpus("term f(x, x)\nterm f(x)\n", infer_alphabet=True)


def test_declaration_order_and_whitespace_do_not_matter():
    a = parse_corpus("term   b( e ,f )\nsymbol b : unordered\nsymbol e : ordered/0\nsymbol f : constant\n")
    b = parse_corpus("symbol e:ordered/0\nsymbol f:ordered/0\nsymbol b:unordered\nterm b(f, e)\n")
    assert a.terms == b.terms


def test_macro_namespace():
    doc = parse_corpus("symbol f : ordered/2\nsymbol e : ordered/0\nterm f(__x, e)\nmacro __x -> f(e, e)\n")
    assert next(iter(doc.terms)).children[0].is_macro
    assert doc.expanded().size == 5


def test_iri_and_quoted_names():
    text = ('symbol <http://x.org/A> : constant\nsymbol "odd name" : ordered/1\n'
            'term "odd name"(<http://x.org/A>)\n')
    doc = parse_corpus(text)
    out = write_corpus(doc.terms)
    assert parse_corpus(out).terms == doc.terms
    assert '"odd name"(<http://x.org/A>)' in out


def test_parse_term_helper(ex1):
    assert parse_term("b(d(f), c(e))", ex1.alphabet) == ex1.alphabet.parse("b(c(e), d(f))")


def test_roundtrip_p2_optimum(ex1, ex1_defs):
    e = minimize_p2(ex1.terms, ex1_defs).encoding
    text = write_encoding(e, header="example")
    assert text.startswith("# example\n")
    back = read_encoding(text)
    assert back.language == e.language and back.definitions == e.definitions
    assert write_encoding(back, header="example") == text


def test_empty_encoding_document():
    text = write_encoding(Encoding(Language(), EMPTY))
    assert text == "\n"
    assert len(read_encoding(text).language) == 0


def test_output_is_canonical(ex1):
    shuffled = Language(reversed(list(ex1.terms)))
    assert write_corpus(shuffled, ex1.macros) == write_corpus(ex1.terms, ex1.macros)
    lines = write_corpus(ex1.terms, ex1.macros).splitlines()
    assert [l.split()[1] for l in lines if l.startswith("macro")] == ["m''", "m", "m'"]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_random_roundtrip(seed):
    inst = random_instance(seed, reduced=False)
    text = write_corpus(inst.language, dict(inst.definitions))
    doc = parse_corpus(text)
    assert doc.terms == inst.language
    assert doc.definitions() == inst.definitions
    assert write_corpus(doc.terms, doc.macros) == text


def test_stats_example(ex1):
    d = stats_dict(minimize_p3(ex1.terms))
    assert (d["size_input"], d["size_language"], d["size_definitions"]) == (14, 6, 6)
    assert d["size_output"] == 12 and d["problem"] == 3
    assert d["proportional_reduction"] == "1/7" and d["proportional_reduction_percent"] == 14
    assert d["num_terms"] == 3 and d["num_macro_definitions"] == 1
    assert list(d)[:4] == ["problem", "size_input", "size_language", "size_definitions"]
    text = write_stats(minimize_p3(ex1.terms), {"extra": 1})
    assert json.loads(text)["extra"] == 1 and text.endswith("}\n")


def test_identity_stats(ex1):
    d = stats_dict(minimize_p3(Language([ex1.alphabet.parse("c(e)")])))
    assert d["proportional_reduction_percent"] == 0 and d["proportional_reduction"] == "0/1"


def test_percent_rounding():
    assert _percent(Fraction(1, 200)) == 1
    assert _percent(Fraction(-1, 200)) == -1
    assert _percent(Fraction(1, 7)) == 14
    assert _percent(Fraction(-6, 100)) == -6


def test_bundled_files_parse():
    for name in ("example1.trm", "unary_example.trm"):
        with open(data_path(name), encoding="utf-8") as fh:
            parse_corpus(fh.read()).definitions()
