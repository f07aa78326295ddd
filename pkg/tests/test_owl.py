from __future__ import annotations

import pytest

from macrofy import data_path, is_encoding, minimize_p1, minimize_p2, minimize_p3, oracle_p3, parse_corpus
from macrofy.corpus_io import write_corpus
from macrofy.errors import OwlSyntaxError
from macrofy.owl import axioms_as_language, parse_owl_functional, prepare_experiment
from macrofy.terms import iter_nodes

PFX = "Prefix(:=<http://x.org/>)\n"


def iri(local: str) -> str:
    return f"<http://x.org/{local}>"


def mini():
    with open(data_path("mini_ontology.ofn"), encoding="utf-8") as fh:
        return parse_owl_functional(fh.read())


def test_subclass_of_intersection():
    doc = parse_owl_functional(PFX + "SubClassOf(:A ObjectIntersectionOf(:B :C))")
    (ax,) = doc.axioms
    t = ax.term
    assert ax.kind == "SubClassOf" and t.label == "SubClassOf" and t.kind.order == "ordered"
    assert t.children[0].label == iri("A")
    inter = t.children[1]
    assert inter.kind.order == "unordered" and {c.label for c in inter.children} == {iri("B"), iri("C")}
    assert t.size == 5


def test_annotation_only_file():
    doc = parse_owl_functional(PFX + 'Ontology(AnnotationAssertion(:label :A "a") AnnotationAssertion(:label :B "b"))')
    assert doc.axioms == [] and sum(doc.skipped.values()) > 0


def test_disjoint_union_is_mixed():
    (ax,) = parse_owl_functional(PFX + "DisjointUnion(:A :B :C :D)").axioms
    t = ax.term
    assert t.kind.order == "mixed" and t.kind.arity == 1
    assert t.children[0].label == iri("A")
    same = parse_owl_functional(PFX + "DisjointUnion(:A :D :C :B)").axioms[0].term
    other = parse_owl_functional(PFX + "DisjointUnion(:B :A :C :D)").axioms[0].term
    assert same == t and other != t


def test_duplicate_definitions_dropped():
    text = PFX + ("EquivalentClasses(:N ObjectIntersectionOf(:A :B))\n"
                  "EquivalentClasses(:N ObjectIntersectionOf(:A :C))\n"
                  "SubClassOf(:X :N)\n")
    corpus = prepare_experiment(parse_owl_functional(text), 1)
    assert len(corpus.definitions) == 0
    assert corpus.drop_counts() == {"duplicate-definition": 2}


def test_cyclic_definitions_dropped():
    text = PFX + ("EquivalentClasses(:N ObjectSomeValuesFrom(:r :M))\n"
                  "EquivalentClasses(:M ObjectSomeValuesFrom(:r :N))\n")
    corpus = prepare_experiment(parse_owl_functional(text), 1)
    assert len(corpus.definitions) == 0 and corpus.drop_counts() == {"cycle": 2}


def test_set_collapse():
    text = PFX + "SubClassOf(:A :B)\nSubClassOf(:A :B)\nSubClassOf(:A ObjectIntersectionOf(:C :C))\n"
    doc = parse_owl_functional(text)
    lang = axioms_as_language(doc)
    assert len(doc.axioms) == 3 and len(lang) == 2
    inter = [t for t in lang if t.size > 3][0].children[1]
    assert len(inter.children) == 1
    assert len(axioms_as_language(parse_owl_functional(""))) == 0


def test_annotations_inside_axioms_ignored():
    a = parse_owl_functional(PFX + 'SubClassOf(Annotation(:c "x") :A :B)').axioms[0].term
    b = parse_owl_functional(PFX + "SubClassOf(:A :B)").axioms[0].term
    assert a == b


def test_unsupported_constructors():
    text = PFX + "SubClassOf(:A ObjectMinCardinality(2 :r :B))\nSubClassOf(:A :B)\n"
    strict = parse_owl_functional(text)
    assert len(strict.axioms) == 1 and strict.dropped[0].reason == "unsupported-constructor"
    assert strict.skipped["unsupported:ObjectMinCardinality"] == 1
    lenient = parse_owl_functional(text, lenient=True)
    assert len(lenient.axioms) == 2
    opaque = lenient.axioms[0].term.children[1]
    assert opaque.label == "ObjectMinCardinality.3" and opaque.kind.arity == 3


def test_syntax_errors_have_locations():
    with pytest.raises(OwlSyntaxError) as err:
        parse_owl_functional(PFX + "SubClassOf(:A :B")
    assert err.value.line == 2
    with pytest.raises(OwlSyntaxError):
        parse_owl_functional("SubClassOf(:A :B))")


def test_mini_ontology_preparation():
    doc = mini()
    assert len(doc.axioms) == 12 and doc.skipped["Declaration"] == 2
    p1 = prepare_experiment(doc, 1)
    assert p1.drop_counts() == {"cycle": 2, "duplicate-definition": 2}
    assert sorted(p1.definitions) == sorted(iri(n).replace("x.org/", "example.org/mini#")
                                            for n in ("CardiacValve", "HeartPart", "HeartValve", "ValveDisease"))
    names = set(p1.definitions)
    for t in p1.language:
        assert not any(n.label in names for n in iter_nodes(t))
    p2 = prepare_experiment(doc, 2)
    assert p2.drop_counts()["non-reduced"] == 1 and len(p2.definitions) == 3
    p3 = prepare_experiment(doc, 3)
    assert p3.drop_counts() == {"unary": 1} and len(p3.definitions) == 0
    assert len(p3.language) == 11


def test_mini_ontology_results_are_optimal():
    doc = mini()
    for problem, fn in ((1, minimize_p1), (2, minimize_p2)):
        c = prepare_experiment(doc, problem)
        r = fn(c.language, c.definitions)
        assert is_encoding(r.encoding, c.language)
    c3 = prepare_experiment(doc, 3)
    r3 = minimize_p3(c3.language)
    assert r3.output_size == oracle_p3(c3.language, max_macros=3)[0]


def test_ingestion_is_deterministic():
    a = prepare_experiment(mini(), 2)
    b = prepare_experiment(mini(), 2)
    assert write_corpus(a.language, dict(a.definitions)) == write_corpus(b.language, dict(b.definitions))


@pytest.mark.parametrize("problem", [1, 2, 3])
def test_golden_inputs(problem):
    c = prepare_experiment(mini(), problem)
    with open(data_path(f"golden/mini_ontology.input.p{problem}.trm"), encoding="utf-8") as fh:
        golden = parse_corpus(fh.read())
    assert golden.terms == c.language
    assert golden.definitions() == c.definitions
