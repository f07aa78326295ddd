"""One test per acceptance criterion; each prints a PASS/FAIL line."""

from __future__ import annotations

import json
import random
import time

import pytest

from macrofy import (
    Language,
    MacroDefinitions,
    data_path,
    exhaustiveness,
    minimize_p1,
    minimize_p2,
    minimize_p3,
    oracle_p1,
    oracle_p2,
    oracle_p3,
    parse_corpus,
)
from macrofy.cli import main
from macrofy.errors import UnarySymbolsPresent
from macrofy.corpus_io import write_corpus, write_encoding
from macrofy.generate import random_instance, random_term, synthetic_corpus
from macrofy.oracle import SearchBudget
from macrofy.owl import parse_owl_functional, prepare_experiment
from macrofy.terms import Term
from strategies import ALPHA

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return emit


def _load(name):
    with open(data_path(name), encoding="utf-8") as fh:
        return parse_corpus(fh.read())


def test_criterion_1_example_exactness(report):
    doc = _load("example1.trm")
    p = lambda s: doc.alphabet.parse(s, macros=["m", "m'", "m''"])
    t0 = time.perf_counter()
    r1 = minimize_p1(doc.terms, doc.definitions())
    r2 = minimize_p2(doc.terms, doc.definitions())
    r3 = minimize_p3(doc.terms)
    took = time.perf_counter() - t0
    d2 = r2.encoding.definitions
    ok = (
        r1.output_size == 16
        and r1.encoding.language == Language([p("a(m'')"), p("m''"), p("a(m')")])
        and r2.output_size == 15
        and {d2.fixpoint(m).key for m in d2} == {p(s).key for s in ("c(e)", "d(f)", "b(c(e), d(f))")}
        and d2["m''"].size == 3
        and r3.output_size == 12
        and [r3.encoding.definitions.fixpoint(m) for m in r3.encoding.definitions] == [p("b(c(e), d(f))")]
        and took < 1.0
    )
    report(1, ok, f"sizes {r1.output_size}/{r2.output_size}/{r3.output_size} in {took:.3f}s")


def test_criterion_2_unary_example(report):
    doc = _load("unary_example.trm")
    lang = doc.terms
    t0 = time.perf_counter()
    single = oracle_p2(lang, MacroDefinitions({"m": doc.alphabet.parse("b(c)")}))[0]
    overall, witness = oracle_p3(lang, max_macros=None)
    try:
        minimize_p3(lang)
        rejected = False
    except UnarySymbolsPresent:
        rejected = True
    took = time.perf_counter() - t0
    fixes = sorted(str(witness.definitions.fixpoint(m)) for m in witness.definitions)
    ok = single == 16 and overall == 15 and rejected and took < 10
    report(2, ok, f"single-macro {single} (want 16), overall {overall} via {fixes} (want 15), "
                  f"rejected={rejected}, {took:.2f}s")


def _family(n):
    # at most 5 terms of size <= 12, 3..6 symbols of arity 0/2/3, at most 4 macros
    return [random_instance(1000 + i, n_terms=5, max_size=12, n_symbols=6, n_macros=4, profile="ranked")
            for i in range(n)]


def test_criterion_3_oracle_p1(report):
    t0 = time.perf_counter()
    hits = 0
    for inst in _family(100):
        got = minimize_p1(inst.language, inst.definitions).output_size
        hits += got == oracle_p1(inst.language, inst.definitions)[0]
    took = time.perf_counter() - t0
    report(3, hits == 100 and took < 300, f"{hits}/100 exact in {took:.2f}s")


def test_criterion_4_oracle_p2(report):
    t0 = time.perf_counter()
    hits = 0
    for inst in _family(100):
        got = minimize_p2(inst.language, inst.definitions).output_size
        hits += got == oracle_p2(inst.language, inst.definitions)[0]
    took = time.perf_counter() - t0
    report(4, hits == 100 and took < 300, f"{hits}/100 exact in {took:.2f}s")


def test_criterion_5_oracle_p3(report):
    t0 = time.perf_counter()
    hits = compressible = 0
    budget = SearchBudget(max_seconds=120)
    for i in range(30):
        # heavy subterm reuse so that most instances have something to share
        inst = random_instance(2000 + i, n_terms=4, max_size=12, n_macros=0, profile="ranked", reuse=0.7)
        got = minimize_p3(inst.language).output_size
        hits += got == oracle_p3(inst.language, budget, max_macros=None)[0]
        compressible += got < inst.language.size
    doc = _load("example1.trm")
    ex1 = (minimize_p3(doc.terms).output_size, minimize_p3(doc.terms, prune=False).output_size,
           oracle_p3(doc.terms, max_macros=None)[0])
    took = time.perf_counter() - t0
    report(5, hits == 30 and ex1[0] == ex1[2] and took < 600,
           f"{hits}/30 exact ({compressible} compressible); example1 pruned/unpruned/oracle = {ex1} in {took:.1f}s")


def test_criterion_6_property_suites(report):
    rng = random.Random(6)
    failures = []
    for i in range(1000):
        inst = random_instance(3000 + i, reduced=i % 2 == 0)
        problem = i % 3 + 1
        if problem == 2 and i % 2:
            problem = 1
        if problem == 1:
            r = minimize_p1(inst.language, inst.definitions)
            if not exhaustiveness(r.encoding).macrofication:
                failures.append(f"p1 exhaustiveness seed {3000 + i}")
        elif problem == 2:
            r = minimize_p2(inst.language, inst.definitions)
            if not exhaustiveness(r.encoding).exhaustive:
                failures.append(f"p2 exhaustiveness seed {3000 + i}")
        else:
            r = minimize_p3(inst.language)
        if r.encoding.expand() != inst.language:
            failures.append(f"round-trip seed {3000 + i}")
        if i % 10 == 0:
            perm = list(inst.language)
            rng.shuffle(perm)
            again = {1: lambda l: minimize_p1(l, inst.definitions), 2: lambda l: minimize_p2(l, inst.definitions),
                     3: minimize_p3}[problem](Language(perm))
            if write_encoding(again.encoding) != write_encoding(r.encoding):
                failures.append(f"permutation seed {3000 + i}")
    big = synthetic_corpus(11, n_terms=500, target_nodes=8000)
    outs = {w: write_encoding(minimize_p3(big, workers=w).encoding) for w in (1, 2)}
    if outs[1] != outs[2]:
        failures.append("worker count changes output")
    def shuffle(t: Term) -> Term:
        if not t.children:
            return t
        kids = [shuffle(c) for c in t.children]
        m = t.kind.arity if t.kind.order == "mixed" else len(kids) if t.kind.order == "ordered" else 0
        tail = kids[m:]
        rng.shuffle(tail)
        return Term(t.label, t.kind, kids[:m] + tail)

    for i in range(1000):
        t = random_term(rng, ALPHA, rng.randint(1, 20))
        if shuffle(t).key != t.key:
            failures.append(f"shuffle term {i}")
    report(6, not failures, f"{len(failures)} failures" + (f": {failures[:5]}" if failures else ""))


def test_criterion_7_mini_ontology(report, tmp_path, capsys):
    problems = []
    with open(data_path("mini_ontology.ofn"), encoding="utf-8") as fh:
        doc = parse_owl_functional(fh.read())
    for problem in (1, 2, 3):
        enc, stats = tmp_path / f"e{problem}.trm", tmp_path / f"s{problem}.json"
        main(["minimize", "--problem", str(problem), "--input", data_path("mini_ontology.ofn"),
              "-o", str(enc), "--stats", str(stats)])
        for got, name in ((enc, f"mini_ontology.p{problem}.trm"), (stats, f"mini_ontology.p{problem}.json")):
            with open(data_path("golden/" + name), encoding="utf-8") as fh:
                if got.read_text() != fh.read():
                    problems.append(f"{name} differs from golden")
        c = prepare_experiment(doc, problem)
        claimed = json.loads(stats.read_text())["size_output"]
        if problem == 1:
            best = oracle_p1(c.language, c.definitions)[0]
        elif problem == 2:
            best = oracle_p2(c.language, c.definitions)[0]
        else:
            best = oracle_p3(c.language, max_macros=3)[0]
        if best != claimed:
            problems.append(f"problem {problem}: golden {claimed}, oracle {best}")
    user = tmp_path / "user.ofn"
    user.write_text(
        "Prefix(:=<http://u.org/>)\nOntology(\n"
        "  EquivalentClasses(:A ObjectIntersectionOf(:B ObjectSomeValuesFrom(:r :C)))\n"
        "  SubClassOf(:D ObjectIntersectionOf(:B ObjectSomeValuesFrom(:r :C)))\n"
        "  SubClassOf(:E ObjectMinCardinality(2 :r :C))\n"
        '  SubClassOf(:F DataHasValue(:p "v"))\n)\n')
    report_path = tmp_path / "r.json"
    code = main(["owl-import", "--input", str(user), "--lenient-owl", "-o", str(tmp_path / "u.trm"),
                 "--report", str(report_path)])
    capsys.readouterr()
    try:
        r = json.loads(report_path.read_text())
        need = {"problem", "num_axioms", "num_terms", "size_language", "dropped", "skipped"}
        if code != 0 or not need <= set(r) or r["num_axioms"] != 4:
            problems.append(f"owl-import report malformed: {r}")
    except (OSError, ValueError) as exc:
        problems.append(f"owl-import report unreadable: {exc}")
    report(7, not problems, "golden stats reproduced and oracle-checked" if not problems else str(problems))


def test_criterion_8_performance(report, tmp_path, capsys):
    src, enc, stats = tmp_path / "big.trm", tmp_path / "enc.trm", tmp_path / "s.json"
    lang = synthetic_corpus(7)
    src.write_text(write_corpus(lang))
    t0 = time.perf_counter()
    code = main(["minimize", "--problem", "3", "--input", str(src), "-o", str(enc), "--stats", str(stats)])
    t_min = time.perf_counter() - t0
    t0 = time.perf_counter()
    vcode = main(["verify", str(enc), str(src), "--stats", str(stats)])
    t_ver = time.perf_counter() - t0
    capsys.readouterr()
    s = json.loads(stats.read_text())
    ok = code == 0 and vcode == 0 and t_min < 60 and t_ver < 10
    report(8, ok, f"{len(lang)} terms / {lang.size} nodes: minimize {t_min:.1f}s, verify {t_ver:.1f}s, "
                  f"{s['size_input']} -> {s['size_output']} ({s['proportional_reduction_percent']}%)")
