"""Rewrite the golden files for the mini ontology after checking them.

Each result is compared with the exhaustive oracle before anything is
written.  Run from the repository root.
"""

from __future__ import annotations

import os
import tempfile

from macrofy import data_path, oracle_p1, oracle_p2, oracle_p3
from macrofy.cli import main
from macrofy.owl import parse_owl_functional, prepare_experiment

src = data_path("mini_ontology.ofn")
golden = os.path.join("src", "macrofy", "data", "golden")
with open(src, encoding="utf-8") as fh:
    doc = parse_owl_functional(fh.read())

for problem in (1, 2, 3):
    stem = os.path.join(golden, "mini_ontology")
    with tempfile.TemporaryDirectory() as tmp:
        stats = os.path.join(tmp, "s.json")
        main(["minimize", "--problem", str(problem), "--input", src, "-o", f"{stem}.p{problem}.trm",
              "--stats", stats, "--save-input", f"{stem}.input.p{problem}.trm"])
        with open(stats, encoding="utf-8") as fh:
            text = fh.read()
    corpus = prepare_experiment(doc, problem)
    if problem == 1:
        best = oracle_p1(corpus.language, corpus.definitions)[0]
    elif problem == 2:
        best = oracle_p2(corpus.language, corpus.definitions)[0]
    else:
        best = oracle_p3(corpus.language, max_macros=3)[0]
    assert f'"size_output": {best},' in text, (problem, best)
    with open(f"{stem}.p{problem}.json", "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"problem {problem}: size {best} (oracle agrees)")
