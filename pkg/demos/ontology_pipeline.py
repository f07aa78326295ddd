"""From an OWL functional-syntax file to minimized encodings.

Uses the bundled mini ontology; pass another ``.ofn`` path as the first
argument to run on your own file.
"""

from __future__ import annotations

import sys

from macrofy import data_path, minimize_p1, minimize_p2, minimize_p3
from macrofy.owl import parse_owl_functional, prepare_experiment

path = sys.argv[1] if len(sys.argv) > 1 else data_path("mini_ontology.ofn")
with open(path, encoding="utf-8") as fh:
    doc = parse_owl_functional(fh.read(), lenient=True)
print(f"{len(doc.axioms)} class axioms; skipped {dict(doc.skipped)}")

# %% Prepare one corpus per problem and minimize it.
solvers = {1: minimize_p1, 2: minimize_p2, 3: lambda lang, _defs: minimize_p3(lang)}
print(f"\n{'problem':>7} {'terms':>6} {'macros':>6} {'input':>6} {'output':>6} {'change':>7}  dropped")
for problem, solve in solvers.items():
    corpus = prepare_experiment(doc, problem)
    r = solve(corpus.language, corpus.definitions)
    pct = float(r.proportional_reduction) * 100
    print(f"{problem:>7} {r.term_count:>6} {r.macro_count:>6} {r.input_size:>6} {r.output_size:>6} "
          f"{pct:>6.1f}%  {corpus.drop_counts()}")

# %% Problem 1 keeps the ontology's own definitions verbatim, so on a small
# file it can come out larger than the expanded input.
