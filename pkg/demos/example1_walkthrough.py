"""Walk through the three minimization problems on the bundled example.

Run with ``python3 demos/example1_walkthrough.py``.
"""

from __future__ import annotations

from macrofy import build_hasse, data_path, minimize_p1, minimize_p2, minimize_p3, parse_corpus
from macrofy.corpus_io import write_encoding

# %% Load the corpus: three terms over unordered a, b, c, d and constants e, f.
with open(data_path("example1.trm"), encoding="utf-8") as fh:
    doc = parse_corpus(fh.read())
defs = doc.definitions()
print("terms:", [str(t) for t in doc.terms], "size", doc.terms.size)
for name in defs:
    print(f"  {name} -> {defs[name]}   (fixed point {defs.fixpoint(name)})")

# %% Containment order of the given macros, largest fixed point first.
hasse = build_hasse(defs)
print("levels:", hasse.level_macros())

# %% Problem 1: macrofy the terms, keep the definitions as they are.
r1 = minimize_p1(doc.terms, defs)
print("\nproblem 1:", r1.language_size, "+", r1.definitions_size, "=", r1.output_size)
print(write_encoding(r1.encoding))

# %% Problem 2: definitions may be rewritten too, so m'' can use m and m'.
r2 = minimize_p2(doc.terms, defs)
print("problem 2:", r2.language_size, "+", r2.definitions_size, "=", r2.output_size)
print(write_encoding(r2.encoding))

# %% Problem 3: choose the macros. d(f) is selected first and then pruned,
# since it occurs only once outside b(c(e), d(f)).
r3 = minimize_p3(doc.terms)
unpruned = minimize_p3(doc.terms, prune=False)
print("problem 3:", r3.language_size, "+", r3.definitions_size, "=", r3.output_size,
      f"(without pruning: {unpruned.output_size})")
print(write_encoding(r3.encoding))
