"""Why problem 3 refuses alphabets with unary symbols.

The selection rule (repeated, undominated subterms) is only sound without
ranked symbols of arity 1.  This script compares candidate macro sets on the
unary example with the exhaustive oracle.
"""

from __future__ import annotations

from macrofy import MacroDefinitions, UnarySymbolsPresent, data_path, minimize_p3, oracle_p2, oracle_p3, parse_corpus

with open(data_path("unary_example.trm"), encoding="utf-8") as fh:
    doc = parse_corpus(fh.read())
lang = doc.terms
p = doc.alphabet.parse
print("language:", [str(t) for t in lang], "size", lang.size)

# %% Hand-picked macro sets, each evaluated by the problem-2 oracle.
candidates = {
    "b(c)": ["b(c)"],
    "x(a(b(c))), y(a(b(c)))": ["x(a(b(c)))", "y(a(b(c)))"],
    "a(b(c))": ["a(b(c))"],
}
for label, rhs in candidates.items():
    defs = MacroDefinitions({f"__h{i}": p(s) for i, s in enumerate(rhs, 1)})
    print(f"  {{{label}}}: {oracle_p2(lang, defs)[0]}")

# %% The exhaustive search over all macro sets.
best, enc = oracle_p3(lang, max_macros=None)
print("oracle optimum:", best, [str(enc.definitions.fixpoint(m)) for m in enc.definitions])

# %% The polynomial algorithm rejects the instance instead of guessing.
try:
    minimize_p3(lang)
except UnarySymbolsPresent as exc:
    print("minimize_p3:", exc)
