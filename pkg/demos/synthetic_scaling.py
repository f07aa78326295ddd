"""Runtime of problem 3 on synthetic corpora of growing size."""

from __future__ import annotations

import time

from macrofy import is_encoding, minimize_p3
from macrofy.generate import synthetic_corpus

print(f"{'terms':>7} {'nodes':>8} {'select+prune s':>15} {'verify s':>9} {'reduction':>9}")
for n_terms in (1_000, 2_500, 5_000, 10_000):
    lang = synthetic_corpus(7, n_terms=n_terms, target_nodes=15 * n_terms)
    t0 = time.perf_counter()
    r = minimize_p3(lang)
    t1 = time.perf_counter()
    assert is_encoding(r.encoding, lang)
    t2 = time.perf_counter()
    print(f"{n_terms:>7} {lang.size:>8} {t1 - t0:>15.2f} {t2 - t1:>9.2f} "
          f"{float(r.proportional_reduction):>9.1%}")
