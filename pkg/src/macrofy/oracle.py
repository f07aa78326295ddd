"""Exhaustive reference minimizers for small instances.

These enumerate encodings directly instead of relying on containment order,
and exist to certify the polynomial algorithms on desk-sized inputs.

A single move replaces one subterm ``u`` of a (partially macrofied) term by a
macro whose fixed point equals the expansion of ``u``.  Starting from a
macro-free term, the states reachable this way are exactly its
macrofications.  The encoding size is a sum over terms (and, for rewritable
definitions, over right-hand sides), and moves act on one of these
components at a time, so each component is searched on its own and the
minima are added.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import BudgetExceeded
from .macros import EMPTY, Encoding, MacroDefinitions, require_reduced
from .terms import Language, Term, macro, positions, substitute


@dataclass(frozen=True)
class SearchBudget:
    max_states: int = 2_000_000
    max_seconds: float = 300.0

    def __post_init__(self):
        if self.max_states <= 0 or self.max_seconds <= 0:
            raise ValueError("search budget must be positive")


class _Meter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.states = 0
        self.deadline = time.monotonic() + budget.max_seconds

    def tick(self) -> None:
        self.states += 1
        if self.states > self.budget.max_states:
            raise BudgetExceeded(f"more than {self.budget.max_states} states explored")
        if self.states % 1024 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"search exceeded {self.budget.max_seconds} s")


def _fix_index(defs: MacroDefinitions) -> Dict[str, List[str]]:
    index: Dict[str, List[str]] = {}
    for name in sorted(defs):
        index.setdefault(defs.fixpoint(name).key, []).append(name)
    return index


def _search(start: Term, defs: MacroDefinitions, index: Dict[str, List[str]], meter: _Meter,
            allow_root: bool) -> Term:
    """Smallest state reachable from ``start``; ties broken by canonical key."""
    expand_memo: Dict[str, str] = {}

    def fix_key(u: Term) -> str:
        k = expand_memo.get(u.key)
        if k is None:
            k = defs.expand(u).key
            expand_memo[u.key] = k
        return k

    best = start
    seen = {start.key}
    stack = [start]
    while stack:
        state = stack.pop()
        meter.tick()
        if (state.size, state.key) < (best.size, best.key):
            best = state
        for p, u in positions(state):
            if u.is_macro or (not p and not allow_root):
                continue
            for name in index.get(fix_key(u), ()):
                nxt = substitute(state, p, macro(name))
                if nxt.key not in seen:
                    seen.add(nxt.key)
                    stack.append(nxt)
    return best


def _check_ground(language: Iterable[Term]) -> Language:
    lang = language if isinstance(language, Language) else Language(language)
    if not lang.ground:
        raise ValueError("oracle input must be macro-free")
    return lang


def oracle_p1(language: Iterable[Term], definitions: MacroDefinitions = EMPTY,
              budget: Optional[SearchBudget] = None) -> Tuple[int, Encoding]:
    """Minimum encoding size w.r.t. fixed definitions, by exhaustive search."""
    lang = _check_ground(language)
    meter = _Meter(budget or SearchBudget())
    index = _fix_index(definitions)
    out = [_search(t, definitions, index, meter, allow_root=True) for t in lang]
    enc = Encoding(Language(out), definitions, lang)
    return enc.size, enc


def _best_definitions(defs: MacroDefinitions, index, meter) -> MacroDefinitions:
    rhs = {}
    for name in defs:
        rhs[name] = _search(defs.fixpoint(name), defs, index, meter, allow_root=False)
    return MacroDefinitions(rhs)


def oracle_p2(language: Iterable[Term], definitions: MacroDefinitions = EMPTY,
              budget: Optional[SearchBudget] = None) -> Tuple[int, Encoding]:
    """Minimum encoding size over definitions equivalent to ``definitions``."""
    lang = _check_ground(language)
    require_reduced(definitions)
    meter = _Meter(budget or SearchBudget())
    return _p2(lang, definitions, meter)


def _p2(lang: Language, definitions: MacroDefinitions, meter: _Meter) -> Tuple[int, Encoding]:
    index = _fix_index(definitions)
    out = [_search(t, definitions, index, meter, allow_root=True) for t in lang]
    best_defs = _best_definitions(definitions, index, meter)
    enc = Encoding(Language(out), best_defs, lang)
    return enc.size, enc


def _all_occurrences(lang: Language) -> List[Term]:
    return [u for t in lang for _, u in positions(t)]


def candidate_fixpoints(lang: Language, repeated_only: bool = True) -> List[Term]:
    """Distinct non-constant subterms, optionally only those occurring twice or more.

    Counting is done pairwise with plain term equality.
    """
    occ = _all_occurrences(lang)
    distinct: List[Term] = []
    for u in occ:
        if u.is_constant or any(u == d for d in distinct):
            continue
        distinct.append(u)
    if repeated_only:
        distinct = [d for d in distinct if sum(1 for u in occ if u == d) >= 2]
    return sorted(distinct, key=lambda d: d.key)


def oracle_p3(language: Iterable[Term], budget: Optional[SearchBudget] = None, *,
              max_macros: Optional[int] = 4, all_subterms: Optional[bool] = None) -> Tuple[int, Encoding]:
    """Minimum encoding size over all macro definitions.

    Every subset (up to ``max_macros`` elements) of candidate fixed points is
    tried, each under the equivalent-definitions minimum.  Candidates are the
    repeated non-constant subterms; with ``all_subterms`` (the default when a
    ranked symbol has a single child) every non-constant subterm is a
    candidate.
    """
    lang = _check_ground(language)
    meter = _Meter(budget or SearchBudget())
    if all_subterms is None:
        all_subterms = any(len(u.children) == 1 and u.kind.is_ranked for u in _all_occurrences(lang))
    cands = candidate_fixpoints(lang, repeated_only=not all_subterms)
    top = len(cands) if max_macros is None else min(max_macros, len(cands))
    best: Optional[Tuple[int, Encoding]] = None
    for r in range(top + 1):
        for subset in itertools.combinations(cands, r):
            defs = MacroDefinitions({f"__o{i}": t for i, t in enumerate(subset, 1)})
            n, enc = _p2(lang, defs, meter)
            if best is None or n < best[0]:
                best = (n, enc)
    assert best is not None
    return best


def oracle_for(problem: int, language: Iterable[Term], definitions: MacroDefinitions = EMPTY,
               budget: Optional[SearchBudget] = None, **kw) -> Tuple[int, Encoding]:
    if problem == 1:
        return oracle_p1(language, definitions, budget)
    if problem == 2:
        return oracle_p2(language, definitions, budget)
    if problem == 3:
        return oracle_p3(language, budget, **kw)
    raise ValueError(f"unknown problem {problem}")
