"""Size-minimal encodings of finite languages.

Three problems are solved here:

* ``minimize_p1``: the minimal macrofication of a language for fixed
  macro definitions.
* ``minimize_p2``: as above, but the right-hand sides may be rewritten to
  any equivalent definitions (same fixed points).
* ``minimize_p3``: the minimal encoding over all macro definitions, for
  languages without unary symbols.

All three rest on one observation: when the fixed point of one macro occurs
inside the fixed point of another, the containing macro must be
instantiated first.  Walking each term top-down and replacing the outermost
subterm that is the fixed point of some macro does exactly that, one term at
a time.
"""

from __future__ import annotations

import heapq
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .containment import build_hasse
from .errors import UnarySymbolsPresent
from .macros import EMPTY, Encoding, MacroDefinitions, macros_used, require_reduced
from .terms import Language, Term, format_term, iter_nodes, macro


@dataclass(frozen=True)
class MinimizationReport:
    """Outcome of a minimization run."""

    problem: int
    encoding: Encoding
    input_size: int
    changed_terms: int

    @property
    def language_size(self) -> int:
        return self.encoding.language_size

    @property
    def definitions_size(self) -> int:
        return self.encoding.definitions_size

    @property
    def output_size(self) -> int:
        return self.encoding.size

    @property
    def proportional_reduction(self) -> Fraction:
        if self.input_size == 0:
            return Fraction(0)
        return 1 - Fraction(self.output_size, self.input_size)

    @property
    def term_count(self) -> int:
        return len(self.encoding.language)

    @property
    def macro_count(self) -> int:
        return len(self.encoding.definitions)

    @property
    def instantiation_count(self) -> int:
        return self.encoding.instantiation_count()


# -- per-term macrofication ----------------------------------------------------------

def _macrofy(t: Term, lookup: Mapping[str, str], memo: Dict[str, Term]) -> Term:
    name = lookup.get(t.key)
    if name is not None:
        return macro(name)
    if t.is_constant:
        return t
    hit = memo.get(t.key)
    if hit is None:
        hit = t.with_children([_macrofy(c, lookup, memo) for c in t.children])
        memo[t.key] = hit
    return hit


def macrofy_term(t: Term, lookup: Mapping[str, str]) -> Term:
    """Instantiate, outermost first, every subterm of ``t`` that ``lookup`` maps to a macro.

    ``lookup`` maps canonical keys of fixed points to macro names.  The
    result depends only on ``t`` and ``lookup``.
    """
    return _macrofy(t, lookup, {})


def _macrofy_chunk(args: Tuple[Sequence[Term], Mapping[str, str]]) -> List[Term]:
    terms, lookup = args
    memo: Dict[str, Term] = {}
    return [_macrofy(t, lookup, memo) for t in terms]


def macrofy_terms(terms: Sequence[Term], lookup: Mapping[str, str], workers: int = 1) -> List[Term]:
    """``macrofy_term`` over many terms, optionally split across worker processes."""
    terms = list(terms)
    if workers <= 1 or len(terms) < 2:
        return _macrofy_chunk((terms, lookup))
    n = min(workers * 4, len(terms))
    step = -(-len(terms) // n)
    chunks = [(terms[i:i + step], lookup) for i in range(0, len(terms), step)]
    out: List[Term] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_macrofy_chunk, chunks):
            out.extend(part)
    return out


def fixpoint_lookup(defs: MacroDefinitions, max_size: Optional[int] = None) -> Dict[str, str]:
    """Fixed-point key -> macro; equal fixed points resolve to the least name."""
    lookup: Dict[str, str] = {}
    for name in sorted(defs):
        fix = defs.fixpoint(name)
        if max_size is not None and fix.size > max_size:
            continue
        lookup.setdefault(fix.key, name)
    return lookup


def _require_ground(language: Iterable[Term]) -> Language:
    lang = language if isinstance(language, Language) else Language(language)
    if not lang.ground:
        raise ValueError("input language must be macro-free; expand it first")
    return lang


def _report(problem: int, source: Language, macrofied: List[Term], defs: MacroDefinitions,
            input_size: Optional[int]) -> MinimizationReport:
    changed = sum(1 for s, m in zip(source, macrofied) if s.key != m.key)
    enc = Encoding(Language(macrofied), defs, source)
    return MinimizationReport(problem, enc, source.size if input_size is None else input_size, changed)


def minimize_p1(language: Iterable[Term], definitions: MacroDefinitions = EMPTY, *, workers: int = 1,
                strategy: str = "per-term", input_size: Optional[int] = None) -> MinimizationReport:
    """Size-minimal encoding of ``language`` w.r.t. the given definitions.

    Definitions are returned unchanged.  ``strategy="levelwise"`` sweeps the
    containment diagram level by level instead of walking each term once;
    both give identical output.  For non-reduced definitions the macro with
    the least name wins among those sharing a fixed point.
    """
    source = _require_ground(language)
    tau = max((t.size for t in source), default=0)
    if strategy == "per-term":
        lookup = fixpoint_lookup(definitions, max_size=tau)
        out = macrofy_terms(source.terms, lookup, workers)
    elif strategy == "levelwise":
        out = _levelwise(source.terms, definitions, tau)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return _report(1, source, out, definitions, input_size)


def _replace_all(t: Term, key: str, leaf: Term) -> Term:
    if t.key == key:
        return leaf
    if t.is_constant:
        return t
    return t.with_children([_replace_all(c, key, leaf) for c in t.children])


def _levelwise(terms: Sequence[Term], defs: MacroDefinitions, tau: int) -> List[Term]:
    hasse = build_hasse(defs, max_useful_size=tau)
    current = list(terms)
    for level in hasse.levels:
        for k in level:
            leaf = macro(hasse.nodes[k].representative)
            current = [_replace_all(t, k, leaf) for t in current]
    return current


def compress_definitions(defs: MacroDefinitions, lookup: Optional[Mapping[str, str]] = None) -> MacroDefinitions:
    """Equivalent definitions whose right-hand sides are exhaustively macrofied."""
    if lookup is None:
        lookup = fixpoint_lookup(defs)
    memo: Dict[str, Term] = {}
    out = {}
    for name in defs:
        fix = defs.fixpoint(name)
        out[name] = fix.with_children([_macrofy(c, lookup, memo) for c in fix.children])
    return MacroDefinitions(out)


def minimize_p2(language: Iterable[Term], definitions: MacroDefinitions = EMPTY, *, workers: int = 1,
                input_size: Optional[int] = None) -> MinimizationReport:
    """Size-minimal encoding over all definitions equivalent to ``definitions``.

    Both the language and every right-hand side are macrofied; macro names are
    kept, so the result is the unique minimum without renaming.
    """
    source = _require_ground(language)
    require_reduced(definitions)
    lookup = fixpoint_lookup(definitions)
    out = macrofy_terms(source.terms, lookup, workers)
    return _report(2, source, out, compress_definitions(definitions, lookup), input_size)


# -- occurrences and dominance ------------------------------------------------------

@dataclass(frozen=True)
class DominanceEntry:
    term: Term
    count: int
    dominated_by: Optional[str]


class DominanceTable(Mapping[str, DominanceEntry]):
    """Occurrence counts of every distinct subterm, with dominance."""

    def __init__(self, entries: Dict[str, DominanceEntry]):
        self._entries = entries

    def __getitem__(self, key: str) -> DominanceEntry:
        return self._entries[key]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def occ(self, t: Union[Term, str]) -> int:
        key = t.key if isinstance(t, Term) else t
        e = self._entries.get(key)
        return e.count if e else 0

    def dominator(self, t: Union[Term, str]) -> Optional[Term]:
        key = t.key if isinstance(t, Term) else t
        e = self._entries.get(key)
        if e is None or e.dominated_by is None:
            return None
        return self._entries[e.dominated_by].term

    def is_dominated(self, t: Union[Term, str]) -> bool:
        key = t.key if isinstance(t, Term) else t
        e = self._entries.get(key)
        return e is not None and e.dominated_by is not None


_MANY = object()


def occurrence_table(x: Union[Encoding, Iterable[Term]]) -> DominanceTable:
    """Count occurrences of all subterms and resolve dominance.

    For an encoding, occurrences in the macrofied language and in all
    right-hand sides are counted.  A subterm is dominated when every one of
    its occurrences sits under the same parent subterm and that parent occurs
    equally often; this is equivalent to the existence of any strict superterm
    with an equal count.  ``dominated_by`` names the largest such superterm.
    """
    if isinstance(x, Encoding):
        roots: List[Term] = list(x.language) + list(x.definitions.values())
    else:
        roots = list(x)
    counts: Dict[str, int] = {}
    reps: Dict[str, Term] = {}
    parent: Dict[str, object] = {}
    for root in roots:
        parent[root.key] = _MANY
        stack = [root]
        while stack:
            node = stack.pop()
            k = node.key
            if k in counts:
                counts[k] += 1
            else:
                counts[k] = 1
                reps[k] = node
            for c in node.children:
                seen = parent.get(c.key)
                if seen is None:
                    parent[c.key] = k
                elif seen is not _MANY and seen != k:
                    parent[c.key] = _MANY
                stack.append(c)
    # a parent holding the same child twice occurs at most half as often,
    # so the count test rejects it
    direct: Dict[str, Optional[str]] = {}
    for k, n in counts.items():
        p = parent.get(k)
        direct[k] = p if (p is not None and p is not _MANY and counts[p] == n) else None  # type: ignore[index]
    entries: Dict[str, DominanceEntry] = {}
    for k in counts:
        top = direct[k]
        if top is not None:
            while direct[top] is not None:
                top = direct[top]
        entries[k] = DominanceEntry(reps[k], counts[k], top)
    return DominanceTable(entries)


def unary_symbols(language: Iterable[Term]) -> Dict[str, List[Term]]:
    """Ranked symbols occurring with exactly one child, with offending terms."""
    found: Dict[str, List[Term]] = defaultdict(list)
    for t in language:
        for node in iter_nodes(t):
            if len(node.children) == 1 and node.kind.is_ranked:
                if not found[node.label] or found[node.label][-1] is not t:
                    found[node.label].append(t)
    return dict(found)


def _reject_unary(language: Iterable[Term]) -> None:
    bad = unary_symbols(language)
    if bad:
        terms = sorted({format_term(t) for ts in bad.values() for t in ts})
        raise UnarySymbolsPresent(bad, terms)


def select_macros_p3(language: Iterable[Term]) -> MacroDefinitions:
    """One macro per non-constant subterm that occurs at least twice and is not dominated.

    Macros are named ``__m1, __m2, ...`` following the order of their
    canonical keys.
    """
    source = _require_ground(language)
    _reject_unary(source)
    table = occurrence_table(source)
    picked = sorted(
        k for k, e in table.items()
        if e.count >= 2 and not e.term.is_constant and e.dominated_by is None
    )
    return MacroDefinitions({f"__m{i}": table[k].term for i, k in enumerate(picked, 1)})


def _prune_plan(enc: Encoding) -> Tuple[List[str], int]:
    """Macros to drop, greedily, while dropping one does not grow the encoding.

    Dropping macro m with k occurrences and a right-hand side of size r
    re-inlines r - 1 extra nodes at each occurrence and saves the 1 + r nodes
    of its definition.  Returns the drop order and the resulting size.
    """
    defs = enc.definitions
    uses: Counter = Counter()
    for t in enc.language:
        uses.update(macros_used(t))
    inner: Dict[str, Counter] = {m: macros_used(rhs) for m, rhs in defs.items()}
    containers: Dict[str, Counter] = defaultdict(Counter)
    for m, c in inner.items():
        uses.update(c)
        for m2, n in c.items():
            containers[m2][m] = n
    rsize = {m: rhs.size for m, rhs in defs.items()}

    def delta(m: str) -> int:
        return uses[m] * (rsize[m] - 1) - (1 + rsize[m])

    heap = [(delta(m), m) for m in defs]
    heapq.heapify(heap)
    alive = set(defs)
    dropped: List[str] = []
    total = enc.size
    while heap:
        d, m = heapq.heappop(heap)
        if m not in alive or d != delta(m):
            continue
        if d > 0:
            break
        k, r = uses[m], rsize[m]
        touched = set()
        for m3, c3 in containers.pop(m, Counter()).items():
            rsize[m3] += c3 * (r - 1)
            inner[m3].pop(m, None)
            for m2, c in inner[m].items():
                inner[m3][m2] += c3 * c
                containers[m2][m3] += c3 * c
            touched.add(m3)
        for m2, c in inner[m].items():
            uses[m2] += (k - 1) * c
            containers[m2].pop(m, None)
            touched.add(m2)
        alive.discard(m)
        del inner[m]
        dropped.append(m)
        total += d
        for x in touched:
            if x in alive:
                heapq.heappush(heap, (delta(x), x))
    return dropped, total


def minimize_p3(language: Iterable[Term], *, prune: bool = True, workers: int = 1,
                input_size: Optional[int] = None) -> MinimizationReport:
    """Size-minimal encoding of a language without unary symbols.

    With ``prune`` (the default), macros whose removal does not enlarge the
    encoding are dropped afterwards; ties go to fewer macros.
    """
    source = _require_ground(language)
    defs = select_macros_p3(source)
    report = minimize_p2(source, defs, workers=workers)
    if prune and len(defs):
        dropped, expected = _prune_plan(report.encoding)
        if dropped:
            keep = [m for m in defs if m not in set(dropped)]
            report = minimize_p2(source, defs.restrict(keep), workers=workers)
            assert report.output_size == expected, (report.output_size, expected)
    return MinimizationReport(3, report.encoding, source.size if input_size is None else input_size,
                              report.changed_terms)
