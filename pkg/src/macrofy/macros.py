"""Macro definitions, expansion, instantiation and encodings."""

from __future__ import annotations

import graphlib
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple, Union

from .errors import (
    ConstantExpansion,
    CyclicDefinitions,
    NotInstantiable,
    NotReduced,
    SymbolClash,
    UnknownSymbol,
)
from .terms import (
    Language,
    Position,
    Term,
    iter_nodes,
    macro,
    positions,
    subterm_at,
    substitute,
)


def macros_used(t: Term) -> Counter:
    """Multiset of macro symbols occurring in ``t``."""
    if t.ground:
        return Counter()
    return Counter(n.label for n in iter_nodes(t) if n.is_macro)


class MacroDefinitions(Mapping[str, Term]):
    """An acyclic, total map from macro symbols to non-constant terms.

    Fixed-point expansions are computed once on construction so instances are
    safe to share between threads and processes afterwards.
    """

    def __init__(self, defs: Optional[Mapping[str, Term]] = None):
        defs = dict(defs or {})
        for name, rhs in defs.items():
            if not isinstance(rhs, Term):
                raise TypeError(f"definition of {name!r} is not a Term")
            if rhs.is_constant:
                raise ConstantExpansion(name)
        uses: Dict[str, set] = {}
        for name, rhs in defs.items():
            used = set(macros_used(rhs))
            unknown = used - defs.keys()
            if unknown:
                raise UnknownSymbol(sorted(unknown)[0], where=f"definition of {name}")
            uses[name] = used
        try:
            order = list(graphlib.TopologicalSorter(uses).static_order())
        except graphlib.CycleError as exc:
            cycle = list(exc.args[1])
            raise CyclicDefinitions(cycle) from None
        self._defs = defs
        self._uses = uses
        self._fix: Dict[str, Term] = {}
        for name in order:
            self._fix[name] = self._expand(defs[name], {})
        self._depth = _uses_depth(order, uses)

    # Mapping interface ---------------------------------------------------------
    def __getitem__(self, name: str) -> Term:
        return self._defs[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._defs)

    def __len__(self) -> int:
        return len(self._defs)

    def __repr__(self) -> str:
        from .terms import format_term

        return "MacroDefinitions({" + ", ".join(f"{m} -> {format_term(t)}" for m, t in self._defs.items()) + "})"

    def __eq__(self, other) -> bool:
        if isinstance(other, MacroDefinitions):
            return self._defs.keys() == other._defs.keys() and all(
                self._defs[k].key == other._defs[k].key for k in self._defs
            )
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    # expansion -----------------------------------------------------------------
    def fixpoint(self, name: str) -> Term:
        """𝓜*(m) for the macro ``name``."""
        return self._fix[name]

    @property
    def fixpoints(self) -> Dict[str, Term]:
        return dict(self._fix)

    def uses(self, name: str) -> frozenset:
        """Macros directly used by ``name``."""
        return frozenset(self._uses[name])

    @property
    def longest_chain(self) -> int:
        """Length of the longest `uses` chain (1 for a macro using no other)."""
        return self._depth

    def _expand(self, t: Term, memo: Dict[str, Term]) -> Term:
        if t.ground:
            return t
        if t.is_macro:
            return self._fix[t.label]
        hit = memo.get(t.key)
        if hit is not None:
            return hit
        out = t.with_children([self._expand(c, memo) for c in t.children])
        memo[t.key] = out
        return out

    def expand(self, t: Term) -> Term:
        """Fixed-point expansion of a single term."""
        if t.is_macro and t.label not in self._fix:
            raise UnknownSymbol(t.label)
        return self._expand(t, {})

    def expand_language(self, terms: Iterable[Term]) -> Language:
        memo: Dict[str, Term] = {}
        return Language(self._expand(t, memo) for t in terms)

    def expand_once(self, t: Term) -> Term:
        if t.ground:
            return t
        if t.is_macro:
            return self._defs[t.label]
        return t.with_children([self.expand_once(c) for c in t.children])

    def chain(self, name: str) -> List[Term]:
        """[𝓜¹(m), 𝓜²(m), ...] up to and including the fixed point."""
        out = [self._defs[name]]
        while not out[-1].ground:
            out.append(self.expand_once(out[-1]))
        return out

    def restrict(self, names: Iterable[str]) -> "MacroDefinitions":
        names = set(names)
        return MacroDefinitions({m: t for m, t in self._defs.items() if m in names})

    def groups(self) -> List[List[str]]:
        """Macros grouped by equal fixed point (singletons included)."""
        by_key: Dict[str, List[str]] = defaultdict(list)
        for name, fix in self._fix.items():
            by_key[fix.key].append(name)
        return [sorted(v) for _, v in sorted(by_key.items())]

    @property
    def size(self) -> int:
        return sum(1 + t.size for t in self._defs.values())


def _uses_depth(order: List[str], uses: Mapping[str, set]) -> int:
    depth: Dict[str, int] = {}
    for name in order:
        depth[name] = 1 + max((depth[u] for u in uses[name]), default=0)
    return max(depth.values(), default=0)


def validate_definitions(defs: Mapping[str, Term], alphabet: Optional[Mapping] = None) -> MacroDefinitions:
    """Check definitions against an alphabet and return them validated.

    Macro names must be disjoint from the alphabet and every non-macro symbol
    on a right-hand side must be declared with the kind it is used with.
    """
    if isinstance(defs, MacroDefinitions) and alphabet is None:
        return defs
    if alphabet is not None:
        clash = set(defs) & set(alphabet)
        if clash:
            raise SymbolClash(clash)
        for name, rhs in defs.items():
            for node in iter_nodes(rhs):
                if node.is_macro:
                    continue
                kind = alphabet.get(node.label)
                if kind is None:
                    raise UnknownSymbol(node.label, where=f"definition of {name}")
                if kind != node.kind:
                    raise UnknownSymbol(node.label, where=f"used as {node.kind} but declared {kind}")
    return defs if isinstance(defs, MacroDefinitions) else MacroDefinitions(defs)


EMPTY = MacroDefinitions()


def expand_once(t: Term, defs: MacroDefinitions) -> Term:
    return defs.expand_once(t)


def expand_n(t: Term, defs: MacroDefinitions, n: int) -> Term:
    for _ in range(n):
        t = defs.expand_once(t)
    return t


def expand_fixedpoint(x: Union[Term, Iterable[Term]], defs: MacroDefinitions):
    """𝓜*(t) for a term, or the set of expansions for a collection of terms."""
    if isinstance(x, Term):
        return defs.expand(x)
    return defs.expand_language(x)


def can_instantiate_at(t: Term, name: str, p: Position, defs: MacroDefinitions) -> bool:
    """Is ``t|_p`` = 𝓜ⁿ(m) for some n ≥ 1?"""
    sub = subterm_at(t, p)
    if sub.is_constant or defs.fixpoint(name).key != defs.expand(sub).key:
        return False
    return any(step.key == sub.key for step in defs.chain(name))


def instantiate(t: Term, name: str, p: Position, defs: MacroDefinitions) -> Term:
    """Replace ``t|_p`` by the macro ``name``; ``t[m]_p``."""
    if name not in defs:
        raise NotInstantiable(f"{name!r} is not a defined macro")
    if not can_instantiate_at(t, name, p, defs):
        raise NotInstantiable(f"macro {name!r} cannot be instantiated at {p}")
    return substitute(t, p, macro(name))


def is_reduced(defs: MacroDefinitions) -> bool:
    keys = [t.key for t in defs.fixpoints.values()]
    return len(keys) == len(set(keys))


def require_reduced(defs: MacroDefinitions) -> None:
    dup = [g for g in defs.groups() if len(g) > 1]
    if dup:
        raise NotReduced(dup)


def definitions_equivalent(a: MacroDefinitions, b: MacroDefinitions) -> bool:
    """Whether some bijection of macro symbols preserves fixed points."""
    require_reduced(a)
    require_reduced(b)
    return sorted(t.key for t in a.fixpoints.values()) == sorted(t.key for t in b.fixpoints.values())


# -- encodings -------------------------------------------------------------------

@dataclass(frozen=True)
class Encoding:
    """A macro system: a macrofied language plus its macro definitions."""

    language: Language
    definitions: MacroDefinitions = field(default_factory=MacroDefinitions)
    source: Optional[Language] = None

    @property
    def language_size(self) -> int:
        return self.language.size

    @property
    def definitions_size(self) -> int:
        return self.definitions.size

    @property
    def size(self) -> int:
        return self.language_size + self.definitions_size

    def expand(self) -> Language:
        return self.definitions.expand_language(self.language)

    def instantiation_count(self) -> int:
        """Macro occurrences across the language and all right-hand sides."""
        n = sum(sum(macros_used(t).values()) for t in self.language)
        return n + sum(sum(macros_used(t).values()) for t in self.definitions.values())


class SizeBreakdown(NamedTuple):
    language: int
    definitions: int

    @property
    def total(self) -> int:
        return self.language + self.definitions


def encoding_size(e: Encoding) -> int:
    return e.size


def size_breakdown(e: Encoding) -> SizeBreakdown:
    return SizeBreakdown(e.language_size, e.definitions_size)


def is_encoding(candidate, source: Iterable[Term]) -> bool:
    """Does expanding ``candidate`` (an Encoding or a ``(language, defs)`` pair) give ``source``?"""
    if isinstance(candidate, Encoding):
        lang, defs = candidate.language, candidate.definitions
    else:
        lang, defs = candidate
    for t in lang:
        for node in iter_nodes(t):
            if node.is_macro and node.label not in defs:
                return False
    src = source if isinstance(source, Language) else Language(source)
    return defs.expand_language(lang) == src


class Exhaustiveness(NamedTuple):
    macrofication: bool
    expansion: bool

    @property
    def exhaustive(self) -> bool:
        return self.macrofication and self.expansion


def _chain_table(defs: MacroDefinitions) -> Dict[str, List[str]]:
    table: Dict[str, List[str]] = defaultdict(list)
    for name in defs:
        for step in defs.chain(name):
            table[step.key].append(name)
    return table


def exhaustiveness(e: Encoding) -> Exhaustiveness:
    """Whether no macro can be instantiated in the language / in other definitions."""
    defs = e.definitions
    table = _chain_table(defs)
    macrofication = not any(
        node.key in table for t in e.language for node in iter_nodes(t) if not node.is_constant
    )
    expansion = True
    for owner, rhs in defs.items():
        for node in iter_nodes(rhs):
            if node.is_constant:
                continue
            if any(m != owner for m in table.get(node.key, ())):
                expansion = False
                break
        if not expansion:
            break
    return Exhaustiveness(macrofication, expansion)


def instantiable_sites(t: Term, defs: MacroDefinitions) -> Iterator[Tuple[Position, str]]:
    """Every ``(position, macro)`` pair at which a macro can be instantiated in ``t``."""
    table = _chain_table(defs)
    for p, node in positions(t):
        if not node.is_constant:
            for name in table.get(node.key, ()):
                yield p, name
