"""Alphabets, terms and their canonical term trees.

A term is an immutable node-labelled tree.  Children of ordered symbols are
addressed by position, children of unordered symbols are interchangeable
(edge label ``*``), and mixed symbols have a positional prefix followed by
interchangeable children.  Two terms are equal iff their term trees are
isomorphic under node- and edge-label preservation; this is decided by
comparing canonical keys, which are built bottom-up with the ``*`` children
sorted (AHU-style).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import ArityMismatch, InvalidPosition, UnknownSymbol

STAR = "*"

Position = Tuple[int, ...]
ROOT: Position = ()


@dataclass(frozen=True)
class SymbolKind:
    """How a symbol treats its children.

    ``order`` is one of ``ordered``, ``unordered``, ``mixed`` or ``macro``.
    For ordered symbols ``arity`` is the exact number of children; for mixed
    symbols it is the length of the positional prefix.  Macro symbols are
    constants living in their own namespace.
    """

    order: str
    arity: int = 0

    def __post_init__(self):
        if self.order not in ("ordered", "unordered", "mixed", "macro"):
            raise ValueError(f"unknown symbol order {self.order!r}")
        if self.arity < 0:
            raise ValueError("arity must be non-negative")
        if self.order == "mixed" and self.arity < 1:
            raise ValueError("mixed symbols need a ranked prefix of at least 1")

    @property
    def is_constant(self) -> bool:
        return self.order == "macro" or (self.order == "ordered" and self.arity == 0)

    @property
    def is_ranked(self) -> bool:
        return self.order in ("ordered", "mixed")

    def accepts(self, n: int) -> bool:
        if self.order == "ordered":
            return n == self.arity
        if self.order == "unordered":
            return n >= 1
        if self.order == "mixed":
            return n >= self.arity
        return n == 0

    def expected(self) -> str:
        if self.order == "ordered":
            return str(self.arity)
        if self.order == "unordered":
            return ">= 1"
        if self.order == "mixed":
            return f">= {self.arity}"
        return "0"

    def edge_labels(self, n: int) -> Tuple[str, ...]:
        if self.order == "ordered":
            return tuple(str(i) for i in range(1, n + 1))
        if self.order == "unordered":
            return (STAR,) * n
        if self.order == "mixed":
            m = self.arity
            return tuple(str(i) for i in range(1, m + 1)) + (STAR,) * (n - m)
        return ()

    def __str__(self) -> str:
        if self.order == "ordered":
            return f"ordered/{self.arity}"
        if self.order == "mixed":
            return f"mixed/{self.arity}"
        return self.order


def ordered(arity: int) -> SymbolKind:
    return SymbolKind("ordered", arity)


def unordered() -> SymbolKind:
    return SymbolKind("unordered")


def mixed(prefix: int) -> SymbolKind:
    return SymbolKind("mixed", prefix)


CONSTANT = SymbolKind("ordered", 0)
MACRO = SymbolKind("macro")

_SPECIAL = re.compile(r"[\\(),]")


@lru_cache(maxsize=1 << 16)
def _escape(label: str) -> str:
    if _SPECIAL.search(label) is None:
        return label
    return _SPECIAL.sub(lambda mo: "\\" + mo.group(0), label)


class Term:
    """An immutable term; compare and hash by canonical key."""

    __slots__ = ("label", "kind", "children", "key", "size", "ground", "_hash")

    def __init__(self, label: str, kind: SymbolKind, children: Sequence["Term"] = ()):
        children = tuple(children)
        if not kind.accepts(len(children)):
            raise ArityMismatch(label, kind.expected(), len(children))
        self.label = label
        self.kind = kind
        self.children = children
        head = _escape(label)
        if not children:
            self.key = head
            self.size = 1
            self.ground = kind.order != "macro"
        else:
            keys = [c.key for c in children]
            if kind.order == "unordered":
                keys.sort()
            elif kind.order == "mixed" and len(keys) > kind.arity + 1:
                m = kind.arity
                keys[m:] = sorted(keys[m:])
            self.key = head + "(" + ",".join(keys) + ")"
            self.size = 1 + sum(c.size for c in children)
            self.ground = all(c.ground for c in children)
        self._hash = hash(self.key)

    # value semantics -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Term, (self.label, self.kind, self.children))

    def __repr__(self) -> str:
        return f"Term({format_term(self)!r})"

    def __str__(self) -> str:
        return format_term(self)

    # structure -------------------------------------------------------------
    @property
    def is_macro(self) -> bool:
        return self.kind.order == "macro"

    @property
    def is_constant(self) -> bool:
        return not self.children

    @property
    def edges(self) -> Tuple[str, ...]:
        return self.kind.edge_labels(len(self.children))

    def with_children(self, children: Sequence["Term"]) -> "Term":
        children = tuple(children)
        if all(a is b for a, b in zip(children, self.children)) and len(children) == len(self.children):
            return self
        return Term(self.label, self.kind, children)

    def canonical(self) -> "Term":
        """Same term with ``*`` children stored in canonical order."""
        kids = [c.canonical() for c in self.children]
        if self.kind.order == "unordered":
            kids.sort(key=lambda c: c.key)
        elif self.kind.order == "mixed":
            m = self.kind.arity
            kids[m:] = sorted(kids[m:], key=lambda c: c.key)
        return self.with_children(kids)


def term(label: str, *children: Term, kind: Optional[SymbolKind] = None) -> Term:
    """Build a term, defaulting to an ordered symbol of the observed arity."""
    return Term(label, kind if kind is not None else ordered(len(children)), children)


def macro(name: str) -> Term:
    """A macro symbol occurrence."""
    return Term(name, MACRO)


class Alphabet(Mapping[str, SymbolKind]):
    """Symbol table mapping names to their :class:`SymbolKind`."""

    def __init__(self, symbols: Optional[Mapping[str, SymbolKind]] = None):
        self._symbols: Dict[str, SymbolKind] = {}
        for name, kind in (symbols or {}).items():
            self.declare(name, kind)

    def declare(self, name: str, kind: SymbolKind) -> SymbolKind:
        if kind.order == "macro":
            raise ValueError("macro symbols are not part of an alphabet")
        old = self._symbols.get(name)
        if old is not None and old != kind:
            raise ValueError(f"symbol {name!r} already declared as {old}")
        self._symbols[name] = kind
        return kind

    def __getitem__(self, name: str) -> SymbolKind:
        return self._symbols[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._symbols)

    def __len__(self) -> int:
        return len(self._symbols)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {v}" for k, v in self._symbols.items())
        return f"Alphabet({{{inner}}})"

    def __call__(self, label: str, *children: Term) -> Term:
        try:
            kind = self._symbols[label]
        except KeyError:
            raise UnknownSymbol(label) from None
        return Term(label, kind, children)

    def parse(self, text: str, macros: Iterable[str] = ()) -> Term:
        """Parse ``f(a, g(b))`` style text against this alphabet."""
        from .corpus_io import parse_term

        return parse_term(text, self, macros=macros)

    @classmethod
    def of(cls, terms: Iterable[Term]) -> "Alphabet":
        """Alphabet collecting every non-macro symbol used in ``terms``."""
        alpha = cls()
        for t in terms:
            for node in iter_nodes(t):
                if not node.is_macro:
                    alpha.declare(node.label, node.kind)
        return alpha


# -- traversal ------------------------------------------------------------------

def iter_nodes(t: Term) -> Iterator[Term]:
    """Pre-order over all nodes (with repetition)."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def positions(t: Term) -> Iterator[Tuple[Position, Term]]:
    """Pre-order over ``(position, subterm)`` pairs."""
    stack: List[Tuple[Position, Term]] = [(ROOT, t)]
    while stack:
        pos, node = stack.pop()
        yield pos, node
        for i in range(len(node.children) - 1, -1, -1):
            stack.append((pos + (i,), node.children[i]))


def subterm_at(t: Term, p: Position) -> Term:
    node = t
    for i in p:
        if not 0 <= i < len(node.children):
            raise InvalidPosition(f"position {p} is not valid in {format_term(t)}")
        node = node.children[i]
    return node


def substitute(host: Term, p: Position, replacement: Term) -> Term:
    """``host[replacement]_p``; unchanged subtrees are shared."""
    if not p:
        return replacement
    i = p[0]
    if not 0 <= i < len(host.children):
        raise InvalidPosition(f"position {p} is not valid in {format_term(host)}")
    kids = list(host.children)
    kids[i] = substitute(kids[i], p[1:], replacement)
    return Term(host.label, host.kind, kids)


def term_eq(t: Term, u: Term) -> bool:
    return t.key == u.key


def canonicalize(t: Term) -> str:
    return t.key


def subterm_positions(host: Term, pattern: Term) -> List[Position]:
    key, size = pattern.key, pattern.size
    return [p for p, node in positions(host) if node.size == size and node.key == key]


def is_subterm(pattern: Term, host: Term) -> bool:
    """``pattern`` ⪯ ``host`` (reflexive)."""
    if pattern.size > host.size:
        return False
    key = pattern.key
    return any(node.key == key for node in iter_nodes(host))


def size(x) -> int:
    """Node count of a term, or the summed node count of a collection of terms."""
    if isinstance(x, Term):
        return x.size
    return sum(t.size for t in x)


def subterm_keys(t: Term) -> set:
    return {node.key for node in iter_nodes(t)}


def enumerate_subterms(terms: Iterable[Term]) -> Dict[str, Tuple[Term, int]]:
    """Map every distinct subterm key to ``(representative, occurrence count)``."""
    reps: Dict[str, Term] = {}
    counts: Dict[str, int] = {}
    for t in terms:
        for node in iter_nodes(t):
            k = node.key
            if k in counts:
                counts[k] += 1
            else:
                counts[k] = 1
                reps[k] = node
    return {k: (reps[k], counts[k]) for k in counts}


# -- languages ------------------------------------------------------------------

class Language:
    """A finite set of terms under term equality (insertion ordered)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[Term] = ()):
        d: Dict[str, Term] = {}
        for t in terms:
            d.setdefault(t.key, t)
        self._terms = d

    def __iter__(self) -> Iterator[Term]:
        return iter(self._terms.values())

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, t) -> bool:
        return isinstance(t, Term) and t.key in self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Language):
            return self._terms.keys() == other._terms.keys()
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms))

    def __repr__(self) -> str:
        return "Language({" + ", ".join(format_term(t) for t in self) + "})"

    @property
    def size(self) -> int:
        return sum(t.size for t in self._terms.values())

    @property
    def terms(self) -> Tuple[Term, ...]:
        return tuple(self._terms.values())

    def keys(self) -> frozenset:
        return frozenset(self._terms)

    def sorted(self) -> List[Term]:
        return [self._terms[k] for k in sorted(self._terms)]

    @property
    def ground(self) -> bool:
        return all(t.ground for t in self._terms.values())


# -- text rendering ---------------------------------------------------------------

_PLAIN_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_'.\-]*\Z")
_IRI_NAME = re.compile(r"<[^<>\s\"]*>\Z")


def format_name(label: str) -> str:
    if _PLAIN_NAME.match(label) or _IRI_NAME.match(label):
        return label
    import json

    return json.dumps(label, ensure_ascii=False)


def format_term(t: Term) -> str:
    """Render ``t`` in the corpus term syntax, children in stored order."""
    if not t.children:
        return format_name(t.label)
    return format_name(t.label) + "(" + ", ".join(format_term(c) for c in t.children) + ")"
