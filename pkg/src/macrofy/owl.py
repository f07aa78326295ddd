"""Reading OWL 2 functional-style syntax into terms.

Only class-expression structure is kept.  Class and property names become
constants labelled with their full IRI in angle brackets; constructors map
to symbols as follows::

    SubClassOf, ObjectSomeValuesFrom, ObjectAllValuesFrom   ordered/2
    ObjectComplementOf                                      ordered/1
    ObjectIntersectionOf, ObjectUnionOf,
    EquivalentClasses, DisjointClasses                      unordered
    DisjointUnion                                           mixed/1

Arguments of the set-valued constructors are deduplicated.  Annotations are
ignored, and axioms of other kinds are counted and skipped.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple, Union

import networkx as nx

from .errors import OwlSyntaxError
from .macros import MacroDefinitions
from .terms import (
    CONSTANT,
    MACRO,
    Language,
    SymbolKind,
    Term,
    format_term,
    iter_nodes,
    mixed,
    ordered,
    unordered,
)

CONSTRUCTORS: Dict[str, SymbolKind] = {
    "SubClassOf": ordered(2),
    "ObjectSomeValuesFrom": ordered(2),
    "ObjectAllValuesFrom": ordered(2),
    "ObjectComplementOf": ordered(1),
    "ObjectIntersectionOf": unordered(),
    "ObjectUnionOf": unordered(),
    "EquivalentClasses": unordered(),
    "DisjointClasses": unordered(),
    "DisjointUnion": mixed(1),
}

AXIOM_KINDS = ("SubClassOf", "EquivalentClasses", "DisjointClasses", "DisjointUnion")
_SET_VALUED = {"ObjectIntersectionOf", "ObjectUnionOf", "EquivalentClasses", "DisjointClasses", "DisjointUnion"}

DROP_REASONS = ("cycle", "duplicate-definition", "unary", "unsupported-constructor", "non-reduced")

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<open>\()
  | (?P<close>\))
  | (?P<eq>=)
  | (?P<iri><[^<>\s"]*>)
  | (?P<lit>"(?:[^"\\]|\\.)*"(?:@[A-Za-z][A-Za-z0-9\-]*|\^\^(?:<[^<>\s"]*>|[A-Za-z_][\w.\-]*:[^\s()<>"=]*|:[^\s()<>"=]*))?)
  | (?P<pname>(?:[A-Za-z_][\w.\-]*)?:[^\s()<>"=]*)
  | (?P<int>\d+)
  | (?P<word>[A-Za-z_][\w\-]*)
    """,
    re.VERBOSE,
)


@dataclass
class _Node:
    kind: str  # "call", "iri", "lit", "int"
    text: str
    line: int
    col: int
    args: List["_Node"] = field(default_factory=list)


def _tokenize(text: str) -> List[Tuple[str, str, int, int]]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        mo = _TOKEN.match(text, pos)
        if mo is None:
            raise OwlSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind, tok = mo.lastgroup, mo.group(0)
        if kind not in ("ws", "comment"):
            out.append((kind, tok, line, pos - line_start + 1))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = pos + tok.rindex("\n") + 1
        pos = mo.end()
    return out


def _parse_nodes(tokens) -> List[_Node]:
    """Group tokens into nested calls ``Word( ... )``."""
    top: List[_Node] = []
    stack: List[_Node] = []
    i = 0
    while i < len(tokens):
        kind, tok, line, col = tokens[i]
        sink = stack[-1].args if stack else top
        if kind == "word":
            if i + 1 >= len(tokens) or tokens[i + 1][0] != "open":
                raise OwlSyntaxError(f"expected '(' after {tok}", line, col)
            node = _Node("call", tok, line, col)
            sink.append(node)
            stack.append(node)
            i += 2
            continue
        if kind == "close":
            if not stack:
                raise OwlSyntaxError("unbalanced ')'", line, col)
            stack.pop()
        elif kind == "open":
            raise OwlSyntaxError("unexpected '('", line, col)
        elif kind == "eq":
            sink.append(_Node("eq", tok, line, col))
        elif kind in ("iri", "pname"):
            sink.append(_Node("iri", tok, line, col))
        else:
            sink.append(_Node(kind, tok, line, col))
        i += 1
    if stack:
        raise OwlSyntaxError(f"unclosed {stack[-1].text}(", stack[-1].line, stack[-1].col)
    return top


@dataclass(frozen=True)
class OwlAxiom:
    kind: str
    term: Term
    line: int


@dataclass(frozen=True)
class DroppedAxiom:
    reason: str
    axiom: str
    line: Optional[int] = None


@dataclass
class OwlDocument:
    axioms: List[OwlAxiom]
    skipped: Counter
    dropped: List[DroppedAxiom]
    prefixes: Dict[str, str]


class _Unsupported(Exception):
    def __init__(self, name: str):
        self.name = name


class _Converter:
    def __init__(self, prefixes: Dict[str, str], lenient: bool):
        self.prefixes = prefixes
        self.lenient = lenient

    def iri(self, node: _Node) -> str:
        t = node.text
        if t.startswith("<"):
            return t
        prefix, _, local = t.partition(":")
        base = self.prefixes.get(prefix + ":")
        if base is None:
            return t
        return "<" + base[1:-1] + local + ">"

    def convert(self, node: _Node) -> Term:
        if node.kind == "iri":
            return Term(self.iri(node), CONSTANT)
        if node.kind in ("lit", "int"):
            if not self.lenient:
                raise _Unsupported("literal")
            return Term(node.text, CONSTANT)
        if node.kind != "call":
            raise OwlSyntaxError(f"unexpected {node.text!r}", node.line, node.col)
        args = [a for a in node.args if not (a.kind == "call" and a.text == "Annotation")]
        kind = CONSTRUCTORS.get(node.text)
        if kind is None:
            if not self.lenient:
                raise _Unsupported(node.text)
            kids = [self.convert(a) for a in args]
            return Term(f"{node.text}.{len(kids)}", ordered(len(kids)), kids)
        kids = [self.convert(a) for a in args]
        if node.text in _SET_VALUED:
            head, rest = (kids[:1], kids[1:]) if node.text == "DisjointUnion" else ([], kids)
            seen, uniq = set(), []
            for k in rest:
                if k.key not in seen:
                    seen.add(k.key)
                    uniq.append(k)
            kids = head + uniq
        if not kind.accepts(len(kids)):
            raise OwlSyntaxError(f"{node.text} with {len(kids)} arguments", node.line, node.col)
        return Term(node.text, kind, kids)


def _render(node: _Node) -> str:
    if node.kind != "call":
        return node.text
    return node.text + "(" + " ".join(_render(a) for a in node.args) + ")"


def parse_owl_functional(text: str, lenient: bool = False) -> OwlDocument:
    """Parse the class-expression axioms of a functional-syntax document.

    Axioms may sit inside ``Ontology( ... )`` or at the top level.  With
    ``lenient``, unknown constructors become opaque ordered symbols named
    ``<Constructor>.<arity>``; otherwise axioms using them are dropped.
    """
    nodes = _parse_nodes(_tokenize(text))
    prefixes: Dict[str, str] = {}
    items: List[_Node] = []
    for n in nodes:
        if n.kind != "call":
            raise OwlSyntaxError(f"unexpected {n.text!r} at top level", n.line, n.col)
        if n.text == "Prefix":
            if len(n.args) != 3 or n.args[1].kind != "eq" or not n.args[0].text.endswith(":") \
                    or not n.args[2].text.startswith("<"):
                raise OwlSyntaxError("malformed Prefix declaration", n.line, n.col)
            prefixes[n.args[0].text] = n.args[2].text
        elif n.text == "Ontology":
            items.extend(a for a in n.args if a.kind == "call")
        else:
            items.append(n)
    conv = _Converter(prefixes, lenient)
    axioms: List[OwlAxiom] = []
    skipped: Counter = Counter()
    dropped: List[DroppedAxiom] = []
    for n in items:
        if n.text in ("Import", "Annotation"):
            continue
        if n.text not in AXIOM_KINDS:
            skipped[n.text] += 1
            continue
        try:
            axioms.append(OwlAxiom(n.text, conv.convert(n), n.line))
        except _Unsupported as exc:
            dropped.append(DroppedAxiom("unsupported-constructor", _render(n), n.line))
            skipped["unsupported:" + exc.name] += 1
    return OwlDocument(axioms, skipped, dropped, prefixes)


def axioms_as_language(axioms: Union[OwlDocument, Iterable[OwlAxiom], Iterable[Term]]) -> Language:
    """The set of structurally distinct axioms."""
    if isinstance(axioms, OwlDocument):
        axioms = axioms.axioms
    return Language(a.term if isinstance(a, OwlAxiom) else a for a in axioms)


@dataclass
class OntologyCorpus:
    """Input for one minimization problem prepared from an ontology."""

    problem: int
    language: Language
    definitions: MacroDefinitions
    dropped: List[DroppedAxiom]
    axiom_count: int
    original_size: int

    def drop_counts(self) -> Dict[str, int]:
        c = Counter(d.reason for d in self.dropped)
        return {r: c[r] for r in DROP_REASONS if c[r]}


def _definition_candidates(lang: Language) -> Dict[str, List[Term]]:
    """EquivalentClasses(N, C) axioms with N named and C complex, by N."""
    found: Dict[str, List[Term]] = {}
    for t in lang:
        if t.label != "EquivalentClasses" or len(t.children) != 2:
            continue
        named = [c for c in t.children if c.is_constant]
        if len(named) != 1:
            continue
        found.setdefault(named[0].label, []).append(t)
    return found


def _to_macros(t: Term, names) -> Term:
    if t.is_constant:
        return Term(t.label, MACRO) if t.label in names else t
    return t.with_children([_to_macros(c, names) for c in t.children])


def _is_unary(t: Term) -> bool:
    return any(len(n.children) == 1 and n.kind.is_ranked for n in iter_nodes(t))


def prepare_experiment(doc: Union[OwlDocument, Iterable[OwlAxiom]], problem: int) -> OntologyCorpus:
    """Build the language (and, for problems 1 and 2, the definitions) to minimize.

    Definitions come from ``EquivalentClasses(N, C)`` axioms; names defined
    more than once or involved in definitional cycles are left alone.  For
    problems 1 and 2 every defined name is expanded in the remaining axioms.
    Problem 2 additionally keeps one macro (the least name) per fixed point.
    Problem 3 ignores definitions and removes axioms with unary symbols.
    """
    if problem not in (1, 2, 3):
        raise ValueError(f"unknown problem {problem}")
    if not isinstance(doc, OwlDocument):
        doc = OwlDocument(list(doc), Counter(), [], {})
    lang = axioms_as_language(doc)
    dropped = list(doc.dropped)

    if problem == 3:
        keep = []
        for t in lang:
            if _is_unary(t):
                dropped.append(DroppedAxiom("unary", format_term(t)))
            else:
                keep.append(t)
        return OntologyCorpus(3, Language(keep), MacroDefinitions(), dropped, len(lang), lang.size)

    cands = _definition_candidates(lang)
    defining: Dict[str, Term] = {}
    for name in sorted(cands):
        axs = cands[name]
        if len(axs) > 1:
            dropped.extend(DroppedAxiom("duplicate-definition", format_term(a)) for a in axs)
        else:
            defining[name] = axs[0]
    rhs = {n: next(c for c in ax.children if not c.is_constant) for n, ax in defining.items()}

    graph = nx.DiGraph()
    graph.add_nodes_from(rhs)
    for n, c in rhs.items():
        for node in iter_nodes(c):
            if node.is_constant and node.label in rhs:
                graph.add_edge(n, node.label)
    cyclic = set()
    for comp in nx.strongly_connected_components(graph):
        if len(comp) > 1 or any(graph.has_edge(v, v) for v in comp):
            cyclic |= comp
    for n in sorted(cyclic):
        dropped.append(DroppedAxiom("cycle", format_term(defining.pop(n))))
        del rhs[n]

    names = set(rhs)
    defs = MacroDefinitions({n: _to_macros(c, names) for n, c in rhs.items()})
    used_axioms = {ax.key for ax in defining.values()}
    rest = [_to_macros(t, names) for t in lang if t.key not in used_axioms]
    language = defs.expand_language(rest)

    if problem == 2:
        kept = {}
        for group in defs.groups():
            kept[group[0]] = defs.fixpoint(group[0])
            dropped.extend(DroppedAxiom("non-reduced", format_term(defining[n])) for n in group[1:])
        defs = MacroDefinitions(kept)
    return OntologyCorpus(problem, language, defs, dropped, len(lang), lang.size)
