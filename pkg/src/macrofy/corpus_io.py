"""Line-oriented text format for alphabets, terms and macro definitions.

::

    # comment
    symbol b : ordered/2          # also: unordered, mixed/<m>
    macro m -> b(c, d)
    term a(m, d)

Names are identifiers (``[A-Za-z_][A-Za-z0-9_'.-]*``), angle-bracketed IRIs
or JSON string literals.  A leaf is a macro symbol when a ``macro`` line
defines it or its name starts with ``__``.  Declarations may appear in any
order.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional

from .errors import (
    ArityMismatch,
    CorpusArityMismatch,
    CorpusSyntaxError,
    DuplicateSymbolDeclaration,
    UndeclaredSymbol,
)
from .macros import Encoding, MacroDefinitions, validate_definitions
from .terms import (
    MACRO,
    Alphabet,
    Language,
    SymbolKind,
    Term,
    format_name,
    iter_nodes,
    mixed,
    ordered,
    unordered,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#.*)
  | (?P<iri><[^<>\s"]*>)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<arrow>->)
  | (?P<name>[A-Za-z_][A-Za-z0-9_'.\-]*)
  | (?P<int>\d+)
  | (?P<punct>[(),:/])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(line: str, lineno: int) -> List[_Tok]:
    out: List[_Tok] = []
    pos = 0
    while pos < len(line):
        mo = _TOKEN.match(line, pos)
        if mo is None:
            raise CorpusSyntaxError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        kind = mo.lastgroup
        if kind == "comment":
            break
        if kind != "ws":
            text = mo.group(0)
            if kind in ("iri", "name"):
                kind = "name"
            elif kind == "string":
                kind = "name"
                try:
                    text = json.loads(text)
                except json.JSONDecodeError:
                    raise CorpusSyntaxError("malformed string literal", lineno, pos + 1) from None
            out.append(_Tok(kind, text, pos + 1))
        pos = mo.end()
    return out


class _TermParser:
    def __init__(self, toks: List[_Tok], lineno: int, resolve):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.resolve = resolve

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.text != text or tok.kind == "name":
            col = tok.col if tok else None
            raise CorpusSyntaxError(f"expected {text!r}", self.lineno, col)
        self.i += 1
        return tok

    def parse(self) -> Term:
        tok = self.peek()
        if tok is None or tok.kind != "name":
            raise CorpusSyntaxError("expected a symbol name", self.lineno, tok.col if tok else None)
        self.i += 1
        kids: List[Term] = []
        nxt = self.peek()
        if nxt is not None and nxt.kind == "punct" and nxt.text == "(":
            self.i += 1
            kids.append(self.parse())
            while True:
                nxt = self.peek()
                if nxt is not None and nxt.kind == "punct" and nxt.text == ",":
                    self.i += 1
                    kids.append(self.parse())
                    continue
                self.expect(")")
                break
        return self.resolve(tok, kids, self.lineno)

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise CorpusSyntaxError(f"unexpected {tok.text!r}", self.lineno, tok.col)


class _Resolver:
    """Turns parsed names into terms, checking or inferring symbol kinds."""

    def __init__(self, alphabet: Alphabet, macros: Iterable[str], infer: bool):
        self.alphabet = alphabet
        self.macros = set(macros)
        self.infer = infer

    def __call__(self, tok: _Tok, kids: List[Term], lineno: int) -> Term:
        name = tok.text
        if name in self.macros or (name.startswith("__") and name not in self.alphabet):
            if kids:
                raise CorpusArityMismatch(f"macro symbol {name!r} cannot take arguments", lineno, tok.col)
            return Term(name, MACRO)
        kind = self.alphabet.get(name)
        if kind is None:
            if not self.infer:
                raise UndeclaredSymbol(f"undeclared symbol {name!r}", lineno, tok.col)
            kind = self.alphabet.declare(name, ordered(len(kids)))
        try:
            return Term(name, kind, kids)
        except ArityMismatch as exc:
            raise CorpusArityMismatch(str(exc), lineno, tok.col) from None


def parse_term(text: str, alphabet: Alphabet, macros: Iterable[str] = (), infer: bool = False) -> Term:
    toks = _tokenize(text, 1)
    p = _TermParser(toks, 1, _Resolver(alphabet, macros, infer))
    t = p.parse()
    p.done()
    return t


def _parse_kind(toks: List[_Tok], lineno: int) -> SymbolKind:
    words = [t.text for t in toks]
    if words == ["unordered"]:
        return unordered()
    if len(words) == 3 and words[1] == "/" and toks[2].kind == "int":
        n = int(words[2])
        if words[0] == "ordered":
            return ordered(n)
        if words[0] == "mixed":
            if n < 1:
                raise CorpusSyntaxError("mixed symbols need a prefix of at least 1", lineno, toks[2].col)
            return mixed(n)
    if words == ["constant"]:
        return ordered(0)
    col = toks[0].col if toks else None
    raise CorpusSyntaxError("expected ordered/<n>, unordered or mixed/<m>", lineno, col)


@dataclass
class CorpusDocument:
    alphabet: Alphabet
    terms: Language
    macros: Dict[str, Term] = field(default_factory=dict)

    def definitions(self) -> MacroDefinitions:
        return validate_definitions(self.macros, self.alphabet)

    def encoding(self) -> Encoding:
        return Encoding(self.terms, self.definitions())

    def expanded(self) -> Language:
        """The macro-free language this document denotes."""
        if self.terms.ground:
            return self.terms
        return self.definitions().expand_language(self.terms)


def parse_corpus(text: str, infer_alphabet: bool = False) -> CorpusDocument:
    """Parse a corpus document; see the module docstring for the grammar."""
    lines = []
    alphabet = Alphabet()
    macro_names: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokenize(raw, lineno)
        if not toks:
            continue
        head = toks[0]
        if head.kind != "name" or head.text not in ("symbol", "term", "macro"):
            raise CorpusSyntaxError("expected 'symbol', 'term' or 'macro'", lineno, head.col)
        if head.text == "symbol":
            if len(toks) < 4 or toks[1].kind != "name" or toks[2].text != ":":
                raise CorpusSyntaxError("expected 'symbol <name> : <kind>'", lineno, head.col)
            name = toks[1].text
            if name in alphabet:
                raise DuplicateSymbolDeclaration(f"symbol {name!r} declared twice", lineno, toks[1].col)
            alphabet.declare(name, _parse_kind(toks[3:], lineno))
        elif head.text == "macro":
            if len(toks) < 4 or toks[1].kind != "name" or toks[2].kind != "arrow":
                raise CorpusSyntaxError("expected 'macro <name> -> <term>'", lineno, head.col)
            name = toks[1].text
            if name in macro_names:
                raise DuplicateSymbolDeclaration(f"macro {name!r} defined twice", lineno, toks[1].col)
            macro_names[name] = lineno
            lines.append(("macro", name, toks[3:], lineno))
        else:
            lines.append(("term", None, toks[1:], lineno))
    for name, lineno in macro_names.items():
        if name in alphabet:
            raise DuplicateSymbolDeclaration(f"{name!r} is both a symbol and a macro", lineno)
    resolve = _Resolver(alphabet, macro_names, infer_alphabet)
    terms: List[Term] = []
    macros: Dict[str, Term] = {}
    for what, name, toks, lineno in lines:
        if not toks:
            raise CorpusSyntaxError("missing term expression", lineno)
        p = _TermParser(toks, lineno, resolve)
        t = p.parse()
        p.done()
        if what == "macro":
            macros[name] = t
        else:
            terms.append(t)
    return CorpusDocument(alphabet, Language(terms), macros)


# -- writing ------------------------------------------------------------------

def _render(t: Term) -> str:
    if not t.children:
        return format_name(t.label)
    return format_name(t.label) + "(" + ", ".join(_render(c) for c in t.children) + ")"


def _symbol_lines(terms: Iterable[Term]) -> List[str]:
    kinds: Dict[str, SymbolKind] = {}
    for t in terms:
        for node in iter_nodes(t):
            if not node.is_macro:
                kinds.setdefault(node.label, node.kind)
    return [f"symbol {format_name(n)} : {kinds[n]}" for n in sorted(kinds)]


def write_corpus(terms: Iterable[Term], macros: Optional[Mapping[str, Term]] = None,
                 alphabet: Optional[Mapping[str, SymbolKind]] = None, header: str = "") -> str:
    """Emit a corpus document in canonical order (terms by key, ``*`` children sorted)."""
    terms = sorted((t.canonical() for t in terms), key=lambda t: t.key)
    macros = dict(macros or {})
    out: List[str] = []
    if header:
        out.extend("# " + h for h in header.splitlines())
    if alphabet is not None:
        out.extend(f"symbol {format_name(n)} : {alphabet[n]}" for n in sorted(alphabet))
    else:
        out.extend(_symbol_lines(list(terms) + list(macros.values())))
    for name in sorted(macros, key=lambda m: (macros[m].key, m)):
        out.append(f"macro {format_name(name)} -> {_render(macros[name].canonical())}")
    out.extend("term " + _render(t) for t in terms)
    return "\n".join(out) + "\n"


def write_encoding(e: Encoding, header: str = "") -> str:
    return write_corpus(e.language, dict(e.definitions), header=header)


def read_encoding(text: str, infer_alphabet: bool = False) -> Encoding:
    return parse_corpus(text, infer_alphabet=infer_alphabet).encoding()


def _percent(x: Fraction) -> int:
    sign = -1 if x < 0 else 1
    return sign * math.floor(abs(x) * 100 + Fraction(1, 2))


def stats_dict(report) -> dict:
    """Statistics of a minimization report, in a fixed key order."""
    red = report.proportional_reduction
    return {
        "problem": report.problem,
        "size_input": report.input_size,
        "size_language": report.language_size,
        "size_definitions": report.definitions_size,
        "size_output": report.output_size,
        "proportional_reduction_percent": _percent(red),
        "proportional_reduction": f"{red.numerator}/{red.denominator}",
        "num_terms": report.term_count,
        "num_changed_terms": report.changed_terms,
        "num_macro_definitions": report.macro_count,
        "num_instantiations": report.instantiation_count,
    }


def write_stats(report, extra: Optional[Mapping] = None) -> str:
    d = stats_dict(report)
    if extra:
        d.update(extra)
    return json.dumps(d, indent=2) + "\n"
