"""Seeded random alphabets, languages and macro definitions.

Used by the test suites and the ``gen`` command.  Every function takes a
``random.Random`` (or a seed) so instances are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Union

from .macros import MacroDefinitions
from .terms import Alphabet, Language, Term, iter_nodes, macro, mixed, ordered, unordered

PROFILES = ("ranked", "mixed")


def _rng(seed: Union[int, random.Random, None]) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_alphabet(rng: random.Random, n_symbols: int = 6, profile: str = "mixed",
                    unary: bool = False) -> Alphabet:
    """At least two constants plus function symbols of arity 2 or 3.

    ``profile="mixed"`` makes one function symbol unordered and, given room,
    one mixed; ``unary`` adds an ordered/1 symbol.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    n_symbols = max(n_symbols, 3 + unary)
    n_const = rng.randint(2, max(2, n_symbols // 2))
    alpha = Alphabet()
    for i in range(n_const):
        alpha.declare(f"c{i}", ordered(0))
    kinds = []
    if unary:
        kinds.append(ordered(1))
    if profile == "mixed":
        kinds.append(unordered())
        kinds.append(mixed(1))
    while len(kinds) < n_symbols - n_const:
        kinds.append(ordered(rng.choice((2, 3))))
    for i, kind in enumerate(kinds[: n_symbols - n_const]):
        alpha.declare(f"f{i}", kind)
    return alpha


def _width(kind, rng: random.Random) -> int:
    if kind.order == "ordered":
        return kind.arity
    if kind.order == "unordered":
        return rng.choice((2, 2, 3))
    return kind.arity + rng.choice((1, 2))


def random_term(rng: random.Random, alphabet: Alphabet, max_size: int,
                pool: Optional[List[Term]] = None, reuse: float = 0.0) -> Term:
    """A random term of size at most ``max_size``.

    With a ``pool``, each subterm is drawn from it with probability ``reuse``
    when one fits, which plants repeated substructure.
    """
    consts = sorted(n for n, k in alphabet.items() if k.is_constant)
    funcs = sorted(n for n, k in alphabet.items() if not k.is_constant)

    def grow(budget: int) -> Term:
        if pool and rng.random() < reuse:
            fits = [p for p in pool if p.size <= budget]
            if fits:
                return rng.choice(fits)
        options = []
        for f in funcs:
            w = _width(alphabet[f], rng)
            if 1 + w <= budget:
                options.append((f, w))
        if not options or rng.random() < 0.1:
            return Term(rng.choice(consts), alphabet[consts[0]])
        f, w = rng.choice(options)
        spare = budget - 1 - w
        kids = []
        for i in range(w):
            extra = rng.randint(0, spare) if i < w - 1 else spare
            spare -= extra
            kids.append(grow(1 + extra))
        if alphabet[f].order == "unordered":
            rng.shuffle(kids)
        t = Term(f, alphabet[f], kids)
        if pool is not None and not t.is_constant:
            pool.append(t)
        return t

    return grow(max_size)


def random_language(rng: random.Random, alphabet: Alphabet, n_terms: int, max_size: int,
                    reuse: float = 0.4) -> Language:
    pool: List[Term] = []
    lo = max(1, max_size // 2)
    return Language(random_term(rng, alphabet, rng.randint(lo, max_size), pool, reuse) for _ in range(n_terms))


def _partially_macrofy(rng: random.Random, t: Term, by_key: Dict[str, List[str]], root: bool) -> Term:
    if not root and t.key in by_key and rng.random() < 0.6:
        return macro(rng.choice(by_key[t.key]))
    if t.is_constant:
        return t
    return t.with_children([_partially_macrofy(rng, c, by_key, False) for c in t.children])


def random_definitions(rng: random.Random, language: Language, alphabet: Alphabet, n_macros: int,
                       reduced: bool = True, foreign: float = 0.25) -> MacroDefinitions:
    """Macros over subterms of ``language`` (and some fresh terms).

    Smaller fixed points are defined first, and larger right-hand sides use
    them at random so that chains of nested definitions appear.  Without
    ``reduced``, some fixed points are defined twice.
    """
    subs: Dict[str, Term] = {}
    for t in language:
        for n in iter_nodes(t):
            if not n.is_constant:
                subs.setdefault(n.key, n)
    cands = [subs[k] for k in sorted(subs)]
    chosen: List[Term] = []
    seen = set()
    tries = 0
    while len(chosen) < n_macros and tries < 20 * (n_macros + 1):
        tries += 1
        if cands and rng.random() >= foreign:
            t = rng.choice(cands)
        else:
            t = random_term(rng, alphabet, rng.randint(3, 8))
        if t.is_constant:
            continue
        if t.key in seen and (reduced or rng.random() < 0.5):
            continue
        seen.add(t.key)
        chosen.append(t)
    chosen.sort(key=lambda t: (t.size, t.key))
    by_key: Dict[str, List[str]] = {}
    defs: Dict[str, Term] = {}
    for i, fix in enumerate(chosen, 1):
        name = f"__d{i}"
        defs[name] = _partially_macrofy(rng, fix, by_key, True)
        by_key.setdefault(fix.key, []).append(name)
    return MacroDefinitions(defs)


@dataclass(frozen=True)
class Instance:
    alphabet: Alphabet
    language: Language
    definitions: MacroDefinitions


def random_instance(seed: Union[int, random.Random, None], *, n_terms: int = 5, max_size: int = 12,
                    n_symbols: int = 6, n_macros: int = 4, profile: str = "mixed", unary: bool = False,
                    reduced: bool = True, reuse: float = 0.4) -> Instance:
    """One small instance: up to ``n_terms`` terms and ``n_macros`` macros.

    ``reuse`` is the chance that a subterm repeats an earlier one.
    """
    rng = _rng(seed)
    alpha = random_alphabet(rng, rng.randint(3 + unary, n_symbols), profile, unary)
    lang = random_language(rng, alpha, rng.randint(1, n_terms), max_size, reuse)
    defs = random_definitions(rng, lang, alpha, rng.randint(0, n_macros), reduced=reduced)
    return Instance(alpha, lang, defs)


def synthetic_corpus(seed: Union[int, random.Random, None], n_terms: int = 10_000,
                     target_nodes: int = 150_000, n_symbols: int = 40, n_motifs: int = 400) -> Language:
    """A large corpus built from a shared stock of motifs.

    Each term is a function symbol applied to a mix of motifs and fresh
    random subterms, sized so the total is close to ``target_nodes``.
    """
    rng = _rng(seed)
    alpha = Alphabet()
    n_const = n_symbols // 2
    for i in range(n_const):
        alpha.declare(f"k{i}", ordered(0))
    for i in range(n_symbols - n_const):
        r = i % 5
        kind = unordered() if r == 0 else mixed(1) if r == 1 else ordered(2 + (r % 2))
        alpha.declare(f"g{i}", kind)
    motifs = [random_term(rng, alpha, rng.randint(4, 14)) for _ in range(n_motifs)]
    motifs = [m for m in motifs if not m.is_constant]
    funcs = sorted(n for n, k in alpha.items() if not k.is_constant)
    terms: List[Term] = []
    seen = set()
    total = 0
    while len(terms) < n_terms:
        # steer the per-term budget toward the remaining node target
        avg = max(4, (target_nodes - total) // (n_terms - len(terms)))
        budget = rng.randint(max(3, avg // 2), avg + avg // 2)
        f = rng.choice(funcs)
        kind = alpha[f]
        w = _width(kind, rng)
        kids = []
        left = budget - 1
        for i in range(w):
            share = max(1, left // (w - i))
            if rng.random() < 0.6:
                fits = [m for m in motifs if share // 2 <= m.size <= share] or motifs[:1]
                kids.append(rng.choice(fits))
            else:
                kids.append(random_term(rng, alpha, share))
            left -= kids[-1].size
        t = Term(f, kind, kids)
        if t.key not in seen:
            seen.add(t.key)
            terms.append(t)
            total += t.size
    return Language(terms)
