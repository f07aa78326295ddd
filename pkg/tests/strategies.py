"""Hypothesis strategies for terms over a small fixed alphabet."""

from __future__ import annotations

from hypothesis import strategies as st

from macrofy import Alphabet, Term, mixed, ordered, unordered

ALPHA = Alphabet({
    "a": ordered(0), "b": ordered(0), "c": ordered(0),
    "f": ordered(2), "g": ordered(3), "u": unordered(), "v": unordered(), "w": mixed(1),
})
UNARY_ALPHA = Alphabet({**dict(ALPHA), "h": ordered(1)})


def terms(alphabet: Alphabet = ALPHA, max_leaves: int = 8):
    consts = sorted(n for n, k in alphabet.items() if k.is_constant)
    leaves = st.sampled_from(consts).map(lambda n: Term(n, alphabet[n]))

    def extend(children):
        out = []
        for n, k in sorted(alphabet.items()):
            if k.is_constant:
                continue
            if k.order == "ordered":
                out.append(st.lists(children, min_size=k.arity, max_size=k.arity)
                           .map(lambda kids, n=n, k=k: Term(n, k, kids)))
            else:
                lo = max(1, k.arity)
                out.append(st.lists(children, min_size=lo, max_size=lo + 2)
                           .map(lambda kids, n=n, k=k: Term(n, k, kids)))
        return st.one_of(out)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def shuffled(t: Term, rnd) -> Term:
    """Copy of ``t`` with the ``*`` children permuted at every level."""
    kids = [shuffled(c, rnd) for c in t.children]
    k = t.kind
    if k.order == "unordered":
        rnd.shuffle(kids)
    elif k.order == "mixed":
        tail = kids[k.arity:]
        rnd.shuffle(tail)
        kids = kids[: k.arity] + tail
    return Term(t.label, t.kind, kids)
