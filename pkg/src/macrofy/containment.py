"""Containment between macros and the stratified Hasse diagram of macros.

Two macros depend on each other exactly when the fixed point of one is a
subterm of the fixed point of the other.  The diagram built here orders the
macros by strict containment; instantiating level by level from the top
(maximal macros first) gives size-minimal encodings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from .macros import MacroDefinitions
from .terms import subterm_keys


def contains(outer: str, inner: str, defs: MacroDefinitions) -> bool:
    """True iff 𝓜*(inner) ⪯ 𝓜*(outer)."""
    if outer == inner:
        raise ValueError("containment is only defined between distinct macros")
    small, big = defs.fixpoint(inner), defs.fixpoint(outer)
    if small.size > big.size:
        return False
    return small.key in subterm_keys(big)


def are_dependent(m1: str, m2: str, defs: MacroDefinitions) -> bool:
    return contains(m1, m2, defs) or contains(m2, m1, defs)


@dataclass(frozen=True)
class HasseNode:
    key: str
    size: int
    macros: Tuple[str, ...]

    @property
    def representative(self) -> str:
        return self.macros[0]


@dataclass(frozen=True)
class HasseDiagram:
    """Macros ordered by strict containment of their fixed points.

    ``edges`` holds covering pairs ``(container, contained)`` between node
    keys; ``levels`` lists node keys, level 0 being the maximal macros.
    Macros with equal fixed points share one node.
    """

    nodes: Dict[str, HasseNode]
    edges: Tuple[Tuple[str, str], ...]
    levels: Tuple[Tuple[str, ...], ...]
    discarded: Tuple[str, ...] = ()

    def level_macros(self) -> List[List[str]]:
        """Macro names per level, in node (canonical key) order."""
        return [[m for k in level for m in self.nodes[k].macros] for level in self.levels]

    def level_of(self, name: str) -> Optional[int]:
        for i, level in enumerate(self.levels):
            for k in level:
                if name in self.nodes[k].macros:
                    return i
        return None

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=TB;"]
        ids = {k: f"n{i}" for i, k in enumerate(sorted(self.nodes))}
        for i, level in enumerate(self.levels):
            lines.append(f"  subgraph level{i} {{ rank=same;")
            for k in level:
                label = ", ".join(self.nodes[k].macros).replace('"', '\\"')
                lines.append(f'    {ids[k]} [label="{label}"];')
            lines.append("  }")
        for a, b in self.edges:
            lines.append(f"  {ids[a]} -> {ids[b]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_hasse(defs: MacroDefinitions, max_useful_size: Optional[int] = None) -> HasseDiagram:
    """Containment diagram of ``defs``.

    Macros whose fixed point is larger than ``max_useful_size`` can never be
    instantiated in a language of smaller terms; they are parked on the
    ``discarded`` list.
    """
    members: Dict[str, List[str]] = {}
    fixes = {}
    discarded = []
    for name in defs:
        fix = defs.fixpoint(name)
        if max_useful_size is not None and fix.size > max_useful_size:
            discarded.append(name)
            continue
        members.setdefault(fix.key, []).append(name)
        fixes[fix.key] = fix
    nodes = {k: HasseNode(k, fixes[k].size, tuple(sorted(v))) for k, v in members.items()}

    # strictly contained node keys, found by looking up subterm keys
    below: Dict[str, Set[str]] = {}
    for k, fix in fixes.items():
        below[k] = {s for s in subterm_keys(fix) if s != k and s in nodes}
    edges = []
    for k in sorted(nodes):
        indirect: Set[str] = set()
        for c in below[k]:
            indirect |= below[c]
        edges.extend((k, c) for c in sorted(below[k] - indirect))

    above: Dict[str, List[str]] = {k: [] for k in nodes}
    for k, cs in below.items():
        for c in cs:
            above[c].append(k)
    level: Dict[str, int] = {}
    # containers are strictly larger, so decreasing size is a topological order
    for k in sorted(nodes, key=lambda k: (-nodes[k].size, k)):
        level[k] = 1 + max((level[a] for a in above[k]), default=-1)
    n_levels = 1 + max(level.values(), default=-1)
    levels = tuple(tuple(sorted(k for k in nodes if level[k] == i)) for i in range(n_levels))
    return HasseDiagram(nodes, tuple(edges), levels, tuple(sorted(discarded)))
