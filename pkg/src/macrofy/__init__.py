"""Size-minimal encodings of term languages via macro definitions."""

from __future__ import annotations

from .containment import HasseDiagram, are_dependent, build_hasse, contains
from .corpus_io import (
    CorpusDocument,
    parse_corpus,
    parse_term,
    read_encoding,
    write_corpus,
    write_encoding,
    write_stats,
)
from .errors import (
    ArityMismatch,
    BudgetExceeded,
    ConstantExpansion,
    CorpusError,
    CyclicDefinitions,
    InvalidPosition,
    MacrofyError,
    NotInstantiable,
    NotReduced,
    SymbolClash,
    UnarySymbolsPresent,
    UnknownSymbol,
)
from .macros import (
    EMPTY,
    Encoding,
    MacroDefinitions,
    can_instantiate_at,
    definitions_equivalent,
    encoding_size,
    exhaustiveness,
    expand_fixedpoint,
    expand_n,
    expand_once,
    instantiate,
    is_encoding,
    is_reduced,
    size_breakdown,
    validate_definitions,
)
from .minimizer import (
    MinimizationReport,
    minimize_p1,
    minimize_p2,
    minimize_p3,
    occurrence_table,
    select_macros_p3,
)
from .oracle import SearchBudget, oracle_p1, oracle_p2, oracle_p3
from .terms import (
    Alphabet,
    Language,
    SymbolKind,
    Term,
    canonicalize,
    macro,
    mixed,
    ordered,
    positions,
    subterm_at,
    substitute,
    term,
    term_eq,
    unordered,
)

__version__ = "0.1.0"


def data_path(name: str) -> str:
    """Filesystem path of a bundled data file."""
    from importlib.resources import files

    return str(files(__package__) / "data" / name)
