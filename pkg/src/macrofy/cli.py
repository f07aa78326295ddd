"""Command-line interface: ``macrofy <command> ...``.

Errors are reported as one JSON object on stderr, with an exit code per
error family (see ``EXIT_CODES``).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .containment import build_hasse
from .corpus_io import CorpusDocument, parse_corpus, write_corpus, write_encoding, write_stats
from .errors import (
    ArityMismatch,
    BudgetExceeded,
    ConstantExpansion,
    CorpusError,
    CyclicDefinitions,
    MacrofyError,
    NotReduced,
    SymbolClash,
    UnarySymbolsPresent,
    UnknownSymbol,
)
from .generate import PROFILES, random_instance, synthetic_corpus
from .macros import EMPTY, MacroDefinitions, is_encoding
from .minimizer import minimize_p1, minimize_p2, minimize_p3
from .oracle import SearchBudget, oracle_for
from .owl import OntologyCorpus, parse_owl_functional, prepare_experiment
from .terms import Language

log = logging.getLogger("macrofy")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DEFINITIONS = 4
EXIT_UNARY = 5
EXIT_NOT_REDUCED = 6
EXIT_BUDGET = 7
EXIT_MISMATCH = 8
EXIT_IO = 9

EXIT_CODES: Tuple[Tuple[type, int], ...] = (
    (CorpusError, EXIT_PARSE),
    (ArityMismatch, EXIT_PARSE),
    (CyclicDefinitions, EXIT_DEFINITIONS),
    (ConstantExpansion, EXIT_DEFINITIONS),
    (SymbolClash, EXIT_DEFINITIONS),
    (UnknownSymbol, EXIT_DEFINITIONS),
    (UnarySymbolsPresent, EXIT_UNARY),
    (NotReduced, EXIT_NOT_REDUCED),
    (BudgetExceeded, EXIT_BUDGET),
)


class VerificationFailed(MacrofyError):
    code = "VerificationFailed"

    def __init__(self, problems: List[str]):
        self.problems = problems
        super().__init__("; ".join(problems))

    def details(self) -> dict:
        return {"problems": self.problems}


class UsageError(MacrofyError):
    code = "UsageError"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load_corpus(path: str, infer: bool) -> CorpusDocument:
    return parse_corpus(_read(path), infer_alphabet=infer)


def _corpus_problem(doc: CorpusDocument, problem: int, extra_defs: Optional[CorpusDocument]) -> Tuple[Language, MacroDefinitions]:
    defs = doc.definitions()
    language = doc.expanded()
    if extra_defs is not None:
        if problem == 3:
            raise UsageError("problem 3 does not take macro definitions")
        if defs:
            raise UsageError("input already defines macros; drop --definitions")
        defs = extra_defs.definitions()
    if problem == 3:
        if defs:
            log.warning("ignoring %d macro definitions: problem 3 chooses its own", len(defs))
        defs = EMPTY
    return language, defs


def _load_problem(args) -> Tuple[Language, MacroDefinitions, dict]:
    extra: dict = {}
    if args.kind == "owl":
        doc = parse_owl_functional(_read(args.input), lenient=args.lenient_owl)
        corpus: OntologyCorpus = prepare_experiment(doc, args.problem)
        extra = {
            "owl_axioms": corpus.axiom_count,
            "owl_original_size": corpus.original_size,
            "owl_dropped": corpus.drop_counts(),
            "owl_skipped": dict(sorted(doc.skipped.items())),
        }
        return corpus.language, corpus.definitions, extra
    doc = _load_corpus(args.input, args.infer_alphabet)
    extra_defs = _load_corpus(args.definitions, args.infer_alphabet) if getattr(args, "definitions", None) else None
    language, defs = _corpus_problem(doc, args.problem, extra_defs)
    return language, defs, extra


def cmd_minimize(args) -> int:
    language, defs, extra = _load_problem(args)
    if args.problem == 1:
        report = minimize_p1(language, defs, workers=args.workers)
    elif args.problem == 2:
        report = minimize_p2(language, defs, workers=args.workers)
    else:
        report = minimize_p3(language, prune=not args.no_prune, workers=args.workers)
    if args.save_input:
        _write(args.save_input, write_corpus(language, dict(defs)))
    _write(args.output, write_encoding(report.encoding))
    if args.stats:
        _write(args.stats, write_stats(report, extra))
    if args.emit_dot:
        _write(args.emit_dot, build_hasse(report.encoding.definitions).to_dot())
    return EXIT_OK


_CHECKED = ("size_language", "size_definitions", "size_output", "num_terms", "num_macro_definitions")


def cmd_verify(args) -> int:
    enc = parse_corpus(_read(args.encoding), infer_alphabet=args.infer_alphabet).encoding()
    source = _load_corpus(args.source, args.infer_alphabet).expanded()
    problems: List[str] = []
    if not is_encoding(enc, source):
        got, want = set(enc.expand().keys()), set(source.keys())
        missing, extra = len(want - got), len(got - want)
        problems.append(f"expansion differs from source ({missing} terms missing, {extra} unexpected)")
    recomputed = {
        "size_input": source.size,
        "size_language": enc.language_size,
        "size_definitions": enc.definitions_size,
        "size_output": enc.size,
        "num_terms": len(enc.language),
        "num_macro_definitions": len(enc.definitions),
    }
    if args.stats:
        claimed = json.loads(_read(args.stats))
        keys = _CHECKED + (() if "owl_axioms" in claimed else ("size_input",))
        for k in keys:
            if claimed.get(k) != recomputed[k]:
                problems.append(f"{k}: stats say {claimed.get(k)}, recomputed {recomputed[k]}")
    if problems:
        raise VerificationFailed(problems)
    _write(None, json.dumps({"ok": True, **recomputed}, indent=2) + "\n")
    return EXIT_OK


def cmd_expand(args) -> int:
    doc = _load_corpus(args.encoding, args.infer_alphabet)
    _write(args.output, write_corpus(doc.expanded()))
    return EXIT_OK


def cmd_oracle(args) -> int:
    language, defs, _ = _load_problem(args)
    budget = SearchBudget(max_states=args.max_states, max_seconds=args.max_seconds)
    kw = {"max_macros": args.max_macros} if args.problem == 3 else {}
    size, witness = oracle_for(args.problem, language, defs, budget, **kw)
    _write(args.output, f"# minimum: {size}\n" + write_encoding(witness))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.synthetic:
        lang = synthetic_corpus(args.seed, n_terms=args.terms, target_nodes=args.nodes)
        _write(args.output, write_corpus(lang))
        return EXIT_OK
    inst = random_instance(
        args.seed, n_terms=args.terms, max_size=args.max_size, n_symbols=args.symbols,
        n_macros=args.macros, profile=args.profile, unary=args.unary, reduced=not args.non_reduced,
    )
    _write(args.output, write_corpus(inst.language, dict(inst.definitions), alphabet=inst.alphabet))
    return EXIT_OK


def cmd_owl_import(args) -> int:
    doc = parse_owl_functional(_read(args.input), lenient=args.lenient_owl)
    corpus = prepare_experiment(doc, args.problem)
    _write(args.output, write_corpus(corpus.language, dict(corpus.definitions)))
    if args.report:
        report = {
            "problem": args.problem,
            "num_axioms": corpus.axiom_count,
            "num_terms": len(corpus.language),
            "num_macro_definitions": len(corpus.definitions),
            "size_language": corpus.language.size,
            "size_definitions": corpus.definitions.size,
            "original_size": corpus.original_size,
            "dropped": corpus.drop_counts(),
            "skipped": dict(sorted(doc.skipped.items())),
        }
        _write(args.report, json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def _problem_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--input", required=True, help="corpus or .ofn file ('-' for stdin)")
    p.add_argument("--kind", choices=("corpus", "owl"), default=None,
                   help="input format (default: by extension, .ofn is owl)")
    p.add_argument("--definitions", help="corpus file supplying macro definitions (problems 1 and 2)")
    p.add_argument("--infer-alphabet", action="store_true", help="accept undeclared symbols")
    p.add_argument("--lenient-owl", action="store_true", help="keep unsupported OWL constructors as opaque symbols")
    p.add_argument("--output", "-o", default="-")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="macrofy", description="Compress term languages with macros.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--quiet", "-q", action="store_true", help="suppress warnings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minimize", help="size-minimal encoding of a corpus")
    _problem_args(p)
    p.add_argument("--stats", help="write statistics JSON here")
    p.add_argument("--no-prune", action="store_true", help="problem 3: keep every selected macro")
    p.add_argument("--emit-dot", help="write the containment diagram of the result (Graphviz)")
    p.add_argument("--save-input", help="write the macro-free input language as a corpus")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("verify", help="check that an encoding expands to a source corpus")
    p.add_argument("encoding")
    p.add_argument("source")
    p.add_argument("--stats", help="also check the sizes claimed in this statistics file")
    p.add_argument("--infer-alphabet", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("expand", help="write the fully expanded, macro-free corpus")
    p.add_argument("encoding")
    p.add_argument("--output", "-o", default="-")
    p.add_argument("--infer-alphabet", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("oracle", help="exhaustive minimum for small inputs")
    _problem_args(p)
    p.add_argument("--max-states", type=int, default=SearchBudget.max_states)
    p.add_argument("--max-seconds", type=float, default=SearchBudget.max_seconds)
    p.add_argument("--max-macros", type=int, default=None, help="problem 3: largest macro set tried")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="seeded random corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--terms", type=int, default=5)
    p.add_argument("--max-size", type=int, default=12)
    p.add_argument("--symbols", type=int, default=6)
    p.add_argument("--macros", type=int, default=4)
    p.add_argument("--profile", choices=PROFILES, default="mixed")
    p.add_argument("--unary", action="store_true", help="include a unary symbol")
    p.add_argument("--non-reduced", action="store_true", help="allow macros with equal expansions")
    p.add_argument("--synthetic", action="store_true", help="large corpus with planted repeats")
    p.add_argument("--nodes", type=int, default=150_000, help="target size for --synthetic")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("owl-import", help="convert an .ofn ontology into a corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--problem", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--lenient-owl", action="store_true")
    p.add_argument("--output", "-o", default="-")
    p.add_argument("--report", help="write ingestion statistics JSON here")
    p.set_defaults(func=cmd_owl_import)
    return parser


def _error(exc: BaseException, code: str, status: int) -> int:
    payload = {"error": code, "message": str(exc), "exit_code": status}
    if isinstance(exc, MacrofyError):
        payload.update(exc.details())
    sys.stderr.write(json.dumps(payload) + "\n")
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(format="macrofy: %(levelname)s: %(message)s",
                        level=logging.ERROR if args.quiet else logging.WARNING)
    if getattr(args, "kind", "corpus") is None:
        args.kind = "owl" if args.input.endswith(".ofn") else "corpus"
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        return _error(exc, exc.code, EXIT_USAGE)
    except VerificationFailed as exc:
        return _error(exc, exc.code, EXIT_MISMATCH)
    except MacrofyError as exc:
        for cls, status in EXIT_CODES:
            if isinstance(exc, cls):
                return _error(exc, exc.code, status)
        return _error(exc, exc.code, EXIT_ERROR)
    except OSError as exc:
        return _error(exc, "IOError", EXIT_IO)


if __name__ == "__main__":
    sys.exit(main())
