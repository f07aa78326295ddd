"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class MacrofyError(Exception):
    """Base class for every error raised by this package."""

    code = "MacrofyError"

    def details(self) -> dict:
        return {}


class ArityMismatch(MacrofyError):
    code = "ArityMismatch"

    def __init__(self, symbol: str, expected: str, got: int, where: str = ""):
        self.symbol = symbol
        self.expected = expected
        self.got = got
        loc = f" ({where})" if where else ""
        super().__init__(f"symbol {symbol!r} expects {expected} children, got {got}{loc}")

    def details(self) -> dict:
        return {"symbol": self.symbol, "expected": self.expected, "got": self.got}


class UnknownSymbol(MacrofyError):
    code = "UnknownSymbol"

    def __init__(self, symbol: str, where: str = ""):
        self.symbol = symbol
        loc = f" ({where})" if where else ""
        super().__init__(f"unknown symbol {symbol!r}{loc}")

    def details(self) -> dict:
        return {"symbol": self.symbol}


class InvalidPosition(MacrofyError, IndexError):
    code = "InvalidPosition"


# -- macro definitions -------------------------------------------------------

class CyclicDefinitions(MacrofyError):
    code = "CyclicDefinitions"

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cyclic macro definitions: " + " -> ".join(self.cycle))

    def details(self) -> dict:
        return {"cycle": self.cycle}


class ConstantExpansion(MacrofyError):
    code = "ConstantExpansion"

    def __init__(self, macro: str):
        self.macro = macro
        super().__init__(f"macro {macro!r} is defined as a constant term")

    def details(self) -> dict:
        return {"macro": self.macro}


class SymbolClash(MacrofyError):
    code = "SymbolClash"

    def __init__(self, symbols):
        self.symbols = sorted(symbols)
        super().__init__("macro symbols clash with the alphabet: " + ", ".join(self.symbols))

    def details(self) -> dict:
        return {"symbols": self.symbols}


class NotInstantiable(MacrofyError):
    code = "NotInstantiable"


class NotReduced(MacrofyError):
    code = "NotReduced"

    def __init__(self, groups):
        self.groups = [sorted(g) for g in groups]
        shown = "; ".join(", ".join(g) for g in self.groups)
        super().__init__(f"macro definitions are not reduced (equal expansions: {shown})")

    def details(self) -> dict:
        return {"groups": self.groups}


class UnarySymbolsPresent(MacrofyError):
    code = "UnarySymbolsPresent"

    def __init__(self, symbols, terms=()):
        self.symbols = sorted(symbols)
        self.terms = list(terms)
        super().__init__("language contains unary symbols: " + ", ".join(self.symbols))

    def details(self) -> dict:
        return {"symbols": self.symbols, "terms": self.terms[:20]}


class BudgetExceeded(MacrofyError):
    code = "BudgetExceeded"


# -- input formats -------------------------------------------------------------

class CorpusError(MacrofyError):
    code = "CorpusError"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}" + (f", column {column}" if column is not None else "") + f": {message}"
        # not super(): subclasses may also derive from ArityMismatch
        Exception.__init__(self, message)

    def details(self) -> dict:
        return {"line": self.line, "column": self.column}


class CorpusSyntaxError(CorpusError):
    code = "SyntaxError"


class UndeclaredSymbol(CorpusError):
    code = "UndeclaredSymbol"


class DuplicateSymbolDeclaration(CorpusError):
    code = "DuplicateSymbolDeclaration"


class CorpusArityMismatch(CorpusError, ArityMismatch):
    code = "ArityMismatch"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        CorpusError.__init__(self, message, line, column)


class OwlSyntaxError(CorpusError):
    code = "SyntaxError"
