from __future__ import annotations


class UcdMergeError(Exception):
    """Base class for every error raised by this package."""


class DiagramError(UcdMergeError, ValueError):
    """A class diagram violates one of its structural invariants."""


class DiagramSyntaxError(DiagramError):
    def __init__(self, message: str, line: int, column: int = 1) -> None:
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownConceptError(UcdMergeError, LookupError):
    def __init__(self, label: str, where: str = "") -> None:
        self.label = label
        suffix = f" in {where}" if where else ""
        super().__init__(f"unknown concept {label!r}{suffix}")


class LexiconError(UcdMergeError, ValueError):
    def __init__(self, message: str, line: int) -> None:
        self.line = line
        super().__init__(f"lexicon line {line}: {message}")


class OracleCapExceeded(UcdMergeError):
    pass


class ConfigError(UcdMergeError, ValueError):
    pass
