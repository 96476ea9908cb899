"""UML class diagrams and the line-oriented ``.ucd`` text format.

A ``.ucd`` document looks like this::

    # comment
    diagram "Hardware"
    class "Memory"
        attr "size" : "int"
        op "refresh"
    class "RAM"
    inherit "RAM" "Memory"

Relationship statements are ``inherit <child> <parent>``, ``compose <whole>
<part>``, ``aggregate <whole> <part>`` and ``assoc <a> <b>``.  Every name is
double-quoted; ``\\"`` and ``\\\\`` are the only escapes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .errors import DiagramError, DiagramSyntaxError


class RelationKind(Enum):
    INHERITANCE = "Inheritance"
    AGGREGATION = "Aggregation"
    COMPOSITION = "Composition"
    ASSOCIATION = "Association"


_KEYWORD_TO_KIND = {
    "inherit": RelationKind.INHERITANCE,
    "aggregate": RelationKind.AGGREGATION,
    "compose": RelationKind.COMPOSITION,
    "assoc": RelationKind.ASSOCIATION,
}
_KIND_TO_KEYWORD = {kind: kw for kw, kind in _KEYWORD_TO_KIND.items()}


def _check_name(name: str, what: str) -> None:
    if not isinstance(name, str) or not name:
        raise DiagramError(f"{what} must be a non-empty string")
    if "\n" in name or "\r" in name:
        raise DiagramError(f"{what} {name!r} contains a line break")


@dataclass(frozen=True)
class UmlClass:
    name: str
    attributes: tuple[tuple[str, str], ...] = ()
    operations: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        _check_name(self.name, "class name")
        object.__setattr__(self, "attributes", tuple((str(n), str(t)) for n, t in self.attributes))
        object.__setattr__(self, "operations", tuple(self.operations))
        seen: set[str] = set()
        for attr_name, attr_type in self.attributes:
            _check_name(attr_name, "attribute name")
            _check_name(attr_type, "attribute type")
            if attr_name in seen:
                raise DiagramError(f"class {self.name!r}: duplicate attribute {attr_name!r}")
            seen.add(attr_name)
        for op in self.operations:
            _check_name(op, "operation name")
        if len(set(self.operations)) != len(self.operations):
            raise DiagramError(f"class {self.name!r}: duplicate operation")


@dataclass(frozen=True)
class UmlRelationship:
    source: str
    target: str
    kind: RelationKind

    def __post_init__(self) -> None:
        if self.kind is RelationKind.INHERITANCE and self.source == self.target:
            raise DiagramError(f"class {self.source!r} cannot inherit from itself")

    def sort_key(self) -> tuple[str, str, str]:
        return (self.source, self.target, self.kind.value)


@dataclass(frozen=True, eq=False)
class ClassDiagram:
    """A named diagram.

    Classes and relationships keep their construction order, but equality
    ignores it: two diagrams are equal when they hold the same classes and
    the same relationships.
    """

    name: str
    classes: tuple[UmlClass, ...] = ()
    relationships: tuple[UmlRelationship, ...] = ()
    _by_name: dict[str, UmlClass] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        _check_name(self.name, "diagram name")
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "relationships", tuple(self.relationships))
        by_name: dict[str, UmlClass] = {}
        for cls in self.classes:
            if cls.name in by_name:
                raise DiagramError(f"duplicate class {cls.name!r}")
            by_name[cls.name] = cls
        seen: set[UmlRelationship] = set()
        for rel in self.relationships:
            for end in (rel.source, rel.target):
                if end not in by_name:
                    raise DiagramError(f"relationship endpoint {end!r} is not a declared class")
            if rel in seen:
                raise DiagramError(
                    f"duplicate relationship {rel.kind.value} {rel.source!r} -> {rel.target!r}"
                )
            seen.add(rel)
        object.__setattr__(self, "_by_name", by_name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassDiagram):
            return NotImplemented
        return (
            self.name == other.name
            and frozenset(self.classes) == frozenset(other.classes)
            and frozenset(self.relationships) == frozenset(other.relationships)
        )

    def __hash__(self) -> int:
        return hash((self.name, frozenset(self.classes), frozenset(self.relationships)))

    def __contains__(self, name: object) -> bool:
        return name in self._by_name

    def get(self, name: str) -> UmlClass:
        return self._by_name[name]

    @property
    def class_names(self) -> list[str]:
        return [c.name for c in self.classes]


# ---------------------------------------------------------------- parsing


def _tokenize(line: str, lineno: int) -> list[tuple[str, bool, int]]:
    """Split one line into ``(text, quoted, column)`` tokens, dropping comments."""
    tokens: list[tuple[str, bool, int]] = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch in " \t":
            i += 1
        elif ch == "#":
            break
        elif ch == '"':
            start = i
            i += 1
            buf: list[str] = []
            while True:
                if i >= n:
                    raise DiagramSyntaxError("unterminated string", lineno, start + 1)
                ch = line[i]
                if ch == "\\":
                    if i + 1 < n and line[i + 1] in '"\\':
                        buf.append(line[i + 1])
                        i += 2
                        continue
                    raise DiagramSyntaxError("invalid escape sequence", lineno, i + 1)
                if ch == '"':
                    i += 1
                    break
                buf.append(ch)
                i += 1
            tokens.append(("".join(buf), True, start + 1))
        elif ch == ":":
            tokens.append((":", False, i + 1))
            i += 1
        else:
            start = i
            while i < n and line[i] not in ' \t"#:':
                i += 1
            tokens.append((line[start:i], False, start + 1))
    return tokens


def _expect_names(tokens, count: int, lineno: int, keyword: str) -> list[str]:
    args = tokens[1:]
    if len(args) != count:
        col = args[count][2] if len(args) > count else (tokens[-1][2])
        raise DiagramSyntaxError(f"{keyword!r} takes {count} quoted name(s)", lineno, col)
    for text, quoted, col in args:
        if not quoted:
            raise DiagramSyntaxError(f"expected a quoted name, got {text!r}", lineno, col)
        if not text:
            raise DiagramSyntaxError("names must not be empty", lineno, col)
        if "\r" in text:
            raise DiagramSyntaxError("names must not contain line breaks", lineno, col)
    return [t[0] for t in args]


class _ClassBuilder:
    def __init__(self, name: str, lineno: int) -> None:
        self.name = name
        self.lineno = lineno
        self.attributes: list[tuple[str, str]] = []
        self.operations: list[str] = []


def parse_diagram(text: str | bytes) -> ClassDiagram:
    """Parse a ``.ucd`` document.

    Raises :class:`DiagramSyntaxError` (always carrying a 1-based line number)
    for malformed input or invariant violations.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            line = bytes(text)[: exc.start].count(b"\n") + 1
            raise DiagramSyntaxError("input is not valid UTF-8", line) from None
    if text.startswith("\ufeff"):
        text = text[1:]

    name: str | None = None
    builders: dict[str, _ClassBuilder] = {}
    current: _ClassBuilder | None = None
    rels: list[tuple[UmlRelationship, int, int]] = []

    for lineno, raw in enumerate(text.split("\n"), start=1):
        if raw.endswith("\r"):
            raw = raw[:-1]
        tokens = _tokenize(raw, lineno)
        if not tokens:
            continue
        keyword, quoted, col = tokens[0]
        if quoted:
            raise DiagramSyntaxError("expected a keyword", lineno, col)
        indented = raw[:1] in (" ", "\t")

        if name is None:
            if keyword != "diagram":
                raise DiagramSyntaxError("document must start with a 'diagram' header", lineno, col)
            (name,) = _expect_names(tokens, 1, lineno, keyword)
            continue

        if keyword in ("attr", "op"):
            if current is None or not indented:
                raise DiagramSyntaxError(
                    f"{keyword!r} must be indented under a class", lineno, col
                )
            if keyword == "op":
                (op_name,) = _expect_names(tokens, 1, lineno, keyword)
                if op_name in current.operations:
                    raise DiagramSyntaxError(f"duplicate operation {op_name!r}", lineno, col)
                current.operations.append(op_name)
                continue
            if len(tokens) != 4 or tokens[2][0] != ":" or tokens[2][1]:
                raise DiagramSyntaxError('expected attr "<name>" : "<type>"', lineno, col)
            attr_name, attr_type = _expect_names([tokens[0], tokens[1], tokens[3]], 2, lineno, keyword)
            if any(a == attr_name for a, _ in current.attributes):
                raise DiagramSyntaxError(f"duplicate attribute {attr_name!r}", lineno, tokens[1][2])
            current.attributes.append((attr_name, attr_type))
            continue

        current = None
        if keyword == "diagram":
            raise DiagramSyntaxError("only one 'diagram' header is allowed", lineno, col)
        if keyword == "class":
            (cls_name,) = _expect_names(tokens, 1, lineno, keyword)
            if cls_name in builders:
                raise DiagramSyntaxError(f"duplicate class {cls_name!r}", lineno, tokens[1][2])
            current = builders[cls_name] = _ClassBuilder(cls_name, lineno)
        elif keyword in _KEYWORD_TO_KIND:
            source, target = _expect_names(tokens, 2, lineno, keyword)
            kind = _KEYWORD_TO_KIND[keyword]
            if kind is RelationKind.INHERITANCE and source == target:
                raise DiagramSyntaxError(f"class {source!r} cannot inherit from itself", lineno, col)
            rels.append((UmlRelationship(source, target, kind), lineno, col))
        else:
            raise DiagramSyntaxError(f"unknown keyword {keyword!r}", lineno, col)

    if name is None:
        raise DiagramSyntaxError("missing 'diagram' header", max(1, text.count("\n") + 1))

    seen: set[UmlRelationship] = set()
    for rel, lineno, col in rels:
        for end in (rel.source, rel.target):
            if end not in builders:
                raise DiagramSyntaxError(f"relationship endpoint {end!r} is not a declared class", lineno, col)
        if rel in seen:
            raise DiagramSyntaxError("duplicate relationship", lineno, col)
        seen.add(rel)

    try:
        classes = [UmlClass(b.name, tuple(b.attributes), tuple(b.operations)) for b in builders.values()]
        return ClassDiagram(name, tuple(classes), tuple(r for r, _, _ in rels))
    except DiagramError as exc:
        if isinstance(exc, DiagramSyntaxError):
            raise
        raise DiagramSyntaxError(str(exc), 1) from None


# ----------------------------------------------------------- serializing


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize_diagram(d: ClassDiagram) -> str:
    lines = [f"diagram {_quote(d.name)}"]
    classes = sorted(d.classes, key=lambda c: c.name)
    if classes:
        lines.append("")
    for cls in classes:
        lines.append(f"class {_quote(cls.name)}")
        for attr_name, attr_type in cls.attributes:
            lines.append(f"    attr {_quote(attr_name)} : {_quote(attr_type)}")
        for op in cls.operations:
            lines.append(f"    op {_quote(op)}")
    rels = sorted(d.relationships, key=UmlRelationship.sort_key)
    if rels:
        lines.append("")
    for rel in rels:
        lines.append(f"{_KIND_TO_KEYWORD[rel.kind]} {_quote(rel.source)} {_quote(rel.target)}")
    return "\n".join(lines) + "\n"


def load_diagram(path) -> ClassDiagram:
    with open(path, "rb") as fh:
        return parse_diagram(fh.read())


def inheritance_edges(d: ClassDiagram) -> Iterable[tuple[str, str]]:
    return ((r.source, r.target) for r in d.relationships if r.kind is RelationKind.INHERITANCE)
