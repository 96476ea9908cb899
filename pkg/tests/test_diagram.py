from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ucdmerge.diagram import (
    ClassDiagram,
    RelationKind,
    UmlClass,
    UmlRelationship,
    parse_diagram,
    serialize_diagram,
)
from ucdmerge.errors import DiagramError, DiagramSyntaxError


def test_minimal_document():
    d = parse_diagram('diagram "T"\nclass "A"\nclass "B"\ninherit "B" "A"')
    assert d.name == "T"
    assert d.class_names == ["A", "B"]
    assert d.relationships == (UmlRelationship("B", "A", RelationKind.INHERITANCE),)


def test_fixture_has_eleven_classes(g1):
    assert g1.class_names == [
        "Desktop PC", "Keyboard", "System unit", "Monitor", "Microproc",
        "Memory", "RAM", "ROM", "Cache", "Storage", "Hard disk",
    ]


def test_attributes_operations_and_comments():
    d = parse_diagram(
        '# leading comment\n'
        'diagram "Shop"  # trailing comment\n'
        'class "Order"\n'
        '    attr "total" : "Money"\n'
        '\top "checkout"\n'
        'class "Line \\"item\\""\n'
        'compose "Order" "Line \\"item\\""\n'
        'assoc "Order" "Order"\n'
    )
    order = d.get("Order")
    assert order.attributes == (("total", "Money"),)
    assert order.operations == ("checkout",)
    assert 'Line "item"' in d
    kinds = {r.kind for r in d.relationships}
    assert kinds == {RelationKind.COMPOSITION, RelationKind.ASSOCIATION}


def test_parse_keeps_declaration_order():
    d = parse_diagram('diagram "x"\nclass "z"\nclass "a"\nclass "m"\n')
    assert d.class_names == ["z", "a", "m"]


def test_non_ascii_names_with_spaces(g2):
    assert "Unité centrale" in g2
    assert "Mémoire" in g2


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ('diagram "T"\ninherit "B" "A"\n', 2, "not a declared class"),
        ('diagram "T"\nclass "A"\nclass "A"\n', 3, "duplicate class"),
        ('diagram "T"\nclass "A"\ninherit "A" "A"\n', 3, "inherit from itself"),
        ('class "A"\n', 1, "diagram"),
        ('diagram "T"\ndiagram "U"\n', 2, "only one"),
        ('diagram "T"\nclass A\n', 2, "quoted"),
        ('diagram "T"\nclass "A\n', 2, "unterminated"),
        ('diagram "T"\nfrobnicate "A"\n', 2, "unknown keyword"),
        ('diagram "T"\nattr "x" : "int"\n', 2, "indented"),
        ('diagram "T"\nclass "A"\n  attr "x" "int"\n', 3, "attr"),
        ('diagram "T"\nclass "A"\n  attr "x" : "int"\n  attr "x" : "str"\n', 4, "duplicate attribute"),
        ('diagram "T"\nclass "A"\nclass "B"\nassoc "A" "B"\nassoc "A" "B"\n', 5, "duplicate relationship"),
        ('diagram "T"\nclass ""\n', 2, "empty"),
        ('diagram "T"\nclass "a\\nb"\n', 2, "escape"),
        ("", 1, "diagram"),
        ("# only a comment\n\n", 3, "diagram"),
    ],
)
def test_errors_report_line(text, line, fragment):
    with pytest.raises(DiagramSyntaxError) as info:
        parse_diagram(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_invalid_utf8_reports_line():
    with pytest.raises(DiagramSyntaxError) as info:
        parse_diagram(b'diagram "T"\nclass "\xff"\n')
    assert info.value.line == 2


def test_crlf_and_bom_accepted():
    d = parse_diagram('﻿diagram "T"\r\nclass "A"\r\n    attr "x" : "int"\r\n'.encode())
    assert d.get("A").attributes == (("x", "int"),)


def test_empty_diagram_serializes_to_header_only():
    assert serialize_diagram(ClassDiagram("empty")) == 'diagram "empty"\n'


def test_serialization_is_sorted():
    d = ClassDiagram(
        "d",
        (UmlClass("b"), UmlClass("a")),
        (UmlRelationship("b", "a", RelationKind.INHERITANCE), UmlRelationship("a", "b", RelationKind.ASSOCIATION)),
    )
    assert serialize_diagram(d) == 'diagram "d"\n\nclass "a"\nclass "b"\n\nassoc "a" "b"\ninherit "b" "a"\n'


def test_fixture_round_trip_is_byte_stable(data_dir):
    raw = (data_dir / "g2.ucd").read_text(encoding="utf-8")
    once = serialize_diagram(parse_diagram(raw))
    twice = serialize_diagram(parse_diagram(once))
    assert once == twice
    assert parse_diagram(once) == parse_diagram(raw)


def test_constructor_invariants():
    with pytest.raises(DiagramError):
        ClassDiagram("d", (UmlClass("a"), UmlClass("a")))
    with pytest.raises(DiagramError):
        ClassDiagram("d", (UmlClass("a"),), (UmlRelationship("a", "b", RelationKind.ASSOCIATION),))
    with pytest.raises(DiagramError):
        UmlRelationship("a", "a", RelationKind.INHERITANCE)
    with pytest.raises(DiagramError):
        UmlClass("a", (("x", "int"), ("x", "str")))
    with pytest.raises(DiagramError):
        UmlClass("line\nbreak")


def test_equality_ignores_order():
    a = ClassDiagram("d", (UmlClass("x"), UmlClass("y")))
    b = ClassDiagram("d", (UmlClass("y"), UmlClass("x")))
    assert a == b and hash(a) == hash(b)
    assert a != ClassDiagram("e", (UmlClass("x"), UmlClass("y")))


# ------------------------------------------------------------ properties

names = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters="\n\r"),
    min_size=1, max_size=8,
)


@st.composite
def diagrams(draw):
    class_names = draw(st.lists(names, min_size=0, max_size=6, unique=True))
    classes = []
    for n in class_names:
        attrs = draw(st.lists(st.tuples(names, names), max_size=3, unique_by=lambda t: t[0]))
        ops = draw(st.lists(names, max_size=2, unique=True))
        classes.append(UmlClass(n, tuple(attrs), tuple(ops)))
    rels = set()
    if class_names:
        for _ in range(draw(st.integers(0, 8))):
            s = draw(st.sampled_from(class_names))
            t = draw(st.sampled_from(class_names))
            kind = draw(st.sampled_from(list(RelationKind)))
            if kind is RelationKind.INHERITANCE and s == t:
                continue
            rels.add(UmlRelationship(s, t, kind))
    return ClassDiagram(draw(names), tuple(classes), tuple(rels))


@given(diagrams())
@settings(max_examples=200)
def test_round_trip(d):
    text = serialize_diagram(d)
    again = parse_diagram(text)
    assert again == d
    assert serialize_diagram(again) == text


@given(st.binary(max_size=200))
@settings(max_examples=300)
def test_parse_is_total_on_bytes(blob):
    try:
        parse_diagram(blob)
    except DiagramSyntaxError as exc:
        assert exc.line >= 1


@given(st.lists(st.sampled_from(['diagram "T"', 'class "A"', 'class "B"', '  attr "x" : "y"', '  op "f"',
                                 'inherit "A" "B"', 'assoc "B" "A"', 'compose "A" "A"', '"', "#", "", "class"]),
                max_size=10))
def test_parse_is_total_on_statement_soup(lines):
    try:
        d = parse_diagram("\n".join(lines))
    except DiagramSyntaxError as exc:
        assert 1 <= exc.line <= max(1, len(lines))
    else:
        assert parse_diagram(serialize_diagram(d)) == d
