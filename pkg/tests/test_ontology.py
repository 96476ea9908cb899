from __future__ import annotations

import pytest

from ucdmerge.diagram import ClassDiagram, RelationKind, parse_diagram
from ucdmerge.errors import DiagramError, UnknownConceptError
from ucdmerge.ontology import (
    ALL_RELATION_TYPES,
    Concept,
    ConceptRelationship,
    Ontology,
    RelationType,
    transform_all,
    transform_diagram,
)


def test_fixture_concepts_and_types(o1):
    assert {"Desktop PC", "Keyboard", "System unit"} <= set(o1.labels)
    assert o1.used_types == {RelationType.INHERITANCE, RelationType.AGGREGATION, RelationType.COMPOSITION}
    assert o1.types == ALL_RELATION_TYPES


def test_counts_follow_the_diagram(g1, g2, o1, o2):
    for d, o in ((g1, o1), (g2, o2)):
        assert len(o.concepts) == len(d.classes)
        assert len(o.relationships) == len(d.relationships)
        assert o.id == d.name


def test_storage_and_hard_disk_joined_by_inheritance(o2):
    assert (RelationType.INHERITANCE, True) in o2.link("Disque dur", "Stockage")
    assert (RelationType.INHERITANCE, False) in o2.link("Stockage", "Disque dur")


def test_empty_diagram():
    o = transform_diagram(ClassDiagram("e"))
    assert o.concepts == () and o.relationships == ()


def test_single_inheritance():
    o = transform_diagram(parse_diagram('diagram "T"\nclass "A"\nclass "B"\ninherit "B" "A"'))
    assert o.relationships == (ConceptRelationship("B", "A", RelationType.INHERITANCE),)
    assert o.adjacent("A", "B") and o.adjacent("B", "A")
    assert o.neighbours == {"A": ("B",), "B": ("A",)}


def test_members_carried_over():
    o = transform_diagram(parse_diagram('diagram "T"\nclass "A"\n  attr "x" : "int"\n  op "f"\n'))
    assert o.concept("A") == Concept("A", (("x", "int"),), ("f",))


def test_self_loop_is_not_a_neighbour():
    o = transform_diagram(parse_diagram('diagram "T"\nclass "A"\nassoc "A" "A"\n'))
    assert o.neighbours["A"] == ()
    assert o.link("A", "A") == {(RelationType.ASSOCIATION, True), (RelationType.ASSOCIATION, False)}


def test_same_endpoints_two_kinds():
    o = transform_diagram(parse_diagram('diagram "T"\nclass "A"\nclass "B"\nassoc "A" "B"\ncompose "B" "A"\n'))
    assert o.link("A", "B") == {(RelationType.ASSOCIATION, True), (RelationType.COMPOSITION, False)}


def test_constructor_checks():
    with pytest.raises(UnknownConceptError):
        Ontology("x", (Concept("A"),), (ConceptRelationship("A", "B", RelationType.ASSOCIATION),))
    with pytest.raises(DiagramError):
        Ontology("x", (Concept("A"), Concept("A")))
    with pytest.raises(DiagramError):
        Ontology("x", (Concept("A"), Concept("B")),
                 (ConceptRelationship("A", "B", RelationType.ASSOCIATION),), types={RelationKind.INHERITANCE})
    with pytest.raises(UnknownConceptError):
        Ontology("x").concept("nope")


def test_transform_all(g1, g2, o1, o2):
    assert transform_all([g2, g1]) == [o1, o2]
    assert transform_all([g2, g1], workers=2) == [o1, o2]
    assert transform_all([]) == []
    with pytest.raises(DiagramError, match="duplicate"):
        transform_all([g1, g1])
