from __future__ import annotations

import networkx as nx
import pytest

from ucdmerge.diagram import ClassDiagram, UmlClass, UmlRelationship, parse_diagram, serialize_diagram
from ucdmerge.errors import UnknownConceptError
from ucdmerge.matcher import Mapping, MappingSet
from ucdmerge.merger import (
    ActionKind,
    ConflictCatalog,
    SynonymPolicy,
    identity_mappings,
    integrate,
    integrate_n,
)
from ucdmerge.ontology import transform_diagram
from ucdmerge.validator import validate

from .instances import AGG, ASSOC, COMP, INH, diagram, instances, mset


def kinds(model):
    return [a.kind for a in model.actions]


def test_worked_example_merge(g1, g2, worked_m, o1, o2):
    model = integrate(g1, g2, validate(worked_m, o1, o2))
    d = model.diagram
    assert len(d.classes) == 11 + len(g2.classes) - len(worked_m) == 14
    assert d.name == "G1+G2"
    for label in ("Monitor", "Storage", "Hard disk", "Memory", "System unit", "Batterie", "Souris", "PC portable"):
        assert label in d
    assert "Ecran" not in d and "Mémoire" not in d
    assert model.provenance["Monitor"] == {"left", "right"}
    assert model.provenance["Souris"] == {"right"}
    assert kinds(model).count(ActionKind.UNIFIED_SYNONYMS) == 9
    assert UmlRelationship("Hard disk", "Storage", INH) in d.relationships
    assert UmlRelationship("PC portable", "Monitor", COMP) in d.relationships


def test_keep_right_label(g1, g2, worked_m):
    d = integrate(g1, g2, worked_m, ConflictCatalog(synonym_policy=SynonymPolicy.KEEP_RIGHT_LABEL)).diagram
    assert "Ecran" in d and "Monitor" not in d
    assert len(d.classes) == 14


def test_disjoint_union():
    d1 = diagram("A", ["p", "q"], [("p", "q", ASSOC)])
    d2 = diagram("B", ["x"])
    model = integrate(d1, d2, mset())
    assert model.diagram.class_names == ["p", "q", "x"]
    assert set(kinds(model)) == {ActionKind.COPIED_UNMAPPED}
    assert model.diagram.relationships == d1.relationships


def test_self_merge_is_idempotent(g1):
    model = integrate(g1, g1, identity_mappings(g1))
    assert set(model.diagram.classes) == set(g1.classes)
    assert set(model.diagram.relationships) == set(g1.relationships)


def test_homonyms_are_qualified():
    d1 = diagram("A", ["Order", "Item"])
    d2 = diagram("B", ["Order", "A.Order"])
    model = integrate(d1, d2, mset())
    assert model.diagram.class_names == ["A.Order~2", "Item", "B.Order", "A.Order"]
    renamed = [a for a in model.actions if a.kind is ActionKind.RENAMED_HOMONYM]
    assert [a.result for a in renamed] == ["A.Order~2", "B.Order"]


def test_mapped_class_keeps_contested_label():
    d1 = diagram("A", ["Order", "Cart"])
    d2 = diagram("B", ["Order", "Basket"])
    model = integrate(d1, d2, mset(("Cart", "Basket"), ("Order", "Order")))
    assert model.diagram.class_names == ["Order", "Cart"]


def test_attribute_union_and_clash():
    d1 = ClassDiagram("A", (UmlClass("P", (("x", "int"), ("y", "str")), ("f",)),))
    d2 = ClassDiagram("B", (UmlClass("Q", (("y", "text"), ("z", "bool")), ("f", "g")),))
    model = integrate(d1, d2, MappingSet("A", "B", (Mapping("P", "Q"),)))
    (cls,) = model.diagram.classes
    assert cls.attributes == (("x", "int"), ("y", "str"), ("z", "bool"))
    assert cls.operations == ("f", "g")
    assert ActionKind.ATTRIBUTE_TYPE_CLASH in kinds(model)


def test_conflicting_relation_kinds_reported():
    d1 = diagram("A", ["p", "q"], [("p", "q", COMP)])
    d2 = diagram("B", ["x", "y"], [("x", "y", AGG)])
    model = integrate(d1, d2, mset(("p", "x"), ("q", "y")))
    assert len(model.diagram.relationships) == 2
    assert ActionKind.CONFLICTING_RELATION_KINDS in kinds(model)


def test_unknown_or_non_injective_mapping_rejected(g1, g2):
    with pytest.raises(UnknownConceptError):
        integrate(g1, g2, mset(("Nope", "Ecran")))
    with pytest.raises(ValueError):
        integrate(g1, g2, mset(("RAM", "RAM"), ("RAM", "ROM")))


def test_integrate_n_base_and_disjoint():
    a = diagram("A", ["a"])
    model = integrate_n([a], [])
    assert model.diagram == a and model.actions == ()
    b, c = diagram("B", ["b"]), diagram("C", ["c"])
    model = integrate_n([a, b, c], [mset(), mset()])
    assert model.diagram.class_names == ["a", "b", "c"]
    with pytest.raises(ValueError):
        integrate_n([a, b], [])
    with pytest.raises(ValueError):
        integrate_n([], [])


def test_fold_with_a_copy_adds_nothing(g1, g2, worked_m):
    first = integrate(g1, g2, worked_m)
    copy = ClassDiagram("G2copy", g2.classes, g2.relationships)
    # every class of the copy maps onto the node it became in the first merge
    label = {mp.right: mp.left for mp in worked_m}
    step2 = MappingSet("", "", tuple(Mapping(label.get(c.name, c.name), c.name) for c in copy.classes))
    model = integrate_n([g1, g2, copy], [worked_m, step2])
    assert len(model.diagram.classes) == len(first.diagram.classes)
    assert set(model.diagram.relationships) == set(first.diagram.relationships)


def test_merge_laws_on_random_instances():
    for inst in instances(200, seed=11):
        cov = validate(inst.m, inst.o1, inst.o2)
        model = integrate(inst.d1, inst.d2, cov)
        out = model.diagram
        assert len(out.classes) == len(inst.d1.classes) + len(inst.d2.classes) - len(cov.accepted)
        assert parse_diagram(serialize_diagram(out)) == out
        g = nx.DiGraph((r.source, r.target) for r in out.relationships if r.kind is INH)
        assert nx.is_directed_acyclic_graph(g)
        assert transform_diagram(out).id == out.name
