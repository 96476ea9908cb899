from __future__ import annotations

import pytest

from ucdmerge.errors import OracleCapExceeded
from ucdmerge.oracle import IsoPairSet, enumerate_iso_pairs, maximal_elements, oracle_max_subgraphs
from ucdmerge.segments import GraphMode, SubgraphPair, SubOntology, equivalence_classes, to_max_subgraphs

from .instances import COMP, INH, instances, mset, onto

EMPTY = SubgraphPair(SubOntology(), SubOntology(), frozenset())


def vertex_pair(a, b):
    return SubgraphPair(SubOntology(frozenset({a})), SubOntology(frozenset({b})), frozenset({(a, b)}))


def test_empty_mapping_set_gives_the_empty_pair():
    o = onto("O", ["a"])
    assert enumerate_iso_pairs(o, o, mset()).pairs == {EMPTY}
    # the segment engine has no class to offer here
    assert to_max_subgraphs(equivalence_classes(mset(), o, o), o, o) == ()


def test_single_mapping():
    o1, o2 = onto("O1", ["a", "b"]), onto("O2", ["x"])
    found = enumerate_iso_pairs(o1, o2, mset(("a", "x")))
    assert found.pairs == {EMPTY, vertex_pair("a", "x")}
    assert maximal_elements(found) == {vertex_pair("a", "x")}


def test_maximal_elements_of_chain_and_antichain():
    small = vertex_pair("a", "x")
    o1 = onto("O1", ["a", "b"], [("a", "b", COMP)])
    o2 = onto("O2", ["x", "y"], [("x", "y", COMP)])
    big = next(iter(oracle_max_subgraphs(o1, o2, mset(("a", "x"), ("b", "y")))))
    assert maximal_elements(frozenset({small, big})) == {big}
    anti = frozenset({vertex_pair("a", "x"), vertex_pair("b", "y"), vertex_pair("c", "z")})
    assert maximal_elements(IsoPairSet(anti)) == anti


def test_disconnected_subsets_are_not_pairs():
    o1 = onto("O1", ["a", "b"], [("a", "b", INH)])
    o2 = onto("O2", ["x", "y"], [("y", "x", INH)])
    found = enumerate_iso_pairs(o1, o2, mset(("a", "x"), ("b", "y")))
    assert len(found) == 3  # empty and two single vertices


def test_worked_example(worked_m, o1, o2):
    result = oracle_max_subgraphs(o1, o2, worked_m)
    assert sorted(len(sp.correspondence) for sp in result) == [1, 2, 6]
    assert result == frozenset(to_max_subgraphs(equivalence_classes(worked_m, o1, o2), o1, o2))


def test_cap():
    labels = [f"c{i}" for i in range(5)]
    o = onto("O", labels)
    with pytest.raises(OracleCapExceeded):
        enumerate_iso_pairs(o, o, mset(*[(x, x) for x in labels]), cap=4)


@pytest.mark.parametrize("mode", list(GraphMode))
def test_agrees_with_segment_engine(mode):
    for inst in instances(60, seed=3):
        engine = to_max_subgraphs(equivalence_classes(inst.m, inst.o1, inst.o2, mode), inst.o1, inst.o2, mode)
        assert frozenset(engine) == oracle_max_subgraphs(inst.o1, inst.o2, inst.m, mode)
        assert len(set(engine)) == len(engine)
