"""Exhaustive reference for maximal isomorphic subgraph pairs.

Every subset of the mapping set is tried as a vertex correspondence.  Edges
are paired by scanning the full cross product of both relationship sets, and
connectivity is checked with a plain depth-first search, so nothing here
relies on the mapping-adjacency graph used by :mod:`ucdmerge.segments`.
Exponential in the number of mappings; guarded by a cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import OracleCapExceeded
from .matcher import MappingSet
from .ontology import ConceptRelationship, Ontology
from .segments import GraphMode, SubgraphPair, SubOntology

DEFAULT_CAP = 16


@dataclass(frozen=True)
class IsoPairSet:
    pairs: frozenset[SubgraphPair]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def _edge_pairs(o1: Ontology, o2: Ontology, corr: dict[str, str], mode: GraphMode):
    """All (left edge, right edge) pairs that correspond under ``corr``."""
    out: list[tuple[ConceptRelationship, ConceptRelationship]] = []
    for e1, e2 in product(o1.relationships, o2.relationships):
        if e1.source not in corr or e1.target not in corr:
            continue
        fs, ft = corr[e1.source], corr[e1.target]
        if mode is GraphMode.TYPED:
            ok = e1.rel_type == e2.rel_type and (fs, ft) == (e2.source, e2.target)
        else:
            ok = (fs, ft) in ((e2.source, e2.target), (e2.target, e2.source))
        if ok:
            out.append((e1, e2))
    return out


def _connected(vertices: list[tuple[str, str]], edge_pairs, corr: dict[str, str]) -> bool:
    if len(vertices) <= 1:
        return True
    nbrs: dict[tuple[str, str], set[tuple[str, str]]] = {v: set() for v in vertices}
    for e1, _ in edge_pairs:
        u = (e1.source, corr[e1.source])
        v = (e1.target, corr[e1.target])
        nbrs[u].add(v)
        nbrs[v].add(u)
    stack, seen = [vertices[0]], {vertices[0]}
    while stack:
        for w in nbrs[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


def _isomorphic(left: SubOntology, right: SubOntology, corr: dict[str, str], mode: GraphMode) -> bool:
    if sorted(corr) != sorted(left.concepts) or sorted(corr.values()) != sorted(right.concepts):
        return False
    if len(set(corr.values())) != len(corr):
        return False
    for e1 in left.edges:
        fs, ft = corr[e1.source], corr[e1.target]
        if mode is GraphMode.TYPED:
            hit = any((e2.source, e2.target, e2.rel_type) == (fs, ft, e1.rel_type) for e2 in right.edges)
        else:
            hit = any({e2.source, e2.target} == {fs, ft} for e2 in right.edges)
        if not hit:
            return False
    inverse = {y: x for x, y in corr.items()}
    for e2 in right.edges:
        gs, gt = inverse[e2.source], inverse[e2.target]
        if mode is GraphMode.TYPED:
            hit = any((e1.source, e1.target, e1.rel_type) == (gs, gt, e2.rel_type) for e1 in left.edges)
        else:
            hit = any({e1.source, e1.target} == {gs, gt} for e1 in left.edges)
        if not hit:
            return False
    return True


def enumerate_iso_pairs(
    o1: Ontology, o2: Ontology, m: MappingSet,
    mode: GraphMode = GraphMode.TYPED, cap: int = DEFAULT_CAP,
) -> IsoPairSet:
    """All mapping-compatible, connected, isomorphic subgraph pairs (the empty pair included)."""
    mappings = sorted(m.pairs())
    if len(mappings) > cap:
        raise OracleCapExceeded(f"{len(mappings)} mappings exceed the oracle cap of {cap}")
    found = set()
    for mask in range(1 << len(mappings)):
        subset = [mappings[i] for i in range(len(mappings)) if mask >> i & 1]
        corr = dict(subset)
        if len(corr) != len(subset) or len(set(corr.values())) != len(subset):
            continue  # not a bijection
        edge_pairs = _edge_pairs(o1, o2, corr, mode)
        if not _connected(subset, edge_pairs, corr):
            continue
        left = SubOntology(frozenset(corr), frozenset(e1 for e1, _ in edge_pairs))
        right = SubOntology(frozenset(corr.values()), frozenset(e2 for _, e2 in edge_pairs))
        if _isomorphic(left, right, corr, mode):
            found.add(SubgraphPair(left, right, frozenset(subset)))
    return IsoPairSet(frozenset(found))


def _included(a: SubgraphPair, b: SubgraphPair) -> bool:
    return (
        a.left.concepts <= b.left.concepts
        and a.left.edges <= b.left.edges
        and a.right.concepts <= b.right.concepts
        and a.right.edges <= b.right.edges
    )


def maximal_elements(s: IsoPairSet | frozenset[SubgraphPair]) -> frozenset[SubgraphPair]:
    pairs = list(s.pairs if isinstance(s, IsoPairSet) else s)
    return frozenset(
        p for p in pairs if not any(q != p and _included(p, q) for q in pairs)
    )


def oracle_max_subgraphs(
    o1: Ontology, o2: Ontology, m: MappingSet,
    mode: GraphMode = GraphMode.TYPED, cap: int = DEFAULT_CAP,
) -> frozenset[SubgraphPair]:
    return maximal_elements(enumerate_iso_pairs(o1, o2, m, mode, cap))
