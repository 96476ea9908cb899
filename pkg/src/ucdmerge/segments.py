"""Segments, mapping segments and the bonding-by-segment partition.

Two mappings ``(a1, b1)`` and ``(a2, b2)`` are *adjacent* when an edge joins
``a1`` and ``a2`` in the left ontology and an edge of the same type and the
same direction joins ``b1`` and ``b2`` in the right one.  A mapping segment
is a walk through adjacent mappings, so two mappings are bonded exactly when
they are connected in the mapping-adjacency graph.  Segments are never
enumerated; everything below is breadth-first search over that graph.

In ``GraphMode.PLAIN`` types and directions are ignored: any edge on each
side between the two endpoints will do.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .matcher import Mapping, MappingSet
from .ontology import ConceptRelationship, Ontology


class GraphMode(Enum):
    TYPED = "Typed"
    PLAIN = "Plain"


# -------------------------------------------------------------- segments


def is_segment(seq: Sequence[str], o: Ontology) -> bool:
    o.require(*seq)
    if not seq:
        return False
    return all(o.adjacent(x, y) for x, y in zip(seq, seq[1:]))


def _realizing_edge(o: Ontology, x: str, y: str) -> ConceptRelationship:
    # deterministic pick when several edges join x and y
    options = sorted(o.link(x, y), key=lambda tf: (tf[0].value, not tf[1]))
    rel_type, forward = options[0]
    return ConceptRelationship(x, y, rel_type) if forward else ConceptRelationship(y, x, rel_type)


@dataclass(frozen=True)
class Segment:
    concepts: tuple[str, ...]
    edges: tuple[ConceptRelationship, ...]

    @classmethod
    def from_labels(cls, o: Ontology, labels: Sequence[str]) -> Segment:
        if not is_segment(labels, o):
            raise ValueError(f"{list(labels)} is not a segment of {o.id!r}")
        edges = tuple(_realizing_edge(o, x, y) for x, y in zip(labels, labels[1:]))
        return cls(tuple(labels), edges)


def shared_links(m1: Mapping, m2: Mapping, o1: Ontology, o2: Ontology):
    """(type, direction) combinations realized on both sides for the step m1 -> m2."""
    return o1.link(m1.left, m2.left) & o2.link(m1.right, m2.right)


def mappings_adjacent(
    m1: Mapping, m2: Mapping, o1: Ontology, o2: Ontology, mode: GraphMode = GraphMode.TYPED
) -> bool:
    if m1.pair == m2.pair:
        return False
    if mode is GraphMode.PLAIN:
        return o1.adjacent(m1.left, m2.left) and o2.adjacent(m1.right, m2.right)
    return bool(shared_links(m1, m2, o1, o2))


@dataclass(frozen=True)
class MappingSegment:
    steps: tuple[Mapping, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("a mapping segment needs at least one step")

    @property
    def ends(self) -> tuple[Mapping, Mapping]:
        return self.steps[0], self.steps[-1]

    def left(self, o1: Ontology) -> Segment:
        return Segment.from_labels(o1, [m.left for m in self.steps])

    def right(self, o2: Ontology) -> Segment:
        return Segment.from_labels(o2, [m.right for m in self.steps])

    def is_valid(
        self, m: MappingSet, o1: Ontology, o2: Ontology, mode: GraphMode = GraphMode.TYPED
    ) -> bool:
        if any(step not in m for step in self.steps):
            return False
        return all(mappings_adjacent(a, b, o1, o2, mode) for a, b in zip(self.steps, self.steps[1:]))


class MappingGraph:
    """Adjacency lists of the mapping-adjacency graph of one mapping set."""

    def __init__(self, m: MappingSet, o1: Ontology, o2: Ontology, mode: GraphMode = GraphMode.TYPED):
        self.mappings = m
        self.mode = mode
        for mp in m:
            o1.require(mp.left)
            o2.require(mp.right)
        by_left: dict[str, list[Mapping]] = defaultdict(list)
        for mp in m:
            by_left[mp.left].append(mp)
        order = {mp: i for i, mp in enumerate(m)}
        adj: dict[Mapping, list[Mapping]] = {}
        for mp in m:
            nbrs = []
            for x in (*o1.neighbours[mp.left], mp.left):
                for other in by_left.get(x, ()):
                    if mappings_adjacent(mp, other, o1, o2, mode):
                        nbrs.append(other)
            nbrs.sort(key=order.__getitem__)
            adj[mp] = nbrs
        self.adj = adj

    def __getitem__(self, mp: Mapping) -> list[Mapping]:
        return self.adj[mp]

    def layers(self, seed: Mapping) -> list[list[Mapping]]:
        """Breadth-first frontiers starting at ``seed`` (``seed`` alone is layer 0)."""
        if seed not in self.adj:
            raise KeyError(f"mapping {seed} is not in the mapping set")
        seen = {seed}
        frontier = [seed]
        out = []
        while frontier:
            out.append(frontier)
            nxt = []
            for mp in frontier:
                for other in self.adj[mp]:
                    if other not in seen:
                        seen.add(other)
                        nxt.append(other)
            frontier = nxt
        return out

    def path(self, start: Mapping, goal: Mapping) -> list[Mapping] | None:
        if start not in self.adj or goal not in self.adj:
            raise KeyError("both mappings must belong to the mapping set")
        parent: dict[Mapping, Mapping | None] = {start: None}
        queue = [start]
        for mp in queue:
            if mp == goal:
                break
            for other in self.adj[mp]:
                if other not in parent:
                    parent[other] = mp
                    queue.append(other)
        if goal not in parent:
            return None
        walk = [goal]
        while parent[walk[-1]] is not None:
            walk.append(parent[walk[-1]])
        return walk[::-1]


def _lookup(m: MappingSet, mp: Mapping) -> Mapping:
    for candidate in m:
        if candidate.pair == mp.pair:
            return candidate
    raise KeyError(f"mapping {mp} is not in the mapping set")


def find_mapping_segment(
    m1: Mapping, m2: Mapping, m: MappingSet, o1: Ontology, o2: Ontology,
    mode: GraphMode = GraphMode.TYPED,
) -> MappingSegment | None:
    """A shortest mapping segment with ends ``m1`` and ``m2``, if one exists."""
    graph = MappingGraph(m, o1, o2, mode)
    walk = graph.path(_lookup(m, m1), _lookup(m, m2))
    return MappingSegment(tuple(walk)) if walk is not None else None


def bonded_by_segment(
    m1: Mapping, m2: Mapping, m: MappingSet, o1: Ontology, o2: Ontology,
    mode: GraphMode = GraphMode.TYPED,
) -> bool:
    return find_mapping_segment(m1, m2, m, o1, o2, mode) is not None


# ------------------------------------------------------ equivalence classes


@dataclass(frozen=True)
class EquivalenceClass:
    """One bonding class; ``members`` are in canonical mapping order."""

    members: tuple[Mapping, ...]
    rank: int = 0
    layers: tuple[tuple[Mapping, ...], ...] = field(default=(), compare=False, repr=False)

    @property
    def representative(self) -> Mapping:
        return self.members[0]

    def pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(mp.pair for mp in self.members)

    def __contains__(self, mp: object) -> bool:
        return mp in self.members

    def __len__(self) -> int:
        return len(self.members)


def _make_class(layers: list[list[Mapping]], m: MappingSet) -> EquivalenceClass:
    order = {mp: i for i, mp in enumerate(m)}
    members = sorted((mp for layer in layers for mp in layer), key=order.__getitem__)
    return EquivalenceClass(tuple(members), len(layers), tuple(tuple(layer) for layer in layers))


def ecf(
    seed: Mapping, m: MappingSet, o1: Ontology, o2: Ontology,
    mode: GraphMode = GraphMode.TYPED, graph: MappingGraph | None = None,
) -> tuple[EquivalenceClass, int]:
    """Expand ``seed`` layer by layer into its bonding class.

    Layer 0 is ``{seed}``; layer n holds the mappings adjacent to layer n-1
    that no earlier layer contains.  The rank is the index of the first empty
    layer, so an isolated mapping has rank 1.
    """
    graph = graph or MappingGraph(m, o1, o2, mode)
    layers = graph.layers(_lookup(m, seed))
    cls = _make_class(layers, m)
    return cls, cls.rank


@dataclass(frozen=True)
class ClassPartition:
    classes: tuple[EquivalenceClass, ...] = ()

    def __iter__(self) -> Iterator[EquivalenceClass]:
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, mp: Mapping) -> EquivalenceClass:
        for cls in self.classes:
            if any(member.pair == mp.pair for member in cls.members):
                return cls
        raise KeyError(f"mapping {mp} is not partitioned here")

    def as_pair_sets(self) -> frozenset[frozenset[tuple[str, str]]]:
        return frozenset(cls.pairs() for cls in self.classes)


def equivalence_classes(
    m: MappingSet, o1: Ontology, o2: Ontology, mode: GraphMode = GraphMode.TYPED
) -> ClassPartition:
    if not m.is_injective():
        raise ValueError("equivalence classes need an injective mapping set")
    graph = MappingGraph(m, o1, o2, mode)
    visited: set[Mapping] = set()
    classes = []
    for seed in m:
        if seed in visited:
            continue
        cls, _ = ecf(seed, m, o1, o2, mode, graph=graph)
        visited.update(cls.members)
        classes.append(cls)
    return ClassPartition(tuple(classes))


# ---------------------------------------------------------- subgraph pairs


@dataclass(frozen=True)
class SubOntology:
    concepts: frozenset[str] = frozenset()
    edges: frozenset[ConceptRelationship] = frozenset()

    def __le__(self, other: SubOntology) -> bool:
        return self.concepts <= other.concepts and self.edges <= other.edges

    def to_dict(self) -> dict:
        return {
            "concepts": sorted(self.concepts),
            "edges": [[e.source, e.target, e.rel_type.value] for e in sorted(self.edges, key=ConceptRelationship.key)],
        }


@dataclass(frozen=True)
class SubgraphPair:
    left: SubOntology
    right: SubOntology
    correspondence: frozenset[tuple[str, str]]

    def __le__(self, other: SubgraphPair) -> bool:
        return self.left <= other.left and self.right <= other.right

    def __lt__(self, other: SubgraphPair) -> bool:
        return self <= other and self != other

    def is_isomorphic(self, mode: GraphMode = GraphMode.TYPED) -> bool:
        f = dict(self.correspondence)
        if len(f) != len(self.correspondence) or len(set(f.values())) != len(f):
            return False
        if set(f) != set(self.left.concepts) or set(f.values()) != set(self.right.concepts):
            return False
        if mode is GraphMode.PLAIN:
            image = {frozenset((f[e.source], f[e.target])) for e in self.left.edges}
            return image == {frozenset((e.source, e.target)) for e in self.right.edges}
        image = {(f[e.source], f[e.target], e.rel_type) for e in self.left.edges}
        return image == {(e.source, e.target, e.rel_type) for e in self.right.edges}

    def to_dict(self) -> dict:
        return {
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
            "correspondence": [list(p) for p in sorted(self.correspondence)],
        }


def matched_edges(
    pairs: Iterable[tuple[str, str]], o1: Ontology, o2: Ontology, mode: GraphMode = GraphMode.TYPED
) -> tuple[frozenset[ConceptRelationship], frozenset[ConceptRelationship]]:
    """Edges on each side whose endpoints are both mapped and whose image exists."""
    f = dict(pairs)
    g = {y: x for x, y in f.items()}
    if mode is GraphMode.PLAIN:
        left = {e for e in o1.relationships if e.source in f and e.target in f
                and o2.adjacent(f[e.source], f[e.target])}
        right = {e for e in o2.relationships if e.source in g and e.target in g
                 and o1.adjacent(g[e.source], g[e.target])}
        return frozenset(left), frozenset(right)
    left, right = set(), set()
    for e in o1.relationships:
        if e.source in f and e.target in f:
            image = ConceptRelationship(f[e.source], f[e.target], e.rel_type)
            if (e.rel_type, True) in o2.link(image.source, image.target):
                left.add(e)
                right.add(image)
    return frozenset(left), frozenset(right)


def subgraph_pair(
    pairs: Iterable[tuple[str, str]], o1: Ontology, o2: Ontology, mode: GraphMode = GraphMode.TYPED
) -> SubgraphPair:
    pairs = frozenset(pairs)
    left_edges, right_edges = matched_edges(pairs, o1, o2, mode)
    return SubgraphPair(
        SubOntology(frozenset(x for x, _ in pairs), left_edges),
        SubOntology(frozenset(y for _, y in pairs), right_edges),
        pairs,
    )


def to_max_subgraphs(
    p: ClassPartition, o1: Ontology, o2: Ontology, mode: GraphMode = GraphMode.TYPED
) -> tuple[SubgraphPair, ...]:
    """One isomorphic subgraph pair per class, in partition order."""
    return tuple(subgraph_pair(cls.pairs(), o1, o2, mode) for cls in p)
