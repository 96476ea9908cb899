"""Typed-graph view of a class diagram: concepts, relationships, relation types."""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .diagram import ClassDiagram, RelationKind
from .errors import DiagramError, UnknownConceptError

# Relation types are the UML relationship kinds, one-for-one.
RelationType = RelationKind
ALL_RELATION_TYPES: frozenset[RelationType] = frozenset(RelationKind)


@dataclass(frozen=True)
class Concept:
    label: str
    attributes: tuple[tuple[str, str], ...] = ()
    properties: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("concept label must be non-empty")


@dataclass(frozen=True)
class ConceptRelationship:
    source: str
    target: str
    rel_type: RelationType

    def key(self) -> tuple[str, str, str]:
        return (self.source, self.target, self.rel_type.value)


@dataclass(frozen=True, eq=False)
class Ontology:
    """The tuple (concepts, relationships, types) as a typed directed graph.

    ``links`` indexes every relationship by its unordered endpoints: for an
    edge ``(x, y, t)`` the key ``(x, y)`` holds ``(t, True)`` and the key
    ``(y, x)`` holds ``(t, False)``.  The boolean says whether the edge runs
    in the direction of the key.
    """

    id: str
    concepts: tuple[Concept, ...] = ()
    relationships: tuple[ConceptRelationship, ...] = ()
    types: frozenset[RelationType] = ALL_RELATION_TYPES
    _index: dict[str, Concept] = field(init=False, repr=False)
    links: dict[tuple[str, str], frozenset[tuple[RelationType, bool]]] = field(init=False, repr=False)
    neighbours: dict[str, tuple[str, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "concepts", tuple(self.concepts))
        object.__setattr__(self, "relationships", tuple(self.relationships))
        object.__setattr__(self, "types", frozenset(self.types))
        index: dict[str, Concept] = {}
        for c in self.concepts:
            if c.label in index:
                raise DiagramError(f"ontology {self.id!r}: duplicate concept {c.label!r}")
            index[c.label] = c
        links: dict[tuple[str, str], set[tuple[RelationType, bool]]] = defaultdict(set)
        seen: set[ConceptRelationship] = set()
        for r in self.relationships:
            if r.source not in index or r.target not in index:
                missing = r.source if r.source not in index else r.target
                raise UnknownConceptError(missing, f"ontology {self.id!r}")
            if r.rel_type not in self.types:
                raise DiagramError(f"ontology {self.id!r}: relation type {r.rel_type} not declared")
            if r in seen:
                raise DiagramError(f"ontology {self.id!r}: duplicate relationship {r.key()}")
            seen.add(r)
            links[(r.source, r.target)].add((r.rel_type, True))
            links[(r.target, r.source)].add((r.rel_type, False))
        nbrs: dict[str, list[str]] = {c.label: [] for c in self.concepts}
        for x, y in links:
            if x != y:
                nbrs[x].append(y)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "links", {k: frozenset(v) for k, v in links.items()})
        object.__setattr__(self, "neighbours", {k: tuple(sorted(v)) for k, v in nbrs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ontology):
            return NotImplemented
        return (
            self.id == other.id
            and frozenset(self.concepts) == frozenset(other.concepts)
            and frozenset(self.relationships) == frozenset(other.relationships)
            and self.types == other.types
        )

    def __hash__(self) -> int:
        return hash((self.id, frozenset(self.concepts), frozenset(self.relationships)))

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def concept(self, label: str) -> Concept:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownConceptError(label, f"ontology {self.id!r}") from None

    def require(self, *labels: str) -> None:
        for label in labels:
            if label not in self._index:
                raise UnknownConceptError(label, f"ontology {self.id!r}")

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.concepts]

    @property
    def used_types(self) -> frozenset[RelationType]:
        """Relation types that actually occur on some relationship."""
        return frozenset(r.rel_type for r in self.relationships)

    def link(self, x: str, y: str) -> frozenset[tuple[RelationType, bool]]:
        return self.links.get((x, y), frozenset())

    def adjacent(self, x: str, y: str) -> bool:
        return (x, y) in self.links


def transform_diagram(d: ClassDiagram) -> Ontology:
    concepts = [Concept(c.name, c.attributes, c.operations) for c in d.classes]
    rels = [ConceptRelationship(r.source, r.target, r.kind) for r in d.relationships]
    return Ontology(d.name, tuple(concepts), tuple(rels))


def transform_all(diagrams: Iterable[ClassDiagram], workers: int | None = None) -> list[Ontology]:
    """Transform every diagram; the result is ordered by diagram name."""
    diagrams = list(diagrams)
    names = [d.name for d in diagrams]
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise DiagramError(f"duplicate diagram name(s): {', '.join(dupes)}")
    ordered = sorted(diagrams, key=lambda d: d.name)
    if workers and workers > 1 and len(ordered) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(transform_diagram, ordered))
    return [transform_diagram(d) for d in ordered]
