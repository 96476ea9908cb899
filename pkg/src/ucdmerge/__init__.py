"""Semantic integration of UML class diagrams through typed-graph alignment."""

from .diagram import ClassDiagram, RelationKind, UmlClass, UmlRelationship, parse_diagram, serialize_diagram
from .matcher import Lexicon, Mapping, MappingSet, SimilarityConfig, match_ontologies
from .merger import ConflictCatalog, IntegratedModel, integrate, integrate_n
from .ontology import Concept, ConceptRelationship, Ontology, transform_all, transform_diagram
from .segments import ClassPartition, GraphMode, SubgraphPair, ecf, equivalence_classes, to_max_subgraphs
from .validator import ValidatedMappings, validate

__all__ = [
    "ClassDiagram", "RelationKind", "UmlClass", "UmlRelationship", "parse_diagram", "serialize_diagram",
    "Lexicon", "Mapping", "MappingSet", "SimilarityConfig", "match_ontologies",
    "ConflictCatalog", "IntegratedModel", "integrate", "integrate_n",
    "Concept", "ConceptRelationship", "Ontology", "transform_all", "transform_diagram",
    "ClassPartition", "GraphMode", "SubgraphPair", "ecf", "equivalence_classes", "to_max_subgraphs",
    "ValidatedMappings", "validate",
]
