"""Binary and n-ary integration of class diagrams under a validated mapping set."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .diagram import ClassDiagram, UmlClass, UmlRelationship
from .errors import UnknownConceptError
from .matcher import Mapping, MappingSet
from .validator import ValidatedMappings

LEFT, RIGHT = "left", "right"


class HomonymPolicy(Enum):
    QUALIFY_WITH_DIAGRAM_NAME = "QualifyWithDiagramName"


class SynonymPolicy(Enum):
    KEEP_LEFT_LABEL = "KeepLeftLabel"
    KEEP_RIGHT_LABEL = "KeepRightLabel"


class AttributeMerge(Enum):
    UNION_BY_NAME = "UnionByName"


@dataclass(frozen=True)
class ConflictCatalog:
    homonym_policy: HomonymPolicy = HomonymPolicy.QUALIFY_WITH_DIAGRAM_NAME
    synonym_policy: SynonymPolicy = SynonymPolicy.KEEP_LEFT_LABEL
    attribute_merge: AttributeMerge = AttributeMerge.UNION_BY_NAME

    def to_dict(self) -> dict:
        return {
            "homonymPolicy": self.homonym_policy.value,
            "synonymPolicy": self.synonym_policy.value,
            "attributeMerge": self.attribute_merge.value,
        }


class ActionKind(Enum):
    UNIFIED_SYNONYMS = "UnifiedSynonyms"
    RENAMED_HOMONYM = "RenamedHomonym"
    COPIED_UNMAPPED = "CopiedUnmapped"
    # warnings raised while merging; nothing is dropped for them
    ATTRIBUTE_TYPE_CLASH = "AttributeTypeClash"
    CONFLICTING_RELATION_KINDS = "ConflictingRelationKinds"


@dataclass(frozen=True)
class ResolutionAction:
    kind: ActionKind
    subjects: tuple[str, ...]
    result: str
    note: str = ""

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "subjects": list(self.subjects), "result": self.result}
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class IntegratedModel:
    diagram: ClassDiagram
    provenance: dict[str, frozenset[str]] = field(default_factory=dict)
    actions: tuple[ResolutionAction, ...] = ()


def _accepted(cov: ValidatedMappings | MappingSet) -> MappingSet:
    return cov.accepted if isinstance(cov, ValidatedMappings) else cov


def _merge_attributes(left: UmlClass, right: UmlClass, label: str, actions: list) -> tuple:
    merged = list(left.attributes)
    types = dict(left.attributes)
    for name, typ in right.attributes:
        if name not in types:
            merged.append((name, typ))
            types[name] = typ
        elif types[name] != typ:
            actions.append(ResolutionAction(
                ActionKind.ATTRIBUTE_TYPE_CLASH, (left.name, right.name), label,
                f"attribute {name!r}: kept {types[name]!r}, dropped {typ!r}",
            ))
    return tuple(merged)


def _merge_operations(left: UmlClass, right: UmlClass) -> tuple[str, ...]:
    ops = list(left.operations)
    ops.extend(op for op in right.operations if op not in left.operations)
    return tuple(ops)


def _unique(label: str, taken: set[str]) -> str:
    if label not in taken:
        return label
    n = 2
    while f"{label}~{n}" in taken:
        n += 1
    return f"{label}~{n}"


def integrate(
    bc1: ClassDiagram, bc2: ClassDiagram,
    cov: ValidatedMappings | MappingSet, cat: ConflictCatalog | None = None,
) -> IntegratedModel:
    cat = cat or ConflictCatalog()
    accepted = list(_accepted(cov))
    for mp in accepted:
        if mp.left not in bc1:
            raise UnknownConceptError(mp.left, f"diagram {bc1.name!r}")
        if mp.right not in bc2:
            raise UnknownConceptError(mp.right, f"diagram {bc2.name!r}")
    l2r = {mp.left: mp.right for mp in accepted}
    r2l = {mp.right: mp.left for mp in accepted}
    if len(l2r) != len(accepted) or len(r2l) != len(accepted):
        raise ValueError("integration needs an injective mapping set")

    keep_left = cat.synonym_policy is SynonymPolicy.KEEP_LEFT_LABEL
    # output nodes in order: left classes (unified in place), then unmapped right classes
    nodes: list[tuple[str, str | None, str | None]] = []  # (wanted label, left name, right name)
    for c in bc1.classes:
        if c.name in l2r:
            nodes.append((c.name if keep_left else l2r[c.name], c.name, l2r[c.name]))
        else:
            nodes.append((c.name, c.name, None))
    for c in bc2.classes:
        if c.name not in r2l:
            nodes.append((c.name, None, c.name))

    counts = Counter(wanted for wanted, _, _ in nodes)
    unified_labels = {wanted for wanted, l, r in nodes if l is not None and r is not None}
    taken = {wanted for wanted, _, _ in nodes if counts[wanted] == 1 or wanted in unified_labels}

    actions: list[ResolutionAction] = []
    classes: list[UmlClass] = []
    provenance: dict[str, frozenset[str]] = {}
    rename_left: dict[str, str] = {}
    rename_right: dict[str, str] = {}

    for wanted, lname, rname in nodes:
        if lname is not None and rname is not None:
            label = wanted
            lc, rc = bc1.get(lname), bc2.get(rname)
            attrs = _merge_attributes(lc, rc, label, actions)
            classes.append(UmlClass(label, attrs, _merge_operations(lc, rc)))
            actions.append(ResolutionAction(
                ActionKind.UNIFIED_SYNONYMS, (lname, rname), label,
                f"alias {(rname if keep_left else lname)!r}",
            ))
            provenance[label] = frozenset((LEFT, RIGHT))
            rename_left[lname], rename_right[rname] = label, label
            continue
        name = lname if lname is not None else rname
        origin, diagram = (LEFT, bc1) if lname is not None else (RIGHT, bc2)
        if counts[wanted] > 1:
            # homonym: equal labels that were not mapped together
            label = _unique(f"{diagram.name}.{name}", taken)
            taken.add(label)
            actions.append(ResolutionAction(ActionKind.RENAMED_HOMONYM, (name,), label,
                                            f"from {diagram.name!r}"))
        else:
            label = name
        actions.append(ResolutionAction(ActionKind.COPIED_UNMAPPED, (name,), label, f"from {diagram.name!r}"))
        src = diagram.get(name)
        classes.append(UmlClass(label, src.attributes, src.operations))
        provenance[label] = frozenset((origin,))
        (rename_left if origin == LEFT else rename_right)[name] = label

    rels: list[UmlRelationship] = []
    seen: set[UmlRelationship] = set()
    for diagram, rename in ((bc1, rename_left), (bc2, rename_right)):
        for r in diagram.relationships:
            nr = UmlRelationship(rename[r.source], rename[r.target], r.kind)
            if nr not in seen:
                seen.add(nr)
                rels.append(nr)

    kinds: dict[frozenset[str], set] = {}
    for r in rels:
        kinds.setdefault(frozenset((r.source, r.target)), set()).add(r.kind)
    for ends, ks in sorted(kinds.items(), key=lambda kv: sorted(kv[0])):
        if len(ks) > 1 and all(len(provenance[e]) == 2 for e in ends):
            pair = tuple(sorted(ends))
            actions.append(ResolutionAction(
                ActionKind.CONFLICTING_RELATION_KINDS, pair, pair[0],
                "kept " + ", ".join(sorted(k.value for k in ks)),
            ))

    name = f"{bc1.name}+{bc2.name}"
    return IntegratedModel(ClassDiagram(name, tuple(classes), tuple(rels)), provenance, tuple(actions))


def integrate_n(
    bcs: Sequence[ClassDiagram],
    covs: Sequence[ValidatedMappings | MappingSet],
    cat: ConflictCatalog | None = None,
) -> IntegratedModel:
    """Left fold of :func:`integrate`; ``covs[k]`` relates the running model to ``bcs[k + 1]``."""
    if not bcs:
        raise ValueError("need at least one diagram")
    if len(covs) != len(bcs) - 1:
        raise ValueError(f"expected {len(bcs) - 1} mapping sets, got {len(covs)}")
    first = bcs[0]
    model = IntegratedModel(first, {c.name: frozenset((LEFT,)) for c in first.classes}, ())
    actions: list[ResolutionAction] = []
    for bc, cov in zip(bcs[1:], covs):
        model = integrate(model.diagram, bc, cov, cat)
        actions.extend(model.actions)
    return IntegratedModel(model.diagram, model.provenance, tuple(actions))


def identity_mappings(d: ClassDiagram, other: ClassDiagram | None = None) -> MappingSet:
    """Map every class of ``d`` to the same-named class of ``other`` (default ``d``)."""
    other = other or d
    return MappingSet(d.name, other.name, tuple(Mapping(c.name, c.name) for c in d.classes if c.name in other))
