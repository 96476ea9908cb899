"""Consistency rules over a mapping set and the repair loop that applies them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping as TMapping

from .matcher import Mapping, MappingSet
from .ontology import Ontology, RelationType


class RuleId(Enum):
    CYCLE = "Cycle"
    REDUNDANT_SUBSUMPTION = "RedundantSubsumption"
    MULTIPLE_CORRESPONDENCE = "MultipleCorrespondence"


class Severity(Enum):
    REJECT = "Reject"
    WARN = "Warn"


@dataclass(frozen=True)
class ValidationRule:
    id: RuleId
    severity: Severity


def default_rules(strict: bool = False) -> dict[RuleId, Severity]:
    return {
        RuleId.MULTIPLE_CORRESPONDENCE: Severity.REJECT,
        RuleId.CYCLE: Severity.REJECT,
        RuleId.REDUNDANT_SUBSUMPTION: Severity.REJECT if strict else Severity.WARN,
    }


# injectivity goes first: the other detectors assume it
RULE_ORDER = (RuleId.MULTIPLE_CORRESPONDENCE, RuleId.CYCLE, RuleId.REDUNDANT_SUBSUMPTION)


@dataclass(frozen=True)
class Violation:
    rule_id: RuleId
    involved: tuple[Mapping, ...]
    explanation: str
    dropped: Mapping | None = None
    severity: Severity = Severity.REJECT

    def __post_init__(self) -> None:
        if not self.involved:
            raise ValueError("a violation must involve at least one mapping")

    def resolved(self, dropped: Mapping | None, severity: Severity) -> Violation:
        return Violation(self.rule_id, self.involved, self.explanation, dropped, severity)

    def to_dict(self) -> dict:
        return {
            "rule": self.rule_id.value,
            "severity": self.severity.value,
            "involved": [m.to_dict() for m in self.involved],
            "explanation": self.explanation,
            "resolution": (
                {"kind": "DroppedMapping", "mapping": self.dropped.to_dict()}
                if self.dropped is not None else {"kind": "None"}
            ),
        }


@dataclass(frozen=True)
class ValidatedMappings:
    accepted: MappingSet
    violations: tuple[Violation, ...] = ()
    rejected: tuple[Mapping, ...] = field(default=())

    @property
    def warnings(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.severity is Severity.WARN)


# ------------------------------------------------------------ subsumption


def _inheritance_parents(o: Ontology) -> dict[str, list[str]]:
    parents: dict[str, list[str]] = {label: [] for label in o.labels}
    for r in o.relationships:
        if r.rel_type is RelationType.INHERITANCE:
            parents[r.source].append(r.target)
    return parents


def _ancestors(o: Ontology) -> dict[str, frozenset[str]]:
    """Every concept's strict (possibly indirect) superclasses."""
    parents = _inheritance_parents(o)
    out = {}
    for start in parents:
        seen: set[str] = set()
        queue = deque(parents[start])
        while queue:
            x = queue.popleft()
            if x not in seen:
                seen.add(x)
                queue.extend(parents[x])
        out[start] = frozenset(seen)
    return out


def subsumes(o: Ontology, x: str, y: str) -> bool:
    """True iff ``x`` is a direct or indirect subclass of ``y``."""
    o.require(x, y)
    if x == y:
        return False
    parents = _inheritance_parents(o)
    seen = {x}
    queue = deque(parents[x])
    while queue:
        z = queue.popleft()
        if z == y:
            return True
        if z not in seen:
            seen.add(z)
            queue.extend(parents[z])
    return False


def _direct(o: Ontology, x: str, y: str) -> bool:
    return (RelationType.INHERITANCE, True) in o.link(x, y)


# -------------------------------------------------------------- detectors


def detect_multiple_correspondence(m: MappingSet) -> list[Violation]:
    out = []
    mappings = list(m)
    for i, a in enumerate(mappings):
        for b in mappings[i + 1 :]:
            if a.left == b.left:
                out.append(Violation(RuleId.MULTIPLE_CORRESPONDENCE, (a, b),
                                     f"{a.left!r} is mapped to both {a.right!r} and {b.right!r}"))
            elif a.right == b.right:
                out.append(Violation(RuleId.MULTIPLE_CORRESPONDENCE, (a, b),
                                     f"{a.right!r} is mapped from both {a.left!r} and {b.left!r}"))
    return out


def _shortest_mixed_cycle(m: MappingSet, anc1, anc2) -> list[Mapping] | None:
    # mapping-level digraph: p -> q when p sits below q on either side
    mappings = list(m)
    succ = {
        p: [q for q in mappings if q != p and (q.left in anc1[p.left] or q.right in anc2[p.right])]
        for p in mappings
    }
    for start in mappings:
        parent: dict[Mapping, Mapping] = {}
        queue = deque([start])
        seen = {start}
        while queue:
            p = queue.popleft()
            for q in succ[p]:
                if q == start:
                    walk = [p]
                    while walk[-1] != start:
                        walk.append(parent[walk[-1]])
                    return walk[::-1]
                if q not in seen:
                    seen.add(q)
                    parent[q] = p
                    queue.append(q)
    return None


def detect_cycles(m: MappingSet, o1: Ontology, o2: Ontology) -> list[Violation]:
    """Mapping pairs that would close a loop in the merged class hierarchy.

    The two-mapping pattern is reported pair by pair.  When no such pair
    exists but the merged hierarchy still loops through three or more
    mappings, the shortest such loop is reported as a single violation.
    """
    anc1, anc2 = _ancestors(o1), _ancestors(o2)
    out = []
    mappings = list(m)
    for i, p in enumerate(mappings):
        for q in mappings[i + 1 :]:
            for a, b in ((p, q), (q, p)):
                # a.left below b.left on the left, b.right below a.right on the right
                if b.left in anc1[a.left] and a.right in anc2[b.right]:
                    out.append(Violation(
                        RuleId.CYCLE, (p, q),
                        f"{a.left!r} is below {b.left!r} in {o1.id!r} but {b.right!r} is below "
                        f"{a.right!r} in {o2.id!r}",
                    ))
                    break
    if out:
        return out
    loop = _shortest_mixed_cycle(m, anc1, anc2)
    if loop:
        names = " -> ".join(str(x) for x in loop + [loop[0]])
        out.append(Violation(RuleId.CYCLE, tuple(loop), f"merged hierarchy loops through {names}"))
    return out


def detect_redundant_subsumption(m: MappingSet, o1: Ontology, o2: Ontology) -> list[Violation]:
    """Direct inheritance on one side that the other side only implies indirectly.

    Checked in both directions: a direct edge in ``o1`` against an indirect
    path in ``o2``, and the mirror case.
    """
    anc1, anc2 = _ancestors(o1), _ancestors(o2)
    out = []
    mappings = list(m)
    for i, p in enumerate(mappings):
        for q in mappings[i + 1 :]:
            for sup, sub in ((p, q), (q, p)):
                if _direct(o1, sub.left, sup.left) and sup.right in anc2[sub.right] \
                        and not _direct(o2, sub.right, sup.right):
                    side = (o1.id, o2.id)
                elif _direct(o2, sub.right, sup.right) and sup.left in anc1[sub.left] \
                        and not _direct(o1, sub.left, sup.left):
                    side = (o2.id, o1.id)
                else:
                    continue
                out.append(Violation(
                    RuleId.REDUNDANT_SUBSUMPTION, (sup, sub),
                    f"{sub} is a direct subclass of {sup} in {side[0]!r} but only an indirect "
                    f"one in {side[1]!r}",
                    severity=Severity.WARN,
                ))
                break
    return out


def _detect(rule: RuleId, m: MappingSet, o1: Ontology, o2: Ontology) -> list[Violation]:
    if rule is RuleId.MULTIPLE_CORRESPONDENCE:
        return detect_multiple_correspondence(m)
    if rule is RuleId.CYCLE:
        return detect_cycles(m, o1, o2)
    return detect_redundant_subsumption(m, o1, o2)


def _weakest(involved: Iterable[Mapping]) -> Mapping:
    # lowest score; on ties the left label sorting last, then the right label
    return max(involved, key=lambda mp: (-mp.score, mp.left, mp.right))


def validate(
    m: MappingSet, o1: Ontology, o2: Ontology,
    rules: TMapping[RuleId, Severity] | Iterable[ValidationRule] | None = None,
) -> ValidatedMappings:
    """Repair ``m`` against the active rules.

    Reject rules drop the weakest mapping of the first violation found and
    re-run detection until nothing fires.  Warn rules are evaluated once on
    the surviving set and only reported.
    """
    if rules is None:
        rules = default_rules()
    elif not isinstance(rules, TMapping):
        active: dict[RuleId, Severity] = {}
        for r in rules:
            if r.id in active:
                raise ValueError(f"rule {r.id.value} appears twice")
            active[r.id] = r.severity
        rules = active
    reject = [r for r in RULE_ORDER if rules.get(r) is Severity.REJECT]
    warn = [r for r in RULE_ORDER if rules.get(r) is Severity.WARN]

    current = m
    violations: list[Violation] = []
    dropped: list[Mapping] = []
    while True:
        for rule in reject:
            found = _detect(rule, current, o1, o2)
            if found:
                v = found[0]
                victim = _weakest(v.involved)
                violations.append(v.resolved(victim, Severity.REJECT))
                dropped.append(victim)
                current = current.without(victim)
                break
        else:
            break
    for rule in warn:
        violations.extend(v.resolved(None, Severity.WARN) for v in _detect(rule, current, o1, o2))
    return ValidatedMappings(current, tuple(violations), tuple(dropped))
