"""End-to-end integration: transform, match, validate, partition, merge, report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Sequence

from .diagram import ClassDiagram
from .matcher import Lexicon, Mapping, MappingSet, SimilarityConfig, match_ontologies
from .merger import ConflictCatalog, IntegratedModel, integrate
from .ontology import Ontology, transform_diagram
from .segments import ClassPartition, GraphMode, SubgraphPair, equivalence_classes, to_max_subgraphs
from .validator import RuleId, Severity, ValidatedMappings, default_rules, validate


@dataclass(frozen=True)
class PipelineConfig:
    inputs: tuple[str, ...] = ()
    lexicon_path: str | None = None
    similarity: SimilarityConfig = field(default_factory=SimilarityConfig)
    rules: dict[RuleId, Severity] | None = None
    catalog: ConflictCatalog = field(default_factory=ConflictCatalog)
    out_path: str | None = None
    report_path: str | None = None
    strict: bool = False
    graph_mode: GraphMode = GraphMode.TYPED
    mappings_path: str | None = None

    @property
    def active_rules(self) -> dict[RuleId, Severity]:
        return dict(self.rules) if self.rules is not None else default_rules(self.strict)

    def echo(self) -> dict:
        return {
            "inputs": list(self.inputs),
            "lexicon": self.lexicon_path,
            "mappings": self.mappings_path,
            "threshold": self.similarity.threshold,
            "weights": dict(self.similarity.weights),
            "combiner": self.similarity.combiner.value,
            "graphMode": self.graph_mode.value,
            "strict": self.strict,
            "rules": {r.value: s.value for r, s in sorted(self.active_rules.items(), key=lambda kv: kv[0].value)},
            "catalog": self.catalog.to_dict(),
        }


@dataclass
class StepResult:
    """Everything computed while integrating one more diagram."""

    left: Ontology
    right: Ontology
    matched: MappingSet
    validated: ValidatedMappings
    partition: ClassPartition
    subgraphs: tuple[SubgraphPair, ...]
    model: IntegratedModel


def preintegration(
    bc1: ClassDiagram, bc2: ClassDiagram, lex: Lexicon, cfg: PipelineConfig,
    imported: MappingSet | None = None,
) -> ValidatedMappings:
    o1, o2 = transform_diagram(bc1), transform_diagram(bc2)
    m = imported if imported is not None else match_ontologies(o1, o2, cfg.similarity, lex)
    return validate(m, o1, o2, cfg.active_rules)


def _check_imported(m: MappingSet, o1: Ontology, o2: Ontology) -> None:
    for mp in m:
        o1.require(mp.left)
        o2.require(mp.right)


def integrate_all(
    diagrams: Sequence[ClassDiagram], lex: Lexicon, cfg: PipelineConfig,
    imported: dict[int, MappingSet] | None = None,
    timings: dict[str, float] | None = None,
) -> list[StepResult]:
    """Fold the diagrams left to right, recomputing mappings against the running model."""
    imported = imported or {}
    timings = timings if timings is not None else {}

    def clock(stage: str, start: float) -> None:
        timings[stage] = timings.get(stage, 0.0) + (time.perf_counter() - start)

    steps: list[StepResult] = []
    running = diagrams[0]
    for k, nxt in enumerate(diagrams[1:], start=1):
        t = time.perf_counter()
        o1, o2 = transform_diagram(running), transform_diagram(nxt)
        clock("transform", t)

        t = time.perf_counter()
        if k in imported:
            m = MappingSet(o1.id, o2.id, imported[k].mappings)
            _check_imported(m, o1, o2)
        else:
            m = match_ontologies(o1, o2, cfg.similarity, lex)
        clock("match", t)

        t = time.perf_counter()
        cov = validate(m, o1, o2, cfg.active_rules)
        clock("validate", t)

        t = time.perf_counter()
        partition = equivalence_classes(cov.accepted, o1, o2, cfg.graph_mode)
        subgraphs = to_max_subgraphs(partition, o1, o2, cfg.graph_mode)
        clock("segments", t)

        t = time.perf_counter()
        model = integrate(running, nxt, cov, cfg.catalog)
        clock("integrate", t)

        steps.append(StepResult(o1, o2, m, cov, partition, subgraphs, model))
        running = model.diagram
    return steps


# ----------------------------------------------------------------- report


def _pair(mp: Mapping) -> dict:
    return {"left": mp.left, "right": mp.right}


def build_report(
    steps: Sequence[StepResult], cfg: PipelineConfig,
    timings: dict[str, float] | None = None, errors: Sequence[str] = (),
) -> dict:
    mappings, violations, classes, subgraphs, actions = [], [], [], [], []
    for k, step in enumerate(steps, start=1):
        accepted = step.validated.accepted.pairs()
        for mp in step.matched:
            mappings.append({"step": k, **mp.to_dict(), "accepted": mp.pair in accepted})
        for v in step.validated.violations:
            violations.append({"step": k, **v.to_dict()})
        for cls in step.partition:
            classes.append({
                "step": k,
                "rank": cls.rank,
                "representative": _pair(cls.representative),
                "members": [_pair(mp) for mp in cls.members],
            })
        for sp in step.subgraphs:
            subgraphs.append({"step": k, **sp.to_dict()})
        for a in step.model.actions:
            actions.append({"step": k, **a.to_dict()})
    return {
        "mappings": mappings,
        "violations": violations,
        "classes": classes,
        "maxSubgraphs": subgraphs,
        "actions": actions,
        "config": cfg.echo(),
        "timings": {k: round(v, 6) for k, v in sorted((timings or {}).items())},
        "errors": list(errors),
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def read_mappings(text: str) -> dict[int, MappingSet]:
    """Load mapping sets back from a report (or any JSON with a ``mappings`` list).

    Entries flagged ``"accepted": false`` are skipped; entries without a
    ``step`` belong to step 1.
    """
    doc = json.loads(text)
    entries = doc["mappings"] if isinstance(doc, dict) else doc
    by_step: dict[int, list[Mapping]] = {}
    for e in entries:
        if e.get("accepted", True) is False:
            continue
        by_step.setdefault(int(e.get("step", 1)), []).append(Mapping.from_dict(e))
    return {k: MappingSet("", "", tuple(v)) for k, v in by_step.items()}
