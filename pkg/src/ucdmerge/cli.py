"""Command line entry point.

    ucdmerge integrate --left a.ucd --right b.ucd [--more c.ucd ...] [--lexicon syn.tsv]
                       [--threshold 0.8] [--strict] [--plain-graph]
                       [--config cfg.json] [--mappings report.json]
                       --out merged.ucd --report report.json
    ucdmerge verify --left a.ucd --right b.ucd [--lexicon syn.tsv] [--cap 16]

Exit status: 0 on success, 1 when the inputs cannot be reconciled (strict
mode with warnings, imported mappings naming unknown classes, oracle
disagreement), 2 on I/O, parse or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .diagram import load_diagram, serialize_diagram
from .errors import ConfigError, OracleCapExceeded, UcdMergeError, UnknownConceptError
from .matcher import Combiner, Lexicon, SimilarityConfig, load_lexicon
from .merger import AttributeMerge, ConflictCatalog, HomonymPolicy, SynonymPolicy
from .oracle import DEFAULT_CAP, oracle_max_subgraphs
from .pipeline import PipelineConfig, build_report, dump_report, integrate_all, read_mappings
from .segments import GraphMode
from .validator import RuleId, Severity

EXIT_OK, EXIT_REJECTED, EXIT_INPUT = 0, 1, 2


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return doc


def make_config(args: argparse.Namespace) -> PipelineConfig:
    """Flags win over the config file, which wins over built-in defaults."""
    file_cfg = _load_config_file(getattr(args, "config", None))

    def pick(flag, key, default=None):
        value = getattr(args, flag, None)
        if value is not None and value is not False:
            return value
        return file_cfg.get(key, default)

    inputs = [args.left, args.right, *(getattr(args, "more", None) or [])]
    try:
        similarity = SimilarityConfig(
            threshold=float(pick("threshold", "threshold", 0.8)),
            weights=file_cfg.get("weights", {"edit": 1.0, "trigram": 1.0, "synonym": 1.0}),
            combiner=Combiner(file_cfg.get("combiner", Combiner.MAX.value)),
        )
        strict = bool(pick("strict", "strict", False))
        rules = None
        if "rules" in file_cfg:
            rules = {RuleId(k): Severity(v) for k, v in file_cfg["rules"].items()}
            if strict and RuleId.REDUNDANT_SUBSUMPTION in rules:
                rules[RuleId.REDUNDANT_SUBSUMPTION] = Severity.REJECT
        cat = file_cfg.get("catalog", {})
        catalog = ConflictCatalog(
            HomonymPolicy(cat.get("homonymPolicy", HomonymPolicy.QUALIFY_WITH_DIAGRAM_NAME.value)),
            SynonymPolicy(cat.get("synonymPolicy", SynonymPolicy.KEEP_LEFT_LABEL.value)),
            AttributeMerge(cat.get("attributeMerge", AttributeMerge.UNION_BY_NAME.value)),
        )
        plain = getattr(args, "plain_graph", False) or file_cfg.get("graphMode") == GraphMode.PLAIN.value
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    return PipelineConfig(
        inputs=tuple(inputs),
        lexicon_path=pick("lexicon", "lexicon"),
        similarity=similarity,
        rules=rules,
        catalog=catalog,
        out_path=pick("out", "out"),
        report_path=pick("report", "report"),
        strict=strict,
        graph_mode=GraphMode.PLAIN if plain else GraphMode.TYPED,
        mappings_path=pick("mappings", "mappings"),
    )


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def run_pipeline(cfg: PipelineConfig) -> int:
    timings: dict[str, float] = {}
    errors: list[str] = []
    steps = []
    status = EXIT_OK
    try:
        t = time.perf_counter()
        diagrams = [load_diagram(p) for p in cfg.inputs]
        lex = load_lexicon(cfg.lexicon_path) if cfg.lexicon_path else Lexicon()
        imported = read_mappings(Path(cfg.mappings_path).read_text(encoding="utf-8")) if cfg.mappings_path else {}
        timings["load"] = time.perf_counter() - t
        names = [d.name for d in diagrams]
        if len(set(names)) != len(names):
            raise ConfigError(f"input diagrams must have distinct names, got {names}")
        steps = integrate_all(diagrams, lex, cfg, imported, timings)
    except UnknownConceptError as exc:
        errors.append(f"unresolvable mapping: {exc}")
        status = EXIT_REJECTED
    except OSError as exc:
        errors.append(f"{exc.filename or 'input'}: {exc.strerror}")
        status = EXIT_INPUT
    except (UcdMergeError, ValueError, KeyError) as exc:
        errors.append(str(exc))
        status = EXIT_INPUT

    if status == EXIT_OK and cfg.strict:
        warned = [v for s in steps for v in s.validated.warnings]
        if warned:
            errors.append(f"strict mode: {len(warned)} warning(s) raised by validation")
            status = EXIT_REJECTED

    if status == EXIT_OK and cfg.out_path:
        try:
            _write(cfg.out_path, serialize_diagram(steps[-1].model.diagram))
        except OSError as exc:
            errors.append(f"{cfg.out_path}: {exc.strerror}")
            status = EXIT_INPUT

    if cfg.report_path:
        report = build_report(steps, cfg, timings, errors)
        try:
            _write(cfg.report_path, dump_report(report))
        except OSError as exc:
            errors.append(f"{cfg.report_path}: {exc.strerror}")
            status = EXIT_INPUT
    for e in errors:
        print(f"ucdmerge: {e}", file=sys.stderr)
    return status


def run_verify(cfg: PipelineConfig, cap: int) -> int:
    try:
        diagrams = [load_diagram(p) for p in cfg.inputs[:2]]
        lex = load_lexicon(cfg.lexicon_path) if cfg.lexicon_path else Lexicon()
        (step,) = integrate_all(diagrams, lex, cfg)
        expected = oracle_max_subgraphs(step.left, step.right, step.validated.accepted, cfg.graph_mode, cap)
    except OSError as exc:
        print(f"ucdmerge: {exc.filename or 'input'}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except OracleCapExceeded as exc:
        print(f"ucdmerge: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UcdMergeError, ValueError) as exc:
        print(f"ucdmerge: {exc}", file=sys.stderr)
        return EXIT_INPUT

    got = frozenset(step.subgraphs)
    for cls, sp in zip(step.partition, step.subgraphs):
        mark = "ok" if sp in expected else "MISSING FROM ORACLE"
        members = ", ".join(f"({mp.left}, {mp.right})" for mp in cls.members)
        print(f"class rank={cls.rank} size={len(cls)} [{mark}]: {members}")
    extra = expected - got
    for sp in sorted(extra, key=lambda s: sorted(s.correspondence)):
        print(f"oracle-only maximal pair: {sorted(sp.correspondence)}")
    agree = got == expected and len(step.subgraphs) == len(got)
    print(f"{len(got)} segment classes, {len(expected)} oracle maximal pairs: {'agree' if agree else 'DISAGREE'}")
    return EXIT_OK if agree else EXIT_REJECTED


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--left", required=True, help="left .ucd diagram")
    p.add_argument("--right", required=True, help="right .ucd diagram")
    p.add_argument("--lexicon", help="tab-separated synonym pairs")
    p.add_argument("--threshold", type=float, help="similarity threshold in (0, 1] (default 0.8)")
    p.add_argument("--plain-graph", action="store_true", help="ignore relation types and directions")
    p.add_argument("--config", help="JSON config file; flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ucdmerge", description="Integrate UML class diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("integrate", help="match, validate and merge diagrams")
    _add_common(p)
    p.add_argument("--more", nargs="+", default=[], help="further diagrams, folded in order")
    p.add_argument("--strict", action="store_true", help="treat validation warnings as failures")
    p.add_argument("--mappings", help="reuse accepted mappings from an earlier report")
    p.add_argument("--out", help="merged .ucd output")
    p.add_argument("--report", help="JSON report output")

    v = sub.add_parser("verify", help="cross-check segment classes against the brute-force oracle")
    _add_common(v)
    v.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum mappings for the oracle")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
    except ConfigError as exc:
        print(f"ucdmerge: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "verify":
        return run_verify(cfg, args.cap)
    return run_pipeline(cfg)


if __name__ == "__main__":
    sys.exit(main())
