"""Label similarity measures and selection of an injective mapping set."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping as TMapping

from .errors import LexiconError
from .ontology import Concept, Ontology


def fold(s: str) -> str:
    """Normalization applied before every label comparison."""
    return unicodedata.normalize("NFC", s).casefold()


# ------------------------------------------------------------- measures


def edit_distance(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def levenshtein_sim(a: str, b: str) -> float:
    a, b = fold(a), fold(b)
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(a, b) / longest


def trigrams(s: str) -> frozenset[str]:
    """Character trigrams of ``s`` padded with two leading blanks and one trailing blank.

    The empty string has no trigrams.
    """
    if not s:
        return frozenset()
    padded = "  " + s + " "
    return frozenset(padded[i : i + 3] for i in range(len(padded) - 2))


def trigram_sim(a: str, b: str) -> float:
    ta, tb = trigrams(fold(a)), trigrams(fold(b))
    if not ta and not tb:
        return 1.0
    return 2 * len(ta & tb) / (len(ta) + len(tb))


@dataclass(frozen=True)
class Lexicon:
    """Declared synonyms, closed under symmetry and transitivity.

    Terms are folded on construction; ``groups`` maps each folded term to the
    sorted tuple of all terms it is synonymous with (itself included).
    """

    groups: TMapping[str, tuple[str, ...]] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> Lexicon:
        parent: dict[str, str] = {}

        def find(x: str) -> str:
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(fold(a)), find(fold(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        members: dict[str, list[str]] = {}
        for term in parent:
            members.setdefault(find(term), []).append(term)
        groups = {}
        for terms in members.values():
            group = tuple(sorted(terms))
            for t in group:
                groups[t] = group
        return cls(groups)

    @property
    def pairs(self) -> frozenset[frozenset[str]]:
        out = set()
        for group in set(self.groups.values()):
            for i, x in enumerate(group):
                for y in group[i + 1 :]:
                    out.add(frozenset((x, y)))
        return frozenset(out)

    def synonymous(self, a: str, b: str) -> bool:
        fa, fb = fold(a), fold(b)
        if fa == fb:
            return True
        group = self.groups.get(fa)
        return group is not None and fb in group

    def __len__(self) -> int:
        return len(self.pairs)


def parse_lexicon(text: str) -> Lexicon:
    pairs = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != 2:
            raise LexiconError("expected exactly two tab-separated terms", lineno)
        a, b = cells[0].strip(), cells[1].strip()
        if not a or not b:
            raise LexiconError("terms must be non-empty", lineno)
        pairs.append((a, b))
    return Lexicon.from_pairs(pairs)


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())


def synonym_sim(a: str, b: str, lex: Lexicon) -> float:
    return 1.0 if lex.synonymous(a, b) else 0.0


# --------------------------------------------------------------- config


class Combiner(Enum):
    MAX = "Max"
    WEIGHTED_AVERAGE = "WeightedAverage"


MEASURES = ("edit", "trigram", "synonym")


@dataclass(frozen=True)
class SimilarityConfig:
    threshold: float = 0.8
    weights: TMapping[str, float] = field(
        default_factory=lambda: {"edit": 1.0, "trigram": 1.0, "synonym": 1.0}
    )
    combiner: Combiner = Combiner.MAX

    def __post_init__(self) -> None:
        if not 0.0 < self.threshold <= 1.0:
            raise ValueError(f"threshold must lie in (0, 1], got {self.threshold}")
        unknown = set(self.weights) - set(MEASURES)
        if unknown:
            raise ValueError(f"unknown similarity measure(s): {sorted(unknown)}")
        for name, w in self.weights.items():
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"weight for {name!r} must lie in [0, 1], got {w}")
        if not any(w > 0 for w in self.weights.values()):
            raise ValueError("at least one similarity weight must be positive")
        object.__setattr__(self, "weights", {m: float(self.weights.get(m, 0.0)) for m in MEASURES})


def _label(x: Concept | str) -> str:
    return x.label if isinstance(x, Concept) else x


def combined_sim(a: Concept | str, b: Concept | str, cfg: SimilarityConfig, lex: Lexicon) -> float:
    """Combine the enabled measures on the two labels.

    ``Max`` takes the best score among measures with a positive weight;
    ``WeightedAverage`` is the weight-normalized sum.
    """
    la, lb = _label(a), _label(b)
    kernels = {
        "edit": lambda: levenshtein_sim(la, lb),
        "trigram": lambda: trigram_sim(la, lb),
        "synonym": lambda: synonym_sim(la, lb, lex),
    }
    enabled = [(m, w) for m, w in cfg.weights.items() if w > 0]
    if cfg.combiner is Combiner.MAX:
        return max(kernels[m]() for m, _ in enabled)
    total = sum(w for _, w in enabled)
    return sum(w * kernels[m]() for m, w in enabled) / total


# -------------------------------------------------------------- mappings


class MappingRelation(Enum):
    EQUIVALENCE = "Equivalence"
    IS_A = "IsA"


@dataclass(frozen=True)
class Mapping:
    left: str
    right: str
    score: float = 1.0
    relation: MappingRelation = MappingRelation.EQUIVALENCE

    @property
    def pair(self) -> tuple[str, str]:
        return (self.left, self.right)

    def order_key(self) -> tuple[float, str, str]:
        return (-self.score, self.left, self.right)

    def to_dict(self) -> dict:
        return {"left": self.left, "right": self.right, "score": self.score, "relation": self.relation.value}

    @classmethod
    def from_dict(cls, d: TMapping) -> Mapping:
        return cls(d["left"], d["right"], float(d.get("score", 1.0)), MappingRelation(d.get("relation", "Equivalence")))

    def __str__(self) -> str:
        return f"({self.left}, {self.right})"


@dataclass(frozen=True)
class MappingSet:
    """Scored correspondences between two ontologies.

    Mappings are kept in a canonical order: descending score, then left
    label, then right label.  At most one mapping per (left, right) pair.
    """

    left_id: str
    right_id: str
    mappings: tuple[Mapping, ...] = ()

    def __post_init__(self) -> None:
        by_pair: dict[tuple[str, str], Mapping] = {}
        for m in self.mappings:
            if m.pair in by_pair and by_pair[m.pair] != m:
                raise ValueError(f"conflicting entries for mapping {m}")
            by_pair[m.pair] = m
        object.__setattr__(self, "mappings", tuple(sorted(by_pair.values(), key=Mapping.order_key)))

    def __iter__(self) -> Iterator[Mapping]:
        return iter(self.mappings)

    def __len__(self) -> int:
        return len(self.mappings)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, Mapping):
            return item in self.mappings
        return any(m.pair == item for m in self.mappings)

    def pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(m.pair for m in self.mappings)

    def is_injective(self) -> bool:
        lefts = [m.left for m in self.mappings]
        rights = [m.right for m in self.mappings]
        return len(set(lefts)) == len(lefts) and len(set(rights)) == len(rights)

    def without(self, *drop: Mapping) -> MappingSet:
        gone = set(drop)
        return MappingSet(self.left_id, self.right_id, tuple(m for m in self.mappings if m not in gone))

    def to_dict(self) -> dict:
        return {
            "left": self.left_id,
            "right": self.right_id,
            "mappings": [m.to_dict() for m in self.mappings],
        }


def score_pairs(o1: Ontology, o2: Ontology, cfg: SimilarityConfig, lex: Lexicon) -> list[Mapping]:
    """Every pair whose combined similarity exceeds the threshold, canonically ordered."""
    out = []
    for a in o1.concepts:
        for b in o2.concepts:
            s = combined_sim(a, b, cfg, lex)
            if s > cfg.threshold:
                out.append(Mapping(a.label, b.label, s))
    out.sort(key=Mapping.order_key)
    return out


def select_injective(candidates: Iterable[Mapping]) -> list[Mapping]:
    used_left: set[str] = set()
    used_right: set[str] = set()
    chosen = []
    for m in sorted(candidates, key=Mapping.order_key):
        if m.left in used_left or m.right in used_right:
            continue
        used_left.add(m.left)
        used_right.add(m.right)
        chosen.append(m)
    return chosen


def match_ontologies(o1: Ontology, o2: Ontology, cfg: SimilarityConfig, lex: Lexicon) -> MappingSet:
    chosen = select_injective(score_pairs(o1, o2, cfg, lex))
    return MappingSet(o1.id, o2.id, tuple(chosen))
