"""Domain types for the augmentation pipeline."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping

from logicweave.logic import ClosureLimits, SymbolId

METRICS = ("completeness", "faithfulness", "consistency", "relevance", "clarity")

STAGE_ORDER = (
    "causal_extraction",
    "symbol_extraction",
    "logic_extension",
    "logical_translation",
    "reordering",
)


@dataclass(frozen=True)
class McqaInstance:
    """One multiple-choice record: question, context, labeled options, gold label."""

    id: str
    question: str
    context: str
    options: tuple[tuple[str, str], ...]
    gold: str

    def __post_init__(self) -> None:
        opts = tuple((str(l), str(t)) for l, t in self.options)
        labels = [l for l, _ in opts]
        if not labels:
            raise ValueError(f"instance {self.id}: no options")
        if len(set(labels)) != len(labels):
            raise ValueError(f"instance {self.id}: duplicate option labels")
        if self.gold not in labels:
            raise ValueError(f"instance {self.id}: gold {self.gold!r} not among labels")
        object.__setattr__(self, "options", opts)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(l for l, _ in self.options)

    def option_text(self, label: str) -> str:
        return dict(self.options)[label]

    def with_context(self, context: str) -> McqaInstance:
        return replace(self, context=context)


@dataclass(frozen=True)
class CausalStatementSet:
    """Causal/factual statements, in the context's original semantic order."""

    statements: tuple[str, ...]

    def __post_init__(self) -> None:
        cleaned = tuple(s.strip() for s in self.statements)
        if any(not s for s in cleaned):
            raise ValueError("causal statements must be non-empty")
        object.__setattr__(self, "statements", cleaned)

    def __iter__(self) -> Iterator[str]:
        return iter(self.statements)

    def __len__(self) -> int:
        return len(self.statements)

    def as_block(self) -> str:
        return "\n".join(f"- {s}" for s in self.statements)


def normalize_statement(text: str) -> str:
    return " ".join(text.lower().split()).strip(" .")


@dataclass(frozen=True)
class PropositionTable:
    """Ordered mapping of proposition symbols to natural-language statements."""

    entries: tuple[tuple[SymbolId, str], ...]

    def __post_init__(self) -> None:
        cleaned = []
        seen_ids: set[SymbolId] = set()
        seen_statements: dict[str, SymbolId] = {}
        for symbol, statement in self.entries:
            statement = statement.strip()
            if not statement:
                raise ValueError(f"proposition {symbol} has an empty statement")
            if symbol in seen_ids:
                raise ValueError(f"duplicate proposition symbol {symbol}")
            normalized = normalize_statement(statement)
            if normalized in seen_statements:
                raise ValueError(
                    f"propositions {seen_statements[normalized]} and {symbol} "
                    f"share one statement; duplicates must be unified"
                )
            seen_ids.add(symbol)
            seen_statements[normalized] = symbol
            cleaned.append((symbol, statement))
        object.__setattr__(self, "entries", tuple(cleaned))

    @property
    def symbols(self) -> frozenset[SymbolId]:
        return frozenset(s for s, _ in self.entries)

    def statement(self, symbol: SymbolId) -> str:
        for s, text in self.entries:
            if s == symbol:
                return text
        raise KeyError(symbol)

    def as_block(self) -> str:
        return "\n".join(f"{s.name}: {text}" for s, text in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class FeedbackReport:
    """Five 1-5 metric scores plus a free-text critique from the judge."""

    completeness: int
    faithfulness: int
    consistency: int
    relevance: int
    clarity: int
    critique: str = ""

    def __post_init__(self) -> None:
        for name in METRICS:
            value = getattr(self, name)
            if not isinstance(value, int) or not 1 <= value <= 5:
                raise ValueError(f"{name} score must be an integer in [1,5], got {value!r}")

    def scores(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in METRICS}

    def min_score(self) -> int:
        return min(self.scores().values())

    def total(self) -> int:
        return sum(self.scores().values())

    def as_block(self) -> str:
        return ", ".join(f"{k}: {v}" for k, v in self.scores().items())


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs for the five-stage run; the three enable flags are the ablations."""

    k: int = 3
    accept_threshold: int = 5
    closure_limits: ClosureLimits = field(default_factory=ClosureLimits)
    enable_feedback: bool = True
    enable_subject_quantifier_enhancement: bool = True
    enable_reordering: bool = True
    keep_best: bool = False
    template_set: str = "default"
    model: str | None = None
    temperature: float = 0.3
    top_k: int | None = 1

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 1 <= self.accept_threshold <= 5:
            raise ValueError("accept_threshold must be in [1,5]")

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "accept_threshold": self.accept_threshold,
            "closure_limits": {
                "max_antecedent": self.closure_limits.max_antecedent,
                "max_derived": self.closure_limits.max_derived,
                "max_rounds": self.closure_limits.max_rounds,
            },
            "enable_feedback": self.enable_feedback,
            "enable_subject_quantifier_enhancement": self.enable_subject_quantifier_enhancement,
            "enable_reordering": self.enable_reordering,
            "keep_best": self.keep_best,
            "template_set": self.template_set,
            "model": self.model,
            "temperature": self.temperature,
            "top_k": self.top_k,
        }


@dataclass
class LlmExchange:
    """One provider call, recorded verbatim for audit."""

    kind: str
    round: int
    request_digest: str
    response_digest: str
    messages: list[list[str]]
    completions: list[str]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "round": self.round,
            "request_digest": self.request_digest,
            "response_digest": self.response_digest,
            "messages": self.messages,
            "completions": self.completions,
        }


@dataclass
class StageRecord:
    stage: str
    iterations: int = 0
    exchanges: list[LlmExchange] = field(default_factory=list)
    reports: list[FeedbackReport] = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)
    wall_clock_s: float = 0.0

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "iterations": self.iterations,
            "exchanges": [e.to_dict() for e in self.exchanges],
            "reports": [
                {**r.scores(), "critique": r.critique} for r in self.reports
            ],
            "artifacts": self.artifacts,
        }


@dataclass
class PipelineTrace:
    """Full per-instance record of every stage, exchange, and derivation.

    ``canonical_bytes`` excludes per-stage wall-clock (the only volatile
    field) so identical runs serialize byte-identically; ``to_json``
    includes timings for the on-disk document.
    """

    instance_id: str
    template_set: str
    config: dict
    stages: list[StageRecord] = field(default_factory=list)
    derived: list[dict] = field(default_factory=list)
    translations: list[str] = field(default_factory=list)
    original_context: str = ""
    augmented_context: str = ""

    def stage(self, name: str) -> StageRecord:
        for record in self.stages:
            if record.stage == name:
                return record
        raise KeyError(name)

    def llm_call_count(self) -> int:
        return sum(len(record.exchanges) for record in self.stages)

    def to_dict(self, include_timings: bool = True) -> dict:
        doc = {
            "schema_version": 1,
            "instance_id": self.instance_id,
            "template_set": self.template_set,
            "config": self.config,
            "stages": [s.to_dict() for s in self.stages],
            "derived": self.derived,
            "translations": self.translations,
            "original_context": self.original_context,
            "augmented_context": self.augmented_context,
        }
        if include_timings:
            doc["timings"] = {s.stage: s.wall_clock_s for s in self.stages}
        return doc

    def canonical_bytes(self) -> bytes:
        doc = self.to_dict(include_timings=False)
        return json.dumps(
            doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False
        ).encode("utf-8")

    def to_json(self) -> str:
        return json.dumps(
            self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False
        )
