"""Answering strategies over raw or augmented instances.

Direct asks for the label outright, CoT adds step-by-step reasoning, and
CoT-SC draws n sampled reasoning paths in a single provider request and
majority-votes the parsed answers (ties break to the smallest label, and
unparseable paths drop out of the vote).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from logicweave.gateway.types import LlmRequest, Message, Provider
from logicweave.pipeline.run import run_pipeline
from logicweave.pipeline.templates import TemplateSet
from logicweave.pipeline.types import McqaInstance, PipelineConfig, PipelineTrace

ABSTAIN = "abstain"

KINDS = ("direct", "cot", "cot_sc")

_TRUEFALSE_SYNONYMS = {
    "true": "true",
    "yes": "true",
    "correct": "true",
    "false": "false",
    "no": "false",
    "incorrect": "false",
    "unknown": "unknown",
    "uncertain": "unknown",
    "undetermined": "unknown",
}

_ANSWER_PATTERN = re.compile(
    r"answer(?:\s+is)?\s*:?\s*(?:option\s+)?[\"'(\[{]*([A-Za-z0-9_.\-]+)",
    re.IGNORECASE,
)
_TOKEN = re.compile(r"[A-Za-z0-9_.\-]+")
_NUMBER = re.compile(r"-?\d[\d,]*(?:\.\d+)?")


@dataclass(frozen=True)
class MethodSpec:
    """One answering strategy; unset fields resolve to per-kind defaults
    (direct/cot: temperature 0.3, top-k 1, one sample; cot_sc: temperature
    1.0, five reasoning paths)."""

    kind: str
    temperature: float | None = None
    sample_count: int | None = None
    augment: bool = False
    top_k: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown method kind {self.kind!r}")
        if self.temperature is None:
            object.__setattr__(
                self, "temperature", 1.0 if self.kind == "cot_sc" else 0.3
            )
        if self.sample_count is None:
            object.__setattr__(self, "sample_count", 5 if self.kind == "cot_sc" else 1)
        if self.top_k is None and self.kind != "cot_sc":
            object.__setattr__(self, "top_k", 1)
        if self.kind == "cot_sc":
            if self.sample_count < 2:
                raise ValueError("cot_sc needs sample_count >= 2")
            if self.temperature <= 0:
                raise ValueError("cot_sc needs temperature > 0")
        elif self.sample_count != 1:
            raise ValueError(f"{self.kind} uses exactly one sample")

    @property
    def name(self) -> str:
        return self.kind + ("+aug" if self.augment else "")


@dataclass(frozen=True)
class Verdict:
    predicted: str
    votes: Mapping[str, int]
    raw_completions: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "votes", dict(self.votes))
        object.__setattr__(self, "raw_completions", tuple(self.raw_completions))


def _truefalse_mode(labels: Sequence[str]) -> bool:
    return {l.lower() for l in labels} <= {"true", "false", "unknown"}


def _match_token(token: str, labels: Sequence[str], tf_mode: bool) -> str | None:
    token = token.strip("\"'()[]{}.,;:!?")
    if not token:
        return None
    for label in labels:
        if len(label) == 1:
            if token == label:  # single-letter labels match case-sensitively
                return label
        elif token.lower() == label.lower():
            return label
    if tf_mode:
        normalized = _TRUEFALSE_SYNONYMS.get(token.lower())
        if normalized:
            for label in labels:
                if label.lower() == normalized:
                    return label
    return None


def parse_answer(completion: str, options: Sequence[str]) -> str | None:
    """Extract the chosen label, or None when no heuristic fires.

    Ordered heuristics: explicit "Answer: X"/"answer is X" phrases (the
    last one wins), a trailing standalone label, then a unique option-text
    mention. True/False-style labels also accept yes/no and
    correct/incorrect synonyms.
    """
    labels = list(options)
    tf_mode = _truefalse_mode(labels)

    hits = [
        m.group(1) for m in _ANSWER_PATTERN.finditer(completion)
    ]
    for token in reversed(hits):
        label = _match_token(token, labels, tf_mode)
        if label is not None:
            return label

    lines = [line for line in completion.splitlines() if line.strip()]
    if lines:
        for token in reversed(_TOKEN.findall(lines[-1])):
            label = _match_token(token, labels, tf_mode)
            if label is not None:
                return label

    return None


def resolve_option_text(completion: str, options: Sequence[tuple[str, str]]) -> str | None:
    """Unique option-text substring match (word-bounded, case-insensitive)."""
    haystack = completion.lower()
    matched = [
        label
        for label, text in options
        if text and re.search(rf"\b{re.escape(text.lower())}\b", haystack)
    ]
    if len(matched) == 1:
        return matched[0]
    return None


def normalize_number(text: str) -> str:
    value = text.replace(",", "").strip()
    sign = ""
    if value.startswith("-"):
        sign, value = "-", value[1:]
    if "." in value:
        value = value.rstrip("0").rstrip(".")
    whole = value.split(".")[0].lstrip("0")
    rest = value[len(value.split(".")[0]):]
    value = (whole or "0") + rest
    if value == "0":
        sign = ""
    return sign + value


def parse_numeric_answer(completion: str) -> str | None:
    """Final numeric answer, normalized; prefers an explicit Answer phrase,
    otherwise the last number mentioned."""
    hits = [m.group(1) for m in _ANSWER_PATTERN.finditer(completion)]
    for token in reversed(hits):
        if _NUMBER.fullmatch(token.strip(".,")):
            return normalize_number(token.strip(".,"))
    numbers = _NUMBER.findall(completion)
    if numbers:
        return normalize_number(numbers[-1])
    return None


def _vote(parsed: list[str | None]) -> tuple[str, dict[str, int]]:
    votes = Counter(label for label in parsed if label is not None)
    if not votes:
        return ABSTAIN, {}
    top = max(votes.values())
    predicted = min(label for label, count in votes.items() if count == top)
    return predicted, dict(votes)


def answer(
    instance,
    spec: MethodSpec,
    llm: Provider,
    cfg: PipelineConfig | None = None,
    *,
    templates: TemplateSet | None = None,
) -> tuple[Verdict, PipelineTrace | None]:
    """Answer one instance with the given strategy.

    With ``spec.augment`` the five-stage pipeline runs first and the model
    answers on the augmented instance; the pipeline trace is returned
    alongside. CoT-SC issues exactly one provider request carrying
    ``sample_count`` so the sampled population stays cacheable as a unit.
    """
    cfg = cfg or PipelineConfig()
    if templates is None:
        templates = TemplateSet.load(cfg.template_set)
    trace: PipelineTrace | None = None
    target = instance
    if spec.augment:
        target, trace = run_pipeline(instance, cfg, llm, templates=templates)

    mcqa = isinstance(target, McqaInstance) or hasattr(target, "options")
    if mcqa:
        options_block = "\n".join(f"{label}. {text}" for label, text in target.options)
    else:
        options_block = "(free numeric answer)"
    prompt = templates.render(
        "answer_direct" if spec.kind == "direct" else "answer_cot",
        context=target.context,
        question=target.question,
        options=options_block,
    )
    request = LlmRequest(
        model=cfg.model or getattr(llm, "default_model", "default"),
        messages=(Message("user", prompt),),
        temperature=spec.temperature,
        top_k=spec.top_k,
        sample_count=spec.sample_count,
    )
    response = llm.complete(request)

    if mcqa:
        parsed = []
        for completion in response.completions:
            label = parse_answer(completion, target.labels)
            if label is None:
                label = resolve_option_text(completion, target.options)
            parsed.append(label)
    else:
        parsed = [parse_numeric_answer(c) for c in response.completions]
    predicted, votes = _vote(parsed)
    return Verdict(predicted, votes, response.completions), trace
