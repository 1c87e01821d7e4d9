"""Stage execution machinery: recorded LLM calls, repair reprompts, and the
multi-round scored feedback loop shared by the two extraction stages."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, TypeVar

from logicweave.gateway.types import (
    LlmRequest,
    LlmResponse,
    Message,
    Provider,
    cache_key,
    response_digest,
)
from logicweave.pipeline.parsing import (
    DanglingSymbol,
    LlmOutputUnparseable,
    parse_feedback_scores,
)
from logicweave.pipeline.templates import TemplateSet
from logicweave.pipeline.types import FeedbackReport, LlmExchange, PipelineConfig, StageRecord

T = TypeVar("T")

_REPAIRABLE = (LlmOutputUnparseable, DanglingSymbol)


class StageRun:
    """Issues provider calls for one stage and records every exchange."""

    def __init__(
        self,
        record: StageRecord,
        llm: Provider,
        cfg: PipelineConfig,
        templates: TemplateSet,
    ):
        self.record = record
        self.llm = llm
        self.cfg = cfg
        self.templates = templates
        self.model = cfg.model or getattr(llm, "default_model", "default")

    def call(
        self,
        kind: str,
        round_index: int,
        messages: list[Message],
        sample_count: int = 1,
        temperature: float | None = None,
    ) -> LlmResponse:
        request = LlmRequest(
            model=self.model,
            messages=tuple(messages),
            temperature=self.cfg.temperature if temperature is None else temperature,
            top_k=self.cfg.top_k,
            sample_count=sample_count,
        )
        response = self.llm.complete(request)
        self.record.exchanges.append(
            LlmExchange(
                kind=kind,
                round=round_index,
                request_digest=cache_key(request),
                response_digest=response_digest(response),
                messages=[[m.role, m.content] for m in request.messages],
                completions=list(response.completions),
            )
        )
        return response

    def ask(self, kind: str, round_index: int, prompt: str) -> str:
        return self.call(kind, round_index, [Message("user", prompt)]).completions[0]

    def ask_parsed(
        self,
        kind: str,
        round_index: int,
        prompt: str,
        parser: Callable[[str], T],
    ) -> tuple[T, str]:
        """One call plus at most one repair reprompt when parsing fails."""
        reply = self.ask(kind, round_index, prompt)
        try:
            return parser(reply), reply
        except _REPAIRABLE as first_error:
            repair_prompt = self.templates.render("repair", error=str(first_error))
            messages = [
                Message("user", prompt),
                Message("assistant", reply),
                Message("user", repair_prompt),
            ]
            reply = self.call("repair", round_index, messages).completions[0]
            return parser(reply), reply


@dataclass
class LoopOutcome:
    artifact: object
    candidate_text: str
    reports: list[FeedbackReport]


def run_feedback_loop(
    run: StageRun,
    *,
    generate_prompt: str,
    parser: Callable[[str], T],
    render_candidate: Callable[[T], str],
    judge_prompt: Callable[[str], str],
    revise_prompt: Callable[[str, FeedbackReport], str],
) -> LoopOutcome:
    """generate → (judge → revise)* for up to cfg.k rounds.

    Stops early when every score reaches cfg.accept_threshold; otherwise the
    round-k feedback still drives one last revision, so the returned
    candidate always reflects the latest critique. With feedback disabled,
    a single generation is all that happens. ``cfg.keep_best`` switches the
    result to the best-scoring judged candidate instead of the last one.
    """
    cfg = run.cfg
    artifact, text = run.ask_parsed("generate", 0, generate_prompt, parser)
    candidate = render_candidate(artifact)
    reports: list[FeedbackReport] = []
    if not cfg.enable_feedback:
        run.record.iterations = 0
        return LoopOutcome(artifact, candidate, reports)

    judged: list[tuple[int, object, str]] = []
    for round_index in range(1, cfg.k + 1):
        report, _ = run.ask_parsed(
            "judge", round_index, judge_prompt(candidate), parse_feedback_scores
        )
        reports.append(report)
        judged.append((report.total(), artifact, candidate))
        if report.min_score() >= cfg.accept_threshold:
            break
        artifact, _ = run.ask_parsed(
            "revise", round_index, revise_prompt(candidate, report), parser
        )
        candidate = render_candidate(artifact)

    run.record.iterations = len(reports)
    run.record.reports = list(reports)
    if cfg.keep_best and judged:
        best_total = max(total for total, _, _ in judged)
        for total, best_artifact, best_candidate in judged:
            if total == best_total:
                return LoopOutcome(best_artifact, best_candidate, reports)
    return LoopOutcome(artifact, candidate, reports)
