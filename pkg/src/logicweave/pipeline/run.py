"""Orchestration of the five stages into one augmentation run."""

from __future__ import annotations

from logicweave.errors import LogicweaveError
from logicweave.gateway.types import Provider
from logicweave.logic import format_expression
from logicweave.pipeline.stages import (
    extend_logic,
    extract_causal,
    extract_symbols,
    reorder,
    translate,
)
from logicweave.pipeline.templates import TemplateSet
from logicweave.pipeline.text import normalize_sentence, split_sentences
from logicweave.pipeline.types import McqaInstance, PipelineConfig, PipelineTrace


class StageFailure(LogicweaveError):
    """A stage aborted the pipeline; the partial trace rides along."""

    def __init__(self, stage: str, cause: Exception, trace: PipelineTrace):
        super().__init__(f"pipeline stage {stage!r} failed: {cause}")
        self.stage = stage
        self.trace = trace


def run_pipeline(
    instance: McqaInstance,
    cfg: PipelineConfig,
    llm: Provider,
    *,
    templates: TemplateSet | None = None,
) -> tuple[McqaInstance, PipelineTrace]:
    """Run all five stages and return the augmented instance plus its trace.

    The augmented instance carries the reordered augmented context; the
    original context always remains recoverable from the trace.
    """
    templates = templates if templates is not None else TemplateSet.load(cfg.template_set)
    trace = PipelineTrace(
        instance_id=instance.id,
        template_set=templates.set_id,
        config=cfg.to_dict(),
        original_context=instance.context,
    )
    stage = "causal_extraction"
    try:
        statements, _ = extract_causal(
            instance, cfg, llm, templates=templates, trace=trace
        )
        stage = "symbol_extraction"
        table, expressions, _ = extract_symbols(
            statements, cfg, llm, templates=templates, trace=trace
        )
        stage = "logic_extension"
        derived = extend_logic(expressions, cfg, trace=trace)
        stage = "logical_translation"
        translations = translate(
            derived, table, llm, cfg=cfg, templates=templates, trace=trace
        )
        stage = "reordering"
        augmented_context = reorder(
            instance.context, translations, llm, cfg, templates=templates, trace=trace
        )
    except Exception as exc:
        raise StageFailure(stage, exc, trace) from exc

    trace.derived = [
        {"expression": format_expression(imp), "rule": derived.rule_label(imp)}
        for imp in derived
    ]
    trace.translations = list(translations)
    trace.augmented_context = augmented_context
    return instance.with_context(augmented_context), trace


def validate_trace(trace: PipelineTrace) -> None:
    """Assert the cross-stage invariants a finished trace must satisfy."""
    order = [record.stage for record in trace.stages]
    expected = [
        "causal_extraction",
        "symbol_extraction",
        "logic_extension",
        "logical_translation",
        "reordering",
    ]
    if order != expected:
        raise AssertionError(f"stage order {order} != {expected}")
    k = trace.config["k"]
    for record in trace.stages:
        if record.iterations > k:
            raise AssertionError(
                f"{record.stage}: {record.iterations} feedback rounds exceed k={k}"
            )
    symbols_record = trace.stage("symbol_extraction")
    table = set(symbols_record.artifacts.get("propositions", {}))
    mentioned = {
        name
        for expr in symbols_record.artifacts.get("expressions", [])
        for name in _symbol_names(expr)
    }
    if not mentioned <= table:
        raise AssertionError(
            f"expressions mention symbols outside the table: {mentioned - table}"
        )
    augmented = {normalize_sentence(s) for s in split_sentences(trace.augmented_context)}
    for sentence in split_sentences(trace.original_context):
        if normalize_sentence(sentence) not in augmented:
            raise AssertionError(
                f"original sentence lost from augmented context: {sentence!r}"
            )


def _symbol_names(expression: str) -> list[str]:
    import re

    return re.findall(r"[A-Za-z][A-Za-z0-9_]*", expression)
