"""The five pipeline stages.

Stage order is fixed: causal statement extraction and symbol/expression
extraction (both under the scored feedback loop), purely symbolic logic
extension, translation of the derived expressions back to prose, and
sentence reordering of the augmented context.
"""

from __future__ import annotations

import time

from logicweave.gateway.types import Provider
from logicweave.logic import ExpressionSet, Implication, LimitExceeded, closure, format_expression
from logicweave.pipeline.feedback import StageRun, run_feedback_loop
from logicweave.pipeline.parsing import (
    DanglingSymbol,
    parse_sentence_list,
    parse_statement_list,
    parse_symbols_reply,
)
from logicweave.pipeline.templates import TemplateSet
from logicweave.pipeline.text import same_sentences, split_sentences
from logicweave.pipeline.types import (
    CausalStatementSet,
    FeedbackReport,
    McqaInstance,
    PipelineConfig,
    PipelineTrace,
    PropositionTable,
    StageRecord,
)


def _stage_record(trace: PipelineTrace | None, name: str) -> StageRecord:
    record = StageRecord(stage=name)
    if trace is not None:
        trace.stages.append(record)
    return record


def _templates(cfg: PipelineConfig, templates: TemplateSet | None) -> TemplateSet:
    return templates if templates is not None else TemplateSet.load(cfg.template_set)


def extract_causal(
    instance: McqaInstance,
    cfg: PipelineConfig,
    llm: Provider,
    *,
    templates: TemplateSet | None = None,
    trace: PipelineTrace | None = None,
) -> tuple[CausalStatementSet, list[FeedbackReport]]:
    """Extract causal/factual statements from the context under feedback."""
    if not instance.context.strip():
        raise ValueError(f"instance {instance.id}: context is empty")
    templates = _templates(cfg, templates)
    record = _stage_record(trace, "causal_extraction")
    started = time.perf_counter()
    run = StageRun(record, llm, cfg, templates)
    outcome = run_feedback_loop(
        run,
        generate_prompt=templates.render("causal_generate", context=instance.context),
        parser=parse_statement_list,
        render_candidate=lambda s: s.as_block(),
        judge_prompt=lambda candidate: templates.render(
            "causal_judge", context=instance.context, candidate=candidate
        ),
        revise_prompt=lambda candidate, report: templates.render(
            "causal_revise",
            context=instance.context,
            candidate=candidate,
            scores=report.as_block(),
            critique=report.critique,
        ),
    )
    statements: CausalStatementSet = outcome.artifact
    record.artifacts = {"statements": list(statements)}
    record.wall_clock_s = time.perf_counter() - started
    return statements, outcome.reports


def _render_extraction(parsed: tuple[PropositionTable, ExpressionSet]) -> str:
    table, expressions = parsed
    lines = ["Propositions:", table.as_block(), "", "Implication Expressions:"]
    lines += [format_expression(imp) for imp in expressions]
    return "\n".join(lines)


def extract_symbols(
    statements: CausalStatementSet,
    cfg: PipelineConfig,
    llm: Provider,
    *,
    templates: TemplateSet | None = None,
    trace: PipelineTrace | None = None,
) -> tuple[PropositionTable, ExpressionSet, list[FeedbackReport]]:
    """Extract the proposition table and implication expressions under feedback.

    With subject/quantifier enhancement off (the ablation), the coarse
    few-shot template is used instead.
    """
    if not len(statements):
        raise ValueError("no statements to extract symbols from")
    templates = _templates(cfg, templates)
    record = _stage_record(trace, "symbol_extraction")
    started = time.perf_counter()
    run = StageRun(record, llm, cfg, templates)
    generate_template = (
        "symbols_generate"
        if cfg.enable_subject_quantifier_enhancement
        else "symbols_generate_coarse"
    )
    outcome = run_feedback_loop(
        run,
        generate_prompt=templates.render(
            generate_template, statements=statements.as_block()
        ),
        parser=parse_symbols_reply,
        render_candidate=_render_extraction,
        judge_prompt=lambda candidate: templates.render(
            "symbols_judge", statements=statements.as_block(), candidate=candidate
        ),
        revise_prompt=lambda candidate, report: templates.render(
            "symbols_revise",
            statements=statements.as_block(),
            candidate=candidate,
            scores=report.as_block(),
            critique=report.critique,
        ),
    )
    table, expressions = outcome.artifact
    record.artifacts = {
        "template": generate_template,
        "propositions": {s.name: text for s, text in table.entries},
        "expressions": [format_expression(imp) for imp in expressions],
    }
    record.wall_clock_s = time.perf_counter() - started
    return table, expressions, outcome.reports


def extend_logic(
    expressions: ExpressionSet,
    cfg: PipelineConfig,
    *,
    trace: PipelineTrace | None = None,
) -> ExpressionSet:
    """Deductive closure of the extracted expressions; purely symbolic."""
    record = _stage_record(trace, "logic_extension")
    started = time.perf_counter()
    try:
        derived = closure(expressions, cfg.closure_limits)
    except LimitExceeded as exc:
        record.artifacts = {
            "error": str(exc),
            "limit": exc.limit,
            "partial": [format_expression(i) for i in exc.partial],
        }
        record.wall_clock_s = time.perf_counter() - started
        raise
    record.artifacts = {
        "derived": [
            {"expression": format_expression(imp), "rule": derived.rule_label(imp)}
            for imp in derived
        ]
    }
    record.wall_clock_s = time.perf_counter() - started
    return derived


def fallback_translation(imp: Implication, table: PropositionTable) -> str:
    """Deterministic template rendering of one implication."""

    def phrase(literal) -> str:
        statement = table.statement(literal.symbol).rstrip(" .")
        if literal.negated:
            return f"it is not the case that {statement}"
        return statement

    antecedent = " and ".join(phrase(l) for l in imp.antecedent)
    return f"If {antecedent}, then {phrase(imp.consequent)}."


def translate(
    derived: ExpressionSet,
    table: PropositionTable,
    llm: Provider,
    *,
    cfg: PipelineConfig | None = None,
    templates: TemplateSet | None = None,
    trace: PipelineTrace | None = None,
) -> list[str]:
    """One natural-language sentence per derived implication.

    The LLM translation is used verbatim when it returns exactly one
    sentence per expression; any count mismatch falls back to the
    deterministic template for every expression.
    """
    cfg = cfg or PipelineConfig()
    templates = _templates(cfg, templates)
    record = _stage_record(trace, "logical_translation")
    started = time.perf_counter()
    missing = sorted(
        {s.name for imp in derived for s in imp.symbols if s not in table.symbols}
    )
    if missing:
        raise DanglingSymbol(
            f"derived expressions use symbol(s) missing from the table: "
            f"{', '.join(missing)}"
        )
    expressions = list(derived)
    if not expressions:
        record.artifacts = {"sentences": [], "source": "empty"}
        record.wall_clock_s = time.perf_counter() - started
        return []
    run = StageRun(record, llm, cfg, templates)
    prompt = templates.render(
        "translate",
        propositions=table.as_block(),
        expressions="\n".join(
            f"{i}. {format_expression(imp)}" for i, imp in enumerate(expressions, 1)
        ),
    )
    reply = run.ask("translate", 0, prompt)
    sentences = parse_sentence_list(reply)
    if len(sentences) == len(expressions):
        source = "llm"
    else:
        sentences = [fallback_translation(imp, table) for imp in expressions]
        source = "fallback"
    record.artifacts = {"sentences": sentences, "source": source}
    record.wall_clock_s = time.perf_counter() - started
    return sentences


def reorder(
    context: str,
    translated: list[str],
    llm: Provider,
    cfg: PipelineConfig,
    *,
    templates: TemplateSet | None = None,
    trace: PipelineTrace | None = None,
) -> str:
    """Rearrange the augmented context into a deduction-friendly order.

    The reply must be a permutation of the input sentences (multiset
    comparison after normalization); one repair reprompt, then fall back to
    the original order with translations appended. With reordering disabled
    the fallback shape is returned directly, with no LLM call.
    """
    templates = _templates(cfg, templates)
    record = _stage_record(trace, "reordering")
    started = time.perf_counter()
    appended = " ".join([context.strip()] + list(translated)).strip()
    original = split_sentences(context) + list(translated)
    if not cfg.enable_reordering:
        record.artifacts = {"source": "disabled", "context": appended}
        record.wall_clock_s = time.perf_counter() - started
        return appended

    run = StageRun(record, llm, cfg, templates)
    prompt = templates.render(
        "reorder",
        sentences="\n".join(f"{i}. {s}" for i, s in enumerate(original, 1)),
    )
    reply = run.ask("reorder", 0, prompt)
    sentences = parse_sentence_list(reply)
    source = "llm"
    if not same_sentences(original, sentences):
        repair_prompt = templates.render(
            "repair",
            error="the reordered list must contain exactly the given sentences, "
            "each used once and unchanged",
        )
        from logicweave.gateway.types import Message

        reply = run.call(
            "repair",
            0,
            [
                Message("user", prompt),
                Message("assistant", reply),
                Message("user", repair_prompt),
            ],
        ).completions[0]
        sentences = parse_sentence_list(reply)
        source = "llm-repaired"
    if not same_sentences(original, sentences):
        record.artifacts = {"source": "fallback", "context": appended}
        record.wall_clock_s = time.perf_counter() - started
        return appended
    result = " ".join(sentences)
    record.artifacts = {"source": source, "context": result}
    record.wall_clock_s = time.perf_counter() - started
    return result
