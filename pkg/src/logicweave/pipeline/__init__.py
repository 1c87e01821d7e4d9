"""Five-stage prompt augmentation: extract, symbolize, extend, translate, reorder."""

from logicweave.pipeline.parsing import (
    DanglingSymbol,
    LlmOutputUnparseable,
    parse_feedback_scores,
    parse_sentence_list,
    parse_statement_list,
    parse_symbols_reply,
)
from logicweave.pipeline.run import StageFailure, run_pipeline, validate_trace
from logicweave.pipeline.stages import (
    extend_logic,
    extract_causal,
    extract_symbols,
    fallback_translation,
    reorder,
    translate,
)
from logicweave.pipeline.templates import TemplateError, TemplateSet
from logicweave.pipeline.text import normalize_sentence, same_sentences, split_sentences
from logicweave.pipeline.types import (
    METRICS,
    CausalStatementSet,
    FeedbackReport,
    LlmExchange,
    McqaInstance,
    PipelineConfig,
    PipelineTrace,
    PropositionTable,
    StageRecord,
)

__all__ = [
    "METRICS",
    "CausalStatementSet",
    "DanglingSymbol",
    "FeedbackReport",
    "LlmExchange",
    "LlmOutputUnparseable",
    "McqaInstance",
    "PipelineConfig",
    "PipelineTrace",
    "PropositionTable",
    "StageFailure",
    "StageRecord",
    "TemplateError",
    "TemplateSet",
    "extend_logic",
    "extract_causal",
    "extract_symbols",
    "fallback_translation",
    "normalize_sentence",
    "parse_feedback_scores",
    "parse_sentence_list",
    "parse_statement_list",
    "parse_symbols_reply",
    "reorder",
    "run_pipeline",
    "same_sentences",
    "split_sentences",
    "translate",
    "validate_trace",
]
