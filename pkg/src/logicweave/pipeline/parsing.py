"""Parsers for the structured replies each stage expects from the model.

All of them raise LlmOutputUnparseable (or DanglingSymbol) with a message
precise enough to drive the single repair reprompt.
"""

from __future__ import annotations

import re

from logicweave.errors import LogicweaveError
from logicweave.logic import (
    ExpressionSet,
    Implication,
    Literal,
    ParseError,
    SymbolId,
    Tautology,
    VacuousExpression,
    parse_expression,
)
from logicweave.pipeline.types import (
    METRICS,
    CausalStatementSet,
    FeedbackReport,
    PropositionTable,
    normalize_statement,
)


class LlmOutputUnparseable(LogicweaveError):
    """Reply lacks the required structure, even after the repair reprompt."""


class DanglingSymbol(LogicweaveError):
    """An expression references a symbol absent from the proposition table."""


_LIST_ITEM = re.compile(r"^\s*(?:[-*•]|\d+[.)])\s*(.+?)\s*$")
_PROPOSITION_LINE = re.compile(r"^\s*(?:[-*•]\s*)?([A-Za-z][A-Za-z0-9_]*)\s*:\s*(.+?)\s*$")
_PROPOSITION_SPLIT = re.compile(r",\s*(?=[A-Za-z][A-Za-z0-9_]*\s*:)")
_HEADER_PROPOSITIONS = re.compile(r"^\s*\**\s*propositions\s*:?\**\s*$", re.IGNORECASE)
_HEADER_EXPRESSIONS = re.compile(
    r"^\s*\**\s*implication\s+expressions\s*:?\**\s*$", re.IGNORECASE
)
_FENCE = re.compile(r"```[a-zA-Z]*\n(.*?)```", re.DOTALL)


def parse_statement_list(reply: str) -> CausalStatementSet:
    """Lines shaped '- statement' (or numbered) become the statement set."""
    statements = []
    for line in reply.splitlines():
        m = _LIST_ITEM.match(line)
        if m:
            statements.append(m.group(1))
    if not statements:
        raise LlmOutputUnparseable(
            "no statements found; reply must list one statement per line, "
            "each starting with '- '"
        )
    return CausalStatementSet(tuple(statements))


def _proposition_entries(lines: list[str]) -> list[tuple[str, str]]:
    entries = []
    for line in lines:
        for piece in _PROPOSITION_SPLIT.split(line):
            m = _PROPOSITION_LINE.match(piece)
            if m:
                entries.append((m.group(1), m.group(2)))
    return entries


def parse_symbols_reply(reply: str) -> tuple[PropositionTable, ExpressionSet]:
    """Parse the 'Propositions:' and 'Implication Expressions:' blocks.

    Semantically duplicate statements are unified under the first symbol and
    the alias is rewritten inside the expressions; a symbol used by an
    expression but missing from the table raises DanglingSymbol.
    """
    lines = reply.splitlines()
    prop_lines: list[str] = []
    expr_lines: list[str] = []
    section = None
    for line in lines:
        if _HEADER_PROPOSITIONS.match(line):
            section = "props"
            continue
        if _HEADER_EXPRESSIONS.match(line):
            section = "exprs"
            continue
        if section == "props":
            prop_lines.append(line)
        elif section == "exprs":
            expr_lines.append(line)
    if section is None:
        raise LlmOutputUnparseable(
            "reply must contain a 'Propositions:' block and an "
            "'Implication Expressions:' block"
        )

    raw_entries = _proposition_entries(prop_lines)
    if not raw_entries:
        raise LlmOutputUnparseable("the 'Propositions:' block defines no symbols")

    entries: list[tuple[SymbolId, str]] = []
    alias: dict[SymbolId, SymbolId] = {}
    by_statement: dict[str, SymbolId] = {}
    seen: dict[SymbolId, str] = {}
    for name, statement in raw_entries:
        try:
            symbol = SymbolId(name)
        except ValueError as exc:
            raise LlmOutputUnparseable(str(exc))
        normalized = normalize_statement(statement)
        if not normalized:
            raise LlmOutputUnparseable(f"proposition {name} has an empty statement")
        if symbol in seen:
            if seen[symbol] == normalized:
                continue
            raise LlmOutputUnparseable(
                f"symbol {name} is defined twice with different statements"
            )
        seen[symbol] = normalized
        if normalized in by_statement:
            alias[symbol] = by_statement[normalized]
            continue
        by_statement[normalized] = symbol
        entries.append((symbol, statement))

    expression_texts = []
    for line in expr_lines:
        stripped = _LIST_ITEM.match(line)
        content = stripped.group(1) if stripped else line
        for piece in content.split(","):
            piece = piece.strip()
            if piece:
                expression_texts.append(piece)

    implications = []
    for text in expression_texts:
        try:
            imp = parse_expression(text)
            if alias:
                imp = Implication(
                    tuple(
                        Literal(alias.get(l.symbol, l.symbol), l.negated)
                        for l in imp.antecedent
                    ),
                    Literal(
                        alias.get(imp.consequent.symbol, imp.consequent.symbol),
                        imp.consequent.negated,
                    ),
                )
        except (ParseError, VacuousExpression, Tautology) as exc:
            raise LlmOutputUnparseable(f"bad expression {text!r}: {exc}")
        implications.append(imp)

    table = PropositionTable(tuple(entries))
    known = table.symbols
    missing = sorted(
        {s.name for imp in implications for s in imp.symbols if s not in known}
    )
    if missing:
        raise DanglingSymbol(
            f"expressions use undefined symbol(s): {', '.join(missing)}"
        )
    return table, ExpressionSet(tuple(implications))


def parse_feedback_scores(reply: str) -> FeedbackReport:
    """Tolerant reader of the judge's fenced key:value block.

    Prefers fenced content when present, accepts reordered keys and
    surrounding prose, and requires all five scores in [1,5].
    """
    fenced = _FENCE.findall(reply)
    haystack = "\n".join(fenced) if fenced else reply
    scores = {}
    for metric in METRICS:
        m = re.search(rf"{metric}\s*[:=]\s*([1-5])\b", haystack, re.IGNORECASE)
        if not m:
            raise LlmOutputUnparseable(
                f"judge reply lacks a 1-5 score for {metric!r}"
            )
        scores[metric] = int(m.group(1))
    critique = ""
    m = re.search(r"critique\s*[:=]\s*(.*)", haystack, re.IGNORECASE | re.DOTALL)
    if m:
        critique = m.group(1).strip()
    return FeedbackReport(critique=critique, **scores)


def parse_sentence_list(reply: str) -> list[str]:
    """One sentence per line; tolerates bullets and numbering prefixes."""
    sentences = []
    for line in reply.splitlines():
        m = _LIST_ITEM.match(line)
        text = m.group(1) if m else line.strip()
        if text:
            sentences.append(text)
    return sentences
