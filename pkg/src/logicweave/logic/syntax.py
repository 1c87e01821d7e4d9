"""Syntax of the implication fragment: literals, implications, parsing, printing.

An expression is a conjunction of signed propositional literals implying a
single literal, e.g. ``A ∧ ¬B → C``. Both Unicode (``¬ ∧ →``) and ASCII
(``~``/``!``, ``&``/``^``, ``->``) connectives are accepted on input; output
is deterministic per style so that ``parse(format(x)) == x``.

Grammar (whitespace-insensitive)::

    implication := conj ("→" | "->") literal
    conj        := literal (("∧" | "&" | "^") literal)*
    literal     := ("¬" | "~" | "!")* symbol
    symbol      := [A-Za-z][A-Za-z0-9_]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from logicweave.errors import LogicweaveError


class ParseError(LogicweaveError):
    """Malformed expression text."""


class VacuousExpression(LogicweaveError):
    """Antecedent contains a literal and its complement."""


class Tautology(LogicweaveError):
    """Consequent already appears in the antecedent."""


_SYMBOL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

_NOT_CHARS = "¬~!"
_AND_CHARS = "∧&^"

_STYLES = {
    "unicode": ("¬", " ∧ ", " → "),
    "ascii": ("~", " & ", " -> "),
}


@dataclass(frozen=True, order=True)
class SymbolId:
    """Identifier of a proposition, e.g. ``A`` or ``P3``."""

    name: str

    def __post_init__(self) -> None:
        if not _SYMBOL_RE.match(self.name):
            raise ValueError(f"invalid symbol identifier: {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Literal:
    """A symbol or its negation. Double negation never survives construction."""

    symbol: SymbolId
    negated: bool = False

    def complement(self) -> Literal:
        return Literal(self.symbol, not self.negated)

    def render(self, style: str = "unicode") -> str:
        neg, _, _ = _style(style)
        return (neg if self.negated else "") + self.symbol.name

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Implication:
    """A conjunctive-antecedent implication over literals, kept canonical.

    The antecedent is stored as a deduplicated tuple sorted by
    ``(symbol name, negated)``; vacuous antecedents (a literal next to its
    complement) and tautologies (consequent inside the antecedent) are
    construction errors, never silent normalizations.
    """

    antecedent: tuple[Literal, ...]
    consequent: Literal

    def __post_init__(self) -> None:
        literals = tuple(sorted(set(self.antecedent)))
        if not literals:
            raise ValueError("antecedent must contain at least one literal")
        by_symbol: dict[SymbolId, set[bool]] = {}
        for lit in literals:
            by_symbol.setdefault(lit.symbol, set()).add(lit.negated)
        clashing = sorted(s.name for s, signs in by_symbol.items() if len(signs) == 2)
        if clashing:
            raise VacuousExpression(
                f"antecedent contains complementary literals over: {', '.join(clashing)}"
            )
        if self.consequent in literals:
            raise Tautology(f"consequent {self.consequent} already in antecedent")
        object.__setattr__(self, "antecedent", literals)

    @property
    def symbols(self) -> frozenset[SymbolId]:
        return frozenset(l.symbol for l in self.antecedent) | {self.consequent.symbol}

    def sort_key(self) -> tuple:
        return (
            tuple((l.symbol.name, l.negated) for l in self.antecedent),
            (self.consequent.symbol.name, self.consequent.negated),
        )

    def __str__(self) -> str:
        return format_expression(self)


def subsumes(stronger: Implication, weaker: Implication) -> bool:
    """True when ``stronger`` makes ``weaker`` redundant: same consequent and
    an antecedent that is a subset of the weaker one's."""
    return stronger.consequent == weaker.consequent and set(
        stronger.antecedent
    ) <= set(weaker.antecedent)


@dataclass(frozen=True)
class ExpressionSet:
    """A canonical, subsumption-minimal collection of implications.

    ``symbols`` is the mentioned universe (plus any extra symbols passed in);
    ``provenance`` optionally labels implications with the derivation rule
    that produced them (populated by ``closure``).
    """

    implications: tuple[Implication, ...] = ()
    symbols: frozenset[SymbolId] = frozenset()
    provenance: Mapping[Implication, str] = field(
        default_factory=dict, compare=False
    )

    def __post_init__(self) -> None:
        ordered = sorted(set(self.implications), key=Implication.sort_key)
        kept = [
            imp
            for imp in ordered
            if not any(other != imp and subsumes(other, imp) for other in ordered)
        ]
        mentioned = frozenset(s for imp in kept for s in imp.symbols)
        labels = {
            imp: self.provenance[imp] for imp in kept if imp in self.provenance
        }
        object.__setattr__(self, "implications", tuple(kept))
        object.__setattr__(self, "symbols", frozenset(self.symbols) | mentioned)
        object.__setattr__(self, "provenance", MappingProxyType(labels))

    def __iter__(self) -> Iterator[Implication]:
        return iter(self.implications)

    def __len__(self) -> int:
        return len(self.implications)

    def __contains__(self, imp: Implication) -> bool:
        return imp in self.implications

    def rule_label(self, imp: Implication) -> str | None:
        return self.provenance.get(imp)

    def union(self, other: ExpressionSet) -> ExpressionSet:
        return ExpressionSet(
            self.implications + other.implications,
            self.symbols | other.symbols,
            {**other.provenance, **self.provenance},
        )


def _style(style: str) -> tuple[str, str, str]:
    try:
        return _STYLES[style]
    except KeyError:
        raise ValueError(f"unknown style {style!r}; expected one of {sorted(_STYLES)}")


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _NOT_CHARS:
            yield ("NOT", ch, i)
            i += 1
        elif ch in _AND_CHARS:
            yield ("AND", ch, i)
            i += 1
        elif ch == "→":
            yield ("ARROW", ch, i)
            i += 1
        elif text.startswith("->", i):
            yield ("ARROW", "->", i)
            i += 2
        else:
            m = re.match(r"[A-Za-z][A-Za-z0-9_]*", text[i:])
            if not m:
                raise ParseError(f"unexpected character {ch!r} at position {i}")
            yield ("SYMBOL", m.group(0), i)
            i += len(m.group(0))


class _TokenStream:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> tuple[str, str, int] | None:
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok


def _parse_literal(stream: _TokenStream, where: str) -> Literal:
    negations = 0
    while True:
        tok = stream.peek()
        if tok is not None and tok[0] == "NOT":
            stream.next()
            negations += 1
            continue
        break
    tok = stream.next()
    if tok is None:
        raise ParseError(f"missing {where}")
    if tok[0] != "SYMBOL":
        raise ParseError(f"expected symbol in {where}, found {tok[1]!r} at {tok[2]}")
    return Literal(SymbolId(tok[1]), negated=bool(negations % 2))


def parse_literal(text: str) -> Literal:
    """Parse a single literal such as ``¬A`` or ``~x1``."""
    stream = _TokenStream(text)
    lit = _parse_literal(stream, "literal")
    trailing = stream.peek()
    if trailing is not None:
        raise ParseError(f"trailing input after literal at {trailing[2]}")
    return lit


def parse_expression(text: str) -> Implication:
    """Parse one implication expression into canonical form.

    Raises ParseError on malformed syntax, VacuousExpression when the
    antecedent contains a complementary pair, Tautology when the consequent
    repeats an antecedent literal.
    """
    stream = _TokenStream(text)
    if stream.peek() is None:
        raise ParseError("empty expression")
    antecedent = [_parse_literal(stream, "antecedent")]
    while True:
        tok = stream.peek()
        if tok is not None and tok[0] == "AND":
            stream.next()
            antecedent.append(_parse_literal(stream, "antecedent"))
            continue
        break
    tok = stream.next()
    if tok is None:
        raise ParseError("missing '→' and consequent")
    if tok[0] != "ARROW":
        raise ParseError(f"expected '→', found {tok[1]!r} at {tok[2]}")
    consequent = _parse_literal(stream, "consequent")
    trailing = stream.peek()
    if trailing is not None:
        raise ParseError(f"trailing input after consequent at {trailing[2]}")
    return Implication(tuple(antecedent), consequent)


def format_expression(imp: Implication, style: str = "unicode") -> str:
    """Render an implication deterministically; inverse of parse_expression."""
    _, conj, arrow = _style(style)
    left = conj.join(lit.render(style) for lit in imp.antecedent)
    return left + arrow + imp.consequent.render(style)
