"""Dataset loading and normalization.

Every family adapter converts its published raw shape into one canonical
interchange record (a JSON object per line):

    {"id": ..., "context": ..., "question": ...,
     "options": [["A", "..."], ...], "answer": "A"}

Entailment-style families use the labels True/False (plus Unknown where the
dataset defines it). Free-response numeric records (R-GSM without an
official distractor) drop "options" and carry {"mode": "numeric"}; the
harness scores them by exact numeric match. Datasets are not vendored —
the repo ships ~10-instance hand-written fixtures per family under
``fixtures/`` and the adapters accept the published shapes.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable

from logicweave.errors import LogicweaveError
from logicweave.pipeline.types import McqaInstance

FAMILIES = (
    "logiqa",
    "reclor",
    "ruletaker",
    "proofwriter",
    "prontoqa",
    "folio",
    "rgsm",
    "generic",
)

_ABCD = ("A", "B", "C", "D")


class SchemaError(LogicweaveError):
    """A record does not fit the family's documented shape."""

    def __init__(self, index: int, field: str, message: str):
        super().__init__(f"record {index}, field {field!r}: {message}")
        self.index = index
        self.field = field


class EmptyDataset(LogicweaveError):
    """The file parsed but produced zero records."""


@dataclass(frozen=True)
class DatasetDescriptor:
    family: str
    path: str | Path
    sample_limit: int | None = None
    shuffle_seed: int | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown dataset family {self.family!r}")
        if self.sample_limit is not None and self.sample_limit < 1:
            raise ValueError("sample_limit must be positive")

    @property
    def display_name(self) -> str:
        return self.name or self.family


@dataclass(frozen=True)
class NumericInstance:
    """Free-response numeric record, scored by exact match."""

    id: str
    question: str
    context: str
    gold_value: str

    def with_context(self, context: str) -> NumericInstance:
        return replace(self, context=context)


def _read_jsonl(path: Path) -> list[dict]:
    records = []
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines()):
        line = line.strip()
        if not line:
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise SchemaError(i, "-", f"invalid JSON line: {exc}")
    return records


def _need(record: dict, index: int, field: str):
    if field not in record:
        raise SchemaError(index, field, "missing")
    return record[field]


def _tf_options(labels: Iterable[str]) -> list[list[str]]:
    return [[label, label] for label in labels]


def _adapt_generic(path: Path) -> list[dict]:
    return _read_jsonl(path)


def _adapt_logiqa(path: Path) -> list[dict]:
    out = []
    for i, rec in enumerate(_read_jsonl(path)):
        options = _need(rec, i, "options")
        if len(options) != 4:
            raise SchemaError(i, "options", f"expected 4 options, got {len(options)}")
        answer_idx = int(_need(rec, i, "correct_option"))
        if not 0 <= answer_idx < 4:
            raise SchemaError(i, "correct_option", f"out of range: {answer_idx}")
        out.append(
            {
                "id": str(rec.get("id", f"logiqa-{i}")),
                "context": _need(rec, i, "context"),
                "question": _need(rec, i, "query"),
                "options": [[_ABCD[j], text] for j, text in enumerate(options)],
                "answer": _ABCD[answer_idx],
            }
        )
    return out


def _adapt_reclor(path: Path) -> list[dict]:
    try:
        records = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(0, "-", f"invalid JSON document: {exc}")
    out = []
    for i, rec in enumerate(records):
        answers = _need(rec, i, "answers")
        if len(answers) != 4:
            raise SchemaError(i, "answers", f"expected 4 answers, got {len(answers)}")
        label = int(_need(rec, i, "label"))
        out.append(
            {
                "id": str(rec.get("id_string", f"reclor-{i}")),
                "context": _need(rec, i, "context"),
                "question": _need(rec, i, "question"),
                "options": [[_ABCD[j], text] for j, text in enumerate(answers)],
                "answer": _ABCD[label],
            }
        )
    return out


def _tf_label(value, index: int, allow_unknown: bool) -> str:
    text = str(value).strip().lower()
    mapping = {"true": "True", "false": "False", "unknown": "Unknown"}
    if text in ("uncertain", "undetermined"):
        text = "unknown"
    if text not in mapping or (text == "unknown" and not allow_unknown):
        raise SchemaError(index, "label", f"unsupported truth label {value!r}")
    return mapping[text]


def _adapt_ruletaker(path: Path, allow_unknown: bool = False, prefix: str = "ruletaker") -> list[dict]:
    out = []
    for i, rec in enumerate(_read_jsonl(path)):
        context = rec.get("context", rec.get("theory"))
        if context is None:
            raise SchemaError(i, "context", "missing (or 'theory')")
        questions = _need(rec, i, "questions")
        items = (
            sorted(questions.items()) if isinstance(questions, dict)
            else [(q.get("id", f"q{j}"), q) for j, q in enumerate(questions)]
        )
        labels = ["True", "False"] + (["Unknown"] if allow_unknown else [])
        for qid, q in items:
            text = q.get("text", q.get("question"))
            if text is None:
                raise SchemaError(i, "questions", f"{qid}: missing question text")
            answer = _tf_label(q.get("label", q.get("answer")), i, allow_unknown)
            out.append(
                {
                    "id": f"{rec.get('id', f'{prefix}-{i}')}-{qid}",
                    "context": context,
                    "question": text,
                    "options": _tf_options(labels),
                    "answer": answer,
                }
            )
    return out


def _adapt_proofwriter(path: Path) -> list[dict]:
    return _adapt_ruletaker(path, allow_unknown=True, prefix="proofwriter")


def _adapt_prontoqa(path: Path) -> list[dict]:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(0, "-", f"invalid JSON document: {exc}")
    out = []
    for i, (name, value) in enumerate(sorted(doc.items())):
        rec = value.get("test_example", value) if isinstance(value, dict) else None
        if rec is None:
            raise SchemaError(i, name, "expected an object")
        out.append(
            {
                "id": name,
                "context": _need(rec, i, "question"),
                "question": _need(rec, i, "query"),
                "options": _tf_options(["True", "False"]),
                "answer": _tf_label(_need(rec, i, "answer"), i, allow_unknown=False),
            }
        )
    return out


def _adapt_folio(path: Path) -> list[dict]:
    out = []
    for i, rec in enumerate(_read_jsonl(path)):
        premises = _need(rec, i, "premises")
        context = "\n".join(premises) if isinstance(premises, list) else str(premises)
        out.append(
            {
                "id": str(rec.get("story_id", rec.get("id", f"folio-{i}"))),
                "context": context,
                "question": "Is the following conclusion true, false, or unknown? "
                + _need(rec, i, "conclusion"),
                "options": _tf_options(["True", "False", "Unknown"]),
                "answer": _tf_label(_need(rec, i, "label"), i, allow_unknown=True),
            }
        )
    return out


def _adapt_rgsm(path: Path) -> list[dict]:
    out = []
    for i, rec in enumerate(_read_jsonl(path)):
        problem = _need(rec, i, "question")
        answer = str(_need(rec, i, "answer"))
        base = {
            "id": str(rec.get("id", f"rgsm-{i}")),
            "context": problem,
            "question": "What is the final numeric answer?",
        }
        if "distractor" in rec:
            # official distractor: two options, ordered by value text
            values = sorted([answer, str(rec["distractor"])])
            options = [["A", values[0]], ["B", values[1]]]
            gold = "A" if values[0] == answer else "B"
            out.append({**base, "options": options, "answer": gold})
        else:
            out.append({**base, "answer": answer, "mode": "numeric"})
    return out


_ADAPTERS = {
    "generic": _adapt_generic,
    "logiqa": _adapt_logiqa,
    "reclor": _adapt_reclor,
    "ruletaker": _adapt_ruletaker,
    "proofwriter": _adapt_proofwriter,
    "prontoqa": _adapt_prontoqa,
    "folio": _adapt_folio,
    "rgsm": _adapt_rgsm,
}


def _to_instance(record: dict, index: int):
    for field in ("id", "context", "question", "answer"):
        if field not in record:
            raise SchemaError(index, field, "missing")
        if not str(record[field]).strip():
            raise SchemaError(index, field, "empty")
    if record.get("mode") == "numeric" or "options" not in record:
        return NumericInstance(
            id=str(record["id"]),
            question=str(record["question"]),
            context=str(record["context"]),
            gold_value=str(record["answer"]),
        )
    try:
        return McqaInstance(
            id=str(record["id"]),
            question=str(record["question"]),
            context=str(record["context"]),
            options=tuple((str(l), str(t)) for l, t in record["options"]),
            gold=str(record["answer"]),
        )
    except (ValueError, TypeError) as exc:
        raise SchemaError(index, "options", str(exc))


def adapt(family: str, path: str | Path) -> list[dict]:
    """Convert a raw family file into canonical records."""
    try:
        adapter = _ADAPTERS[family]
    except KeyError:
        raise ValueError(f"unknown dataset family {family!r}")
    return adapter(Path(path))


def load(desc: DatasetDescriptor) -> list:
    """Load, normalize, and deterministically subsample one dataset."""
    records = adapt(desc.family, desc.path)
    if not records:
        raise EmptyDataset(f"{desc.path} contains no records")
    instances = [_to_instance(rec, i) for i, rec in enumerate(records)]
    if desc.sample_limit is not None and desc.sample_limit > len(instances):
        raise ValueError(
            f"sample_limit {desc.sample_limit} exceeds record count {len(instances)}"
        )
    if desc.shuffle_seed is not None:
        random.Random(desc.shuffle_seed).shuffle(instances)
    if desc.sample_limit is not None:
        instances = instances[: desc.sample_limit]
    return instances


def convert(family: str, src: str | Path, dst: str | Path) -> int:
    """Write the canonical JSONL for a raw family file; returns record count."""
    records = adapt(family, src)
    for i, rec in enumerate(records):
        _to_instance(rec, i)  # validate before writing anything
    with open(dst, "w", encoding="utf-8") as handle:
        for rec in records:
            handle.write(json.dumps(rec, ensure_ascii=False) + "\n")
    return len(records)
