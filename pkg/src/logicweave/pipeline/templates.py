"""Prompt templates as external text assets with {{placeholder}} slots.

A template set is a directory of .txt files, addressed by set id (a
packaged directory under ``logicweave/pipeline/templates/``) or by a
filesystem path, so prompts stay editable without code changes. The set id
is recorded in every trace.
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from logicweave.errors import LogicweaveError

TEMPLATE_NAMES = (
    "causal_generate",
    "causal_judge",
    "causal_revise",
    "symbols_generate",
    "symbols_generate_coarse",
    "symbols_judge",
    "symbols_revise",
    "translate",
    "reorder",
    "repair",
    "answer_direct",
    "answer_cot",
)

_PLACEHOLDER = re.compile(r"\{\{(\w+)\}\}")


class TemplateError(LogicweaveError):
    """Missing template file or unfilled placeholder."""


class TemplateSet:
    def __init__(self, set_id: str, texts: dict[str, str]):
        missing = [name for name in TEMPLATE_NAMES if name not in texts]
        if missing:
            raise TemplateError(
                f"template set {set_id!r} lacks: {', '.join(missing)}"
            )
        self.set_id = set_id
        self._texts = texts

    @classmethod
    def load(cls, set_id_or_path: str = "default") -> TemplateSet:
        path = Path(set_id_or_path)
        if path.is_dir():
            texts = {
                p.stem: p.read_text(encoding="utf-8")
                for p in sorted(path.glob("*.txt"))
            }
            return cls(path.name, texts)
        root = resources.files("logicweave.pipeline") / "templates" / set_id_or_path
        if not root.is_dir():
            raise TemplateError(f"unknown template set {set_id_or_path!r}")
        texts = {
            entry.name[: -len(".txt")]: entry.read_text(encoding="utf-8")
            for entry in root.iterdir()
            if entry.name.endswith(".txt")
        }
        return cls(set_id_or_path, texts)

    def render(self, name: str, **values: str) -> str:
        try:
            text = self._texts[name]
        except KeyError:
            raise TemplateError(f"no template named {name!r} in set {self.set_id!r}")

        def fill(match: re.Match) -> str:
            key = match.group(1)
            if key not in values:
                raise TemplateError(
                    f"template {name!r} needs a value for {{{{{key}}}}}"
                )
            return str(values[key])

        return _PLACEHOLDER.sub(fill, text)
