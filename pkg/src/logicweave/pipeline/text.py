"""Sentence segmentation and normalization for the reorder permutation check.

Deliberately simple and deterministic: split on sentence-final punctuation
followed by whitespace; normalize by lowercasing, collapsing whitespace,
and stripping surrounding punctuation. Linguistic perfection is not the
goal, stable multiset comparison is.
"""

from __future__ import annotations

import re
from collections import Counter

_BOUNDARY = re.compile(r"(?<=[.?!])\s+")


def split_sentences(text: str) -> list[str]:
    parts = [part.strip() for part in _BOUNDARY.split(text.strip())]
    return [part for part in parts if part]


def normalize_sentence(sentence: str) -> str:
    collapsed = " ".join(sentence.lower().split())
    return collapsed.strip(" \t\"'.,;:!?()[]")


def sentence_multiset(sentences: list[str]) -> Counter:
    return Counter(normalize_sentence(s) for s in sentences)


def same_sentences(left: list[str], right: list[str]) -> bool:
    return sentence_multiset(left) == sentence_multiset(right)
