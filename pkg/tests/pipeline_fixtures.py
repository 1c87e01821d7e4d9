"""Reusable scripted instance + mock scripts for pipeline-level tests.

Matchers key on distinctive template phrases, so entries fire for the
right stage regardless of consumption order.
"""

from __future__ import annotations

from logicweave.pipeline import McqaInstance

CAUSAL_GEN = "Task: extract causal statements."
CAUSAL_JUDGE = "Task: score extracted statements."
CAUSAL_REVISE = "Task: revise extracted statements."
SYMBOLS_GEN_ENHANCED = "different subjects or different quantifiers"
SYMBOLS_GEN_COARSE = "one symbol per predicate"
SYMBOLS_JUDGE = "Task: score extracted propositions and expressions."
SYMBOLS_REVISE = "Task: revise propositions and expressions."
TRANSLATE = "Task: translate implication expressions into natural language."
REORDER = "Task: reorder sentences for stepwise deduction."
REPAIR = "Your previous reply could not be used:"

ALL_FIVE = """Assessment follows.

```
completeness: 5
faithfulness: 5
consistency: 5
relevance: 5
clarity: 5
critique: none
```
"""


def low_scores(critique: str) -> str:
    return f"""```
completeness: 3
faithfulness: 4
consistency: 4
relevance: 5
clarity: 3
critique: {critique}
```
"""


def swan_instance() -> McqaInstance:
    return McqaInstance(
        id="swan-1",
        question="Does Nib stay ashore?",
        context=(
            "All swans in the park are white. "
            "Nib is a swan in the park. "
            "If Nib is white and the pond is frozen, then Nib stays ashore. "
            "The pond is frozen."
        ),
        options=(("True", "True"), ("False", "False"), ("Unknown", "Unknown")),
        gold="True",
    )


SWAN_STATEMENTS = """- All swans in the park are white.
- Nib is a swan in the park.
- If Nib is white and the pond is frozen, then Nib stays ashore.
- The pond is frozen.
"""

SWAN_SYMBOLS = """Propositions:
A: Nib is white
B: the pond is frozen
C: Nib stays ashore
D: something is a swan in the park
E: something is white
F: Nib is a swan in the park

Implication Expressions:
A ∧ B → C
D → E
F → D
"""

# closure of {A∧B→C, D→E, F→D}: ¬D→¬F, ¬E→¬D, ¬E→¬F, F→E
SWAN_TRANSLATIONS = """1. If it is not the case that something is a swan in the park, then it is not the case that Nib is a swan in the park.
2. If it is not the case that something is white, then it is not the case that something is a swan in the park.
3. If it is not the case that something is white, then it is not the case that Nib is a swan in the park.
4. If Nib is a swan in the park, then something is white.
"""

SWAN_REORDERED = """Nib is a swan in the park.
The pond is frozen.
All swans in the park are white.
If Nib is a swan in the park, then something is white.
If it is not the case that something is white, then it is not the case that something is a swan in the park.
If it is not the case that something is white, then it is not the case that Nib is a swan in the park.
If it is not the case that something is a swan in the park, then it is not the case that Nib is a swan in the park.
If Nib is white and the pond is frozen, then Nib stays ashore.
"""


def swan_script() -> list[dict]:
    """Happy path: every judge scores all-5 on round 1."""
    return [
        {"match": CAUSAL_GEN, "completions": [SWAN_STATEMENTS]},
        {"match": CAUSAL_JUDGE, "completions": [ALL_FIVE]},
        {"match": SYMBOLS_GEN_ENHANCED, "completions": [SWAN_SYMBOLS]},
        {"match": SYMBOLS_JUDGE, "completions": [ALL_FIVE]},
        {"match": TRANSLATE, "completions": [SWAN_TRANSLATIONS]},
        {"match": REORDER, "completions": [SWAN_REORDERED]},
    ]
