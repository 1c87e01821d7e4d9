"""logicweave: propositional deduction over LLM-extracted implications.

The package extracts implication structure from natural-language contexts
through scored multi-round LLM feedback, computes the deductive closure of
the extracted expressions with a verified symbolic engine, translates the
derived implications back into prose, and evaluates Direct/CoT/CoT-SC
prompting with and without that augmentation.
"""

__version__ = "0.1.0"
