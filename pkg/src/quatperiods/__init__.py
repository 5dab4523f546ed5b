"""Exact toric periods of algebraic modular forms on definite quaternion
orders, with congruence-based non-vanishing verdicts for prime quadratic
twists and a numeric L-value cross-check.

Six built-in cases cover the discriminant/level pairs (2,1), (2,3), (3,2),
(2,3) at weight 6, (3,1), and (2,5); further class-number-one orders can be
supplied as JSON case files.
"""

from . import cases, embeddings, harmonic, lfunctions, linalg, periods, qseries, quadratic, quaternion
from .cases import Case, CaseContext, case_ids, get_case, get_context
from .periods import Status, Verdict, global_epsilon, verdict

__version__ = "0.1.0"

__all__ = [
    "Case", "CaseContext", "Status", "Verdict",
    "case_ids", "cases", "embeddings", "get_case", "get_context",
    "global_epsilon", "harmonic", "lfunctions", "linalg", "periods",
    "qseries", "quadratic", "quaternion", "verdict",
]
