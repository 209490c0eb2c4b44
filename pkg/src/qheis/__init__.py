"""Exact symbolic engine and numeric spectral lab for the q-deformed
Heisenberg algebra: normal forms under a confluent rewrite system,
the Lie/non-Lie decomposition and compactness tests, Laurent-polynomial
images modulo compact operators, nested-commutator identity verification,
and a truncated weighted-shift realization for norm and spectrum checks.
"""

from .algebra import (
    A,
    B,
    BasisWord,
    C,
    COMPLETED,
    Element,
    I,
    PRINTED,
    StuckWordError,
    ad_power,
    adjoint,
    bracket,
    element_power,
    multiply,
    multiply_cascade,
    normalize,
    reduce_word,
)
from .ratfun import PoleError, QPolynomial, RatFun, qbracket
from .rewrite import RuleSet, check_confluence, list_ambiguities

__all__ = [
    "A",
    "B",
    "BasisWord",
    "C",
    "COMPLETED",
    "Element",
    "I",
    "PRINTED",
    "PoleError",
    "QPolynomial",
    "RatFun",
    "RuleSet",
    "StuckWordError",
    "ad_power",
    "adjoint",
    "bracket",
    "check_confluence",
    "element_power",
    "list_ambiguities",
    "multiply",
    "multiply_cascade",
    "normalize",
    "qbracket",
    "reduce_word",
]

__version__ = "0.1.0"
