"""Geometric connectedness of projective schemes over finite fields.

The number of connected components of Proj(A/I) over the algebraic closure
is read off the F-stable part of the Frobenius action on [H^1_m(A/I)]_0.
"""

from .cli import ProblemSpec, RunReport, parse_problem_file, run_oracle, run_pipeline
from .field import GF, FieldElement, FiniteField
from .groebner import Ideal, GroebnerBasis, krull_dimension, saturate_irrelevant
from .poly import Polynomial, PolynomialRing

__all__ = [
    "GF",
    "FieldElement",
    "FiniteField",
    "GroebnerBasis",
    "Ideal",
    "Polynomial",
    "PolynomialRing",
    "ProblemSpec",
    "RunReport",
    "krull_dimension",
    "parse_problem_file",
    "run_oracle",
    "run_pipeline",
    "saturate_irrelevant",
]
