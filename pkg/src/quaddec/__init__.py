"""Exact general quadratic decomposition of monic polynomial sequences."""
from .algebra import Poly, Rational, format_rational, to_rational
from .families import build, paper_classification, paper_extended
from .gqd import (
    GqdResult,
    QuadMap,
    anbn_recurrence,
    classify,
    corollary_check,
    extended_coeffs,
    gqd_direct,
    gqd_orthogonal,
    gqd_structured,
    lambda_theta,
    prop4_check,
)
from .mps import (
    RecurrenceCoeffs,
    RegularityError,
    SeqPrefix,
    StructureCoeffs,
    generate_orthogonal,
    generate_structured,
    is_orthogonal,
    is_symmetric,
)

__version__ = "0.1.0"

__all__ = [
    "GqdResult",
    "Poly",
    "QuadMap",
    "Rational",
    "RecurrenceCoeffs",
    "RegularityError",
    "SeqPrefix",
    "StructureCoeffs",
    "anbn_recurrence",
    "build",
    "classify",
    "corollary_check",
    "extended_coeffs",
    "format_rational",
    "generate_orthogonal",
    "generate_structured",
    "gqd_direct",
    "gqd_orthogonal",
    "gqd_structured",
    "is_orthogonal",
    "is_symmetric",
    "lambda_theta",
    "paper_classification",
    "paper_extended",
    "prop4_check",
    "to_rational",
]
