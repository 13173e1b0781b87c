"""Exact symbolic engine for the *-algebra presented by the magic-unitary
relations."""

from qperm.ncalg.coeff import QQi
from qperm.ncalg.parser import ParseError, format_polynomial, parse_expression
from qperm.ncalg.poly import (
    NCPolynomial,
    column_sum,
    comultiply_leg,
    evaluate,
    row_sum,
)
from qperm.ncalg.rewrite import (
    check_identity,
    coassoc_check_symbolic,
    collapse_sums,
    delta,
    normal_form,
    normal_form_steps,
    technical_lemma_identity,
)

__all__ = [
    "NCPolynomial", "ParseError", "QQi", "check_identity", "coassoc_check_symbolic",
    "collapse_sums", "column_sum", "comultiply_leg", "delta", "evaluate",
    "format_polynomial", "normal_form", "normal_form_steps", "parse_expression",
    "row_sum", "technical_lemma_identity",
]
