"""Closed forms for Appell's F1 series via contiguity relations.

The package certifies two-term closed-form ratios F(a+1)/F(a) with exact
rational-function arithmetic and verifies the derived hypergeometric
identities and special values by arbitrary-precision ball arithmetic.
"""

from .balls import Ball, DomainError, PrecCtx, PrecisionError
from .contiguity import ContigRel, ShiftVec, derive_contiguity
from .exact import Poly, PoleError, Rat, RatF, pochhammer_symbolic
from .gammafn import gamma_real, pochhammer_num
from .hyper import (
    EvalResult,
    Params2F1,
    ParamsF1,
    eval_2f1_connection,
    eval_2f1_series,
    eval_f1_double_series,
    eval_f1_terminating,
    gauss_sum,
    goursat_transform,
)
from .quadrature import eval_f1_integral
from .tables import CLOSED_FORM_ROWS, ROWS_BY_ID, SextupleSpec
from .certify import (
    CaseCertificate,
    check_case_vanishing,
    closed_ratio_numeric_check,
    numeric_four_term_check,
    specialize_shift_n,
)
from .dsl import IdentityRecord, eval_expr, load_identity_table, parse_expr, print_expr
from .verify import VerifyReport, verify_all, verify_identity, verify_table1_row

__all__ = [
    "Ball", "DomainError", "PrecCtx", "PrecisionError",
    "ContigRel", "ShiftVec", "derive_contiguity",
    "Poly", "PoleError", "Rat", "RatF", "pochhammer_symbolic",
    "gamma_real", "pochhammer_num",
    "EvalResult", "Params2F1", "ParamsF1",
    "eval_2f1_connection", "eval_2f1_series", "eval_f1_double_series",
    "eval_f1_terminating", "gauss_sum", "goursat_transform", "eval_f1_integral",
    "CLOSED_FORM_ROWS", "ROWS_BY_ID", "SextupleSpec",
    "CaseCertificate", "check_case_vanishing", "closed_ratio_numeric_check",
    "numeric_four_term_check", "specialize_shift_n",
    "IdentityRecord", "eval_expr", "load_identity_table", "parse_expr", "print_expr",
    "VerifyReport", "verify_all", "verify_identity", "verify_table1_row",
]
