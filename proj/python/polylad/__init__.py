"""Polylogarithm ladders, BBP-type digit extraction and integer relations."""

from ._polylad import (
    CheckReport,
    PolyladError,
    asymp_coeffs,
    check_relation,
    discover,
    eval_expr,
    evaluate,
    formulas,
    hex_digits,
    relations,
    run,
)

__all__ = [
    "CheckReport",
    "PolyladError",
    "asymp_coeffs",
    "check_relation",
    "discover",
    "eval_expr",
    "evaluate",
    "formulas",
    "hex_digits",
    "relations",
    "run",
]
