"""Python bindings for the pqsurf library.

Rational values come back as fractions.Fraction; singularity types, baskets
and signatures are passed as the strings the command line tool accepts.
"""

from ._pqsurf import (
    PqsurfError,
    basket_admissible,
    basket_invariants,
    classify,
    curve_genus,
    dual_type,
    enumerate_baskets,
    enumerate_signatures,
    hj_expand,
    robavecchia_filter,
    run_cli,
    sing_invariants,
    theta,
    verify_tables,
)

__all__ = [
    "PqsurfError",
    "basket_admissible",
    "basket_invariants",
    "classify",
    "curve_genus",
    "dual_type",
    "enumerate_baskets",
    "enumerate_signatures",
    "hj_expand",
    "robavecchia_filter",
    "run_cli",
    "sing_invariants",
    "theta",
    "verify_tables",
]
