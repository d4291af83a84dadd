"""Exact WZ-pair verification and a mechanized Chaundy-Bullard proof.

Everything is computed over the rationals (``fractions.Fraction``); there
is no floating point anywhere in the kernel.
"""

from .discovery import Ansatz, default_ansatz, discover
from .dsl import compile_term, parse_cert, parse_term, term_from_source
from .errors import (
    BaseNotParameterOnly,
    BothZero,
    DegenerateTerm,
    DivisionByZero,
    IncompatibleShifts,
    NoCertificate,
    NonAffineExponent,
    NotWZPair,
    ParseError,
    PathPole,
    PoleHit,
    UnsupportedShift,
    WZError,
    XPole,
    ZeroDenominator,
)
from .hyperterm import (
    HyperTerm,
    LatticePoint,
    eval_column,
    eval_numeric,
    eval_point,
    eval_row,
    make_term,
)
from .linsolve import linsolve
from .poly import MultiPoly, poly_arith, poly_gcd, poly_lcm
from .ratfunc import RationalFunction, rf_arith, rf_normalize, substitute
from .wz import (
    ProofTrace,
    WZPair,
    build_proof_trace,
    chaundy_bullard,
    check_boundary,
    initial_row_sum,
    make_pair,
    cb_pair,
    partial_sum_closed_form,
    telescope_check,
    telescope_check_numeric,
    verify_pair,
    verify_pair_numeric,
)

__version__ = "0.1.0"

import types as _types

__all__ = sorted(
    name for name, value in globals().items()
    if not name.startswith("_") and not isinstance(value, _types.ModuleType)
)
