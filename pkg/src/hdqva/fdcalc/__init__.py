"""Exact kernel: Laurent polynomials, linear-form rational functions,
truncated t-series, region expansions, residues and delta distributions."""
from .poly import Poly, Q, sort_vars
from .ratfun import RatFun, normalize_form
from .tseries import TSeries, TVAR
from .expand import ExpansionRegion, LaurentWindow, expand, residue, restrict
from .delta import Distribution, delta_extract, delta_raw, normalize_distribution
from .parse import parse_tseries, parse_ratfun
from .errors import (
    BadPoleStructure,
    FDCalcError,
    NotInvertible,
    PoleAtSubstitution,
    SingularAtDiagonal,
    UnexpandableFactor,
)


def substitute(f, assignments):
    """Substitute variables by integer linear forms, e.g. {"z1": {"z1": 1, "gamma": 1}}."""
    return f.subs(assignments)


__all__ = [
    "Poly", "Q", "RatFun", "TSeries", "TVAR", "ExpansionRegion", "LaurentWindow",
    "expand", "residue", "restrict", "Distribution", "delta_extract", "delta_raw",
    "normalize_distribution", "parse_tseries", "parse_ratfun", "substitute", "sort_vars",
    "normalize_form", "BadPoleStructure", "FDCalcError", "NotInvertible",
    "PoleAtSubstitution", "SingularAtDiagonal", "UnexpandableFactor",
]
