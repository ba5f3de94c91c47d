"""Exact solver for cubic Thue-Mahler equations by elliptic-curve descent."""

from .curves import (
    CurveDatabase,
    CurveParseError,
    DatabaseInsufficientError,
    EllipticCurve,
    curves_with_admissible_conductor,
    load_allcurves,
    parse_allcurves,
    short_model,
)
from .descent import (
    BivariatePoly,
    DescentError,
    ScaledPoly,
    SexticFiber,
    c4_poly,
    c6_poly,
    j6_by_division,
    j6_closed_form,
    j24,
    lambda_check,
    twist_factor,
)
from .forms import (
    BinaryCubicForm,
    BinaryQuarticForm,
    PairForm,
    cubic_discriminant,
    pair_c4,
    pair_c6,
    pair_discriminant,
    quartic_I2,
    quartic_I3,
    weierstrass_c_invariants,
)
from .oracle import brute_force
from .solver import (
    DegenerateFormError,
    PrimeSet,
    Solution,
    SolutionSet,
    conductor_bound,
    count_curves,
    is_s_unit,
    rational_roots_sextic,
    solve,
)

__all__ = [
    "BinaryCubicForm",
    "BinaryQuarticForm",
    "BivariatePoly",
    "CurveDatabase",
    "CurveParseError",
    "DatabaseInsufficientError",
    "DegenerateFormError",
    "DescentError",
    "EllipticCurve",
    "PairForm",
    "PrimeSet",
    "ScaledPoly",
    "SexticFiber",
    "Solution",
    "SolutionSet",
    "brute_force",
    "c4_poly",
    "c6_poly",
    "conductor_bound",
    "count_curves",
    "cubic_discriminant",
    "curves_with_admissible_conductor",
    "is_s_unit",
    "j24",
    "j6_by_division",
    "j6_closed_form",
    "lambda_check",
    "load_allcurves",
    "pair_c4",
    "pair_c6",
    "pair_discriminant",
    "parse_allcurves",
    "quartic_I2",
    "quartic_I3",
    "rational_roots_sextic",
    "short_model",
    "solve",
    "twist_factor",
    "weierstrass_c_invariants",
]
