"""Exact local computations for isolated hypersurface singularities.

Sparse polynomial arithmetic over Q and F_p, local standard bases (Mora),
Milnor/Tjurina numbers, Newton diagrams and weight polytopes, piecewise
valuations, expected-valuation graded algebras with their finiteness and
exactness conditions, inner non-degeneracy, determinacy bounds and normal
forms with respect to right and contact equivalence.
"""

from possing.poly import Ring, Poly, Derivation, Automorphism, INFINITY
from possing.localalg import (
    OrderingSpec,
    StandardBasis,
    QuotientReport,
    std_basis,
    vdim,
    milnor,
    tjurina,
    min_power_containment,
    ideal_membership,
    saturate,
)
from possing.newton import (
    NewtonData,
    CPolytope,
    Face,
    newton_diagram,
    cpolytope_from_weights,
    cpolytope_from_poly,
    valuation,
    valuation_derivation,
    initial_form,
    inner_faces,
)
from possing.grading import (
    Grading,
    GradedPieceReport,
    RegularBasisResult,
    graded_piece,
    regular_basis,
    vanishes_in_gr,
    check_condition,
    ray_criterion,
)
from possing.nondeg import (
    QHType,
    SQHReport,
    INNDReport,
    detect_qh,
    sqh_check,
    innd_check,
    saito_check,
)
from possing.normalform import (
    DeterminacyReport,
    NormalFormResult,
    determinacy_generic,
    determinacy_filtered,
    normal_form,
    reduce_step,
)

__all__ = [
    "Ring",
    "Poly",
    "Derivation",
    "Automorphism",
    "INFINITY",
    "OrderingSpec",
    "StandardBasis",
    "QuotientReport",
    "std_basis",
    "vdim",
    "milnor",
    "tjurina",
    "min_power_containment",
    "ideal_membership",
    "saturate",
    "NewtonData",
    "CPolytope",
    "Face",
    "newton_diagram",
    "cpolytope_from_weights",
    "cpolytope_from_poly",
    "valuation",
    "valuation_derivation",
    "initial_form",
    "inner_faces",
    "Grading",
    "GradedPieceReport",
    "RegularBasisResult",
    "graded_piece",
    "regular_basis",
    "vanishes_in_gr",
    "check_condition",
    "ray_criterion",
    "QHType",
    "SQHReport",
    "INNDReport",
    "detect_qh",
    "sqh_check",
    "innd_check",
    "saito_check",
    "DeterminacyReport",
    "NormalFormResult",
    "determinacy_generic",
    "determinacy_filtered",
    "normal_form",
    "reduce_step",
]

__version__ = "0.1.0"
