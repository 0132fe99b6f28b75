"""Scattered linearized polynomials over finite-field towers.

Library layout:

* fieldcore    -- tower arithmetic F_p <= F_q <= F_{q^t} <= F_{q^(2t)}
* linpoly      -- algebra of q^s-linearized polynomials
* scattered    -- scatteredness oracles and linear-set statistics
* quadrinomial -- the four-term family, its condition calculus and witnesses
* mrdcodes     -- rank-metric codes <X, f>, idealizers, stabilizers
* equivalence  -- GL / GammaL equivalence and necessary conditions
* projgeom     -- projective subspaces, the cyclic collineation, intersection numbers
* sweep        -- exhaustive parameter sweeps and the classification harness
"""

from .fieldcore import (
    FieldCtx,
    make_field,
    FieldConstructionError,
    BudgetExceededError,
    DirectSumError,
)
from .linpoly import LinPoly
from .scattered import is_scattered_fiber, is_scattered_roots, linear_set_size
from .quadrinomial import (
    QuadParams,
    build_quadrinomial,
    build_quadrinomial_swapped,
    trace_zero_power_set,
    scattered_conditions,
    prior_family_tag,
    nonscattered_witness,
)
from .mrdcodes import RankCode, stabilizer, standard_form
from .equivalence import gl_equivalent, gammal_equivalent, necessary_conditions
from .projgeom import ProjSubspace, polynomial_vertex, intersection_number

__all__ = [
    "FieldCtx",
    "make_field",
    "FieldConstructionError",
    "BudgetExceededError",
    "DirectSumError",
    "LinPoly",
    "is_scattered_fiber",
    "is_scattered_roots",
    "linear_set_size",
    "QuadParams",
    "build_quadrinomial",
    "build_quadrinomial_swapped",
    "trace_zero_power_set",
    "scattered_conditions",
    "prior_family_tag",
    "nonscattered_witness",
    "RankCode",
    "stabilizer",
    "standard_form",
    "gl_equivalent",
    "gammal_equivalent",
    "necessary_conditions",
    "ProjSubspace",
    "polynomial_vertex",
    "intersection_number",
]
