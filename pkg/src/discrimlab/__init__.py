"""Exact computations on discriminantal arrangements B(n, k, A).

Builds the hyperplanes ``D_L`` from a central generic arrangement, computes
ranks of their intersections over Q, and searches for simple intersections
whose rank is below their multiplicity, certifying them through
(r, s)-dependency.
"""

from .arrangement import (
    CentralArrangement,
    Translate,
    central_subspace,
    common_point,
    is_generic_subset,
    new_arrangement,
    new_translate,
)
from .catalog import braid, crapo, falk, quadrilateral, random_arrangement
from .discriminantal import disc_normal, flat_of, in_DL, is_simple, rank2_census
from .lattice import athanasiadis_condition, expected_rank, set_family, very_generic_upto
from .nvg import (
    certify_rs_dependency,
    enumerate_r_sets,
    find_simple_nvg,
    is_r_set,
    kt_configuration,
    ls_dependency_check,
    witness_translate,
)

__version__ = "0.1.0"
