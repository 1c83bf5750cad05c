"""Exact-arithmetic engine for delta-matroids, looped graphs, and bouquets.

Computes twist polynomials and partial-dual Euler-genus polynomials by
independent routes and cross-checks every recursion, closed form, and
identity at desk scale.  Everything is exact: GF(2) bit arithmetic,
arbitrary-precision integers, and rationals; no floating point anywhere.
"""

from .deltamatroid import (
    SetSystem,
    check_symmetric_exchange,
    find_nearest_feasible,
    from_graph,
    parse_set_system,
    to_graph,
    width_restriction_check,
)
from .errors import DeltaTwistError, NonzeroRemainder, TooLarge
from .gf2 import (
    DetIdentityCheck,
    Gf2Matrix,
    Gf2SymMatrix,
    IntMatrix,
    JoinBlocks,
    assemble_join,
    check_det_identity,
    det_gf2,
    det_int,
    max_nonsingular_principal_order,
    principal_submatrix,
    rank_gf2,
)
from .graphs import LoopedGraph, generate, parse_graph
from .poly import IntPoly, Rational, Z
from .ribbon import Bouquet, parse_bouquet, random_bouquet
from .twistpoly import (
    JoinRecursionInput,
    closed_form_complete,
    closed_form_windmill,
    dm_leaf_recursion,
    join_coefficients,
    join_recursion_looped,
    join_recursion_unlooped,
    leaf_recursion,
    loopcomp_formula,
    minus_half_defect,
    twist_poly_graph,
    twist_poly_setsystem,
)
from .verify import VerifyReport, identity_names, run_all, run_identity

__version__ = "0.1.0"

__all__ = [
    "Bouquet",
    "DeltaTwistError",
    "DetIdentityCheck",
    "Gf2Matrix",
    "Gf2SymMatrix",
    "IntMatrix",
    "IntPoly",
    "JoinBlocks",
    "JoinRecursionInput",
    "LoopedGraph",
    "NonzeroRemainder",
    "Rational",
    "SetSystem",
    "TooLarge",
    "VerifyReport",
    "Z",
    "assemble_join",
    "check_det_identity",
    "check_symmetric_exchange",
    "closed_form_complete",
    "closed_form_windmill",
    "det_gf2",
    "det_int",
    "dm_leaf_recursion",
    "find_nearest_feasible",
    "from_graph",
    "generate",
    "identity_names",
    "join_coefficients",
    "join_recursion_looped",
    "join_recursion_unlooped",
    "leaf_recursion",
    "loopcomp_formula",
    "max_nonsingular_principal_order",
    "minus_half_defect",
    "parse_bouquet",
    "parse_graph",
    "parse_set_system",
    "principal_submatrix",
    "random_bouquet",
    "rank_gf2",
    "run_all",
    "run_identity",
    "to_graph",
    "twist_poly_graph",
    "twist_poly_setsystem",
    "width_restriction_check",
]
