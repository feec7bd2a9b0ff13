"""Exact LP bounds for robust locally repairable and update-efficient codes.

Everything is computed over GF(q) (q prime) and with exact rationals; no
floating point enters a bound or a feasibility verdict.
"""

from .bounds import (
    BoundRow,
    RlrcParams,
    UpdateParams,
    UpdateVerdict,
    bound_sweep,
    build_full_rlrc_lp,
    build_symmetric_rlrc_lp,
    build_update_feasibility,
    floor_log,
    rlrc_bound,
    update_feasible,
    update_profile,
    verify_necessary_conditions,
    witness_is_feasible,
)
from .code import (
    GuardExceeded,
    LinearCode,
    SupportEnumerator,
    UpdateCode,
    ZeroCodeError,
    bivariate_enumerator,
    code_from_generator,
    code_from_parity_check,
    dual,
    dual_bivariate_enumerator,
    dual_support_enumerator,
    enumerate_codewords,
    min_distance,
    support_enumerator,
    to_update_code,
    verify_update_criteria,
    weight_enumerator,
)
from .field import FieldMatrix, PrimeField, nullspace_basis, rank, rref
from .locality import (
    classical_bounds,
    classify,
    repair_groups,
    repair_supports,
    verify_gr,
    verify_rlr,
    zeta_max,
)
from .macwilliams import (
    bivariate_transform,
    kappa,
    support_transform,
    symmetric_transform,
    symmetrize,
    xi_coefficient,
)
from .ratlp import LpBuilder, LpOutcome, LpProblem, Status, check_assignment, solve, solve_feasibility

__version__ = "0.1.0"

__all__ = [
    "BoundRow", "FieldMatrix", "GuardExceeded", "LinearCode", "LpBuilder", "LpOutcome", "LpProblem",
    "PrimeField", "RlrcParams", "Status", "SupportEnumerator", "UpdateCode", "UpdateParams",
    "UpdateVerdict", "ZeroCodeError", "bivariate_enumerator", "bivariate_transform", "bound_sweep",
    "build_full_rlrc_lp", "build_symmetric_rlrc_lp", "build_update_feasibility", "check_assignment",
    "classical_bounds", "classify", "code_from_generator", "code_from_parity_check", "dual",
    "dual_bivariate_enumerator", "dual_support_enumerator", "enumerate_codewords", "floor_log",
    "kappa", "min_distance", "nullspace_basis", "rank", "repair_groups", "repair_supports",
    "rlrc_bound", "rref", "solve", "solve_feasibility", "support_enumerator", "support_transform",
    "symmetric_transform", "symmetrize", "to_update_code", "update_feasible", "update_profile",
    "verify_gr", "verify_necessary_conditions", "verify_rlr", "verify_update_criteria",
    "weight_enumerator", "witness_is_feasible", "xi_coefficient", "zeta_max",
]
