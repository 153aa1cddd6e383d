"""Bell-diagonal entanglement witnesses for qudit pairs.

Construction of generalized Choi witnesses of both types, the separable and
PPT state families that probe them, the linear program fixing the critical
white-noise weight, and a classifier that emits verifiable decomposability
and non-decomposability certificates.
"""

from ._backend import BACKEND
from .certifier import (Certificate, SeesawConfig, classify,
                        decomposability_inequality, explicit_decomposition,
                        nd_certify, seesaw_min_product, verify_certificate)
from .errors import (AnalyticUnavailable, DegenerateParameters,
                     DimensionError, EmptyWindow, HermiticityError,
                     Infeasible, NormalizationError, PSDViolation, QwitError,
                     Unbounded, UnsupportedDimension)
from .lp_engine import (AggregatedDistribution, CriticalResult,
                        LinearProgram, aggregate, c_gamma_min_analytic,
                        critical_lp, enumerate_vertices, extreme_points,
                        feasible_polytope, product_distribution, r_critical,
                        simplex_solve, witness_objective)
from .qudit_basis import (bell_basis, bell_projector, bell_projector_pt,
                          bell_state, fourier_matrix, modulation, phase_root,
                          shift)
from .state_families import (PPTFamilyParams, PPTThreshold, SeparableFamily,
                             local_orbit, ppt_state, ppt_threshold_analytic,
                             ppt_threshold_numeric, separable_set1,
                             separable_set2, separable_set3, separable_state)
from .tensor_core import (Tolerance, dagger, frobenius, herm_eigvals, is_psd,
                          kron, min_eig, partial_transpose, projector)
from .witnesses import (BDEWParams, ChoiParams, bdew_assemble,
                        bdew_from_witness, bell_diagonal_coeffs,
                        choi_map_apply, choi_witness, jamiolkowski_witness,
                        necessary_ew_check, probe_product_pair,
                        reduction_witness)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AggregatedDistribution",
    "AnalyticUnavailable",
    "BDEWParams",
    "Certificate",
    "ChoiParams",
    "CriticalResult",
    "DegenerateParameters",
    "DimensionError",
    "EmptyWindow",
    "HermiticityError",
    "Infeasible",
    "LinearProgram",
    "NormalizationError",
    "PPTFamilyParams",
    "PPTThreshold",
    "PSDViolation",
    "QwitError",
    "SeesawConfig",
    "SeparableFamily",
    "Tolerance",
    "Unbounded",
    "UnsupportedDimension",
    "aggregate",
    "bdew_assemble",
    "bdew_from_witness",
    "bell_basis",
    "bell_diagonal_coeffs",
    "bell_projector",
    "bell_projector_pt",
    "bell_state",
    "c_gamma_min_analytic",
    "choi_map_apply",
    "choi_witness",
    "classify",
    "critical_lp",
    "dagger",
    "decomposability_inequality",
    "enumerate_vertices",
    "explicit_decomposition",
    "extreme_points",
    "feasible_polytope",
    "fourier_matrix",
    "frobenius",
    "herm_eigvals",
    "is_psd",
    "jamiolkowski_witness",
    "kron",
    "local_orbit",
    "min_eig",
    "modulation",
    "nd_certify",
    "necessary_ew_check",
    "partial_transpose",
    "phase_root",
    "ppt_state",
    "ppt_threshold_analytic",
    "ppt_threshold_numeric",
    "probe_product_pair",
    "product_distribution",
    "projector",
    "r_critical",
    "reduction_witness",
    "seesaw_min_product",
    "separable_set1",
    "separable_set2",
    "separable_set3",
    "separable_state",
    "shift",
    "simplex_solve",
    "verify_certificate",
    "witness_objective",
]
