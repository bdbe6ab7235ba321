"""Perfect difference sets and the power-sum inf-max problem.

The library constructs, verifies, searches for, and characterizes the global
minimizers of max over nu = 1 .. n^2-n of |sum z_k^nu| on unimodular
n-tuples: minimizers are exactly the lattice tuples built on perfect
difference sets of order n-1, and exist iff such a set does.
"""

from .gf import GfElement, GfField, element_order, is_irreducible, make_field, primitive_element
from .minimax import OptimizerConfig, OptimizerReport, minimize, objective, smoothed_objective, smoothed_objective_gradient
from .pds import (
    CanonicalForm,
    FeasibilityReport,
    PerfectDifferenceSet,
    SearchResult,
    bruck_ryser_excludes,
    canonical_form,
    enumerate_all,
    exhaustive_search,
    feasibility,
    singer_construct,
    verify,
    wilbrink_excludes,
)
from .sums import (
    DifferenceSpectrum,
    PowerSumProfile,
    RecoveryResult,
    RecoveryStatus,
    UnimodularTuple,
    difference_spectrum,
    exact_abs_squared,
    fabrykowski_tuple,
    fejer_certificate,
    fejer_kernel,
    is_regular_ngon,
    newton_girard_coeffs,
    power_sums,
    recover_structure,
)

__version__ = "0.1.0"

__all__ = [
    "GfField", "GfElement", "make_field", "primitive_element", "element_order",
    "is_irreducible",
    "PerfectDifferenceSet", "CanonicalForm", "FeasibilityReport", "SearchResult",
    "verify", "singer_construct", "canonical_form", "exhaustive_search",
    "enumerate_all", "feasibility", "bruck_ryser_excludes", "wilbrink_excludes",
    "UnimodularTuple", "PowerSumProfile", "DifferenceSpectrum", "RecoveryResult",
    "RecoveryStatus", "power_sums", "fejer_kernel", "fejer_certificate",
    "newton_girard_coeffs", "is_regular_ngon", "fabrykowski_tuple",
    "exact_abs_squared", "difference_spectrum", "recover_structure",
    "OptimizerConfig", "OptimizerReport", "objective", "smoothed_objective",
    "smoothed_objective_gradient", "minimize",
]
