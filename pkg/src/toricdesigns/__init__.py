"""Projective toric designs, B_t difference sets and quantum state designs."""

__version__ = "0.1.0"

from .errors import DomainError, ResourceError, ToricDesignError, UsageError
from .finite_field import (
    FieldElement,
    FieldSpec,
    dlog_table,
    field_arith,
    find_irreducible,
    find_primitive,
    is_irreducible,
    make_field,
)
from .combinatorics import crystal_ball, enumerate_Pst, enumerate_St, min_design_size
from .difference_sets import (
    BtSet,
    bt_size_bound_check,
    search_sidon,
    singer_bt_set,
    sum_set,
    verify_bt,
)
from .toric_designs import (
    VerificationReport,
    WeightedPhaseSet,
    drop_coordinate,
    gram_check,
    grid_design,
    group_design_from_bt,
    is_minimal,
    quadratic_prime_design,
    verify_design,
)
from .quantum_designs import (
    SimplexDesign,
    StateDesign,
    almost_minimal_2design,
    concatenate,
    frame_potential,
    moment_tensor_check,
    simplex_two_design,
)
from .approx_designs import (
    ApproxExperiment,
    max_deviation,
    required_M,
    run_experiment,
    sample_uniform,
)

__all__ = [
    "__version__",
    "DomainError",
    "ResourceError",
    "ToricDesignError",
    "UsageError",
    "FieldElement",
    "FieldSpec",
    "dlog_table",
    "field_arith",
    "find_irreducible",
    "find_primitive",
    "is_irreducible",
    "make_field",
    "crystal_ball",
    "enumerate_Pst",
    "enumerate_St",
    "min_design_size",
    "BtSet",
    "bt_size_bound_check",
    "search_sidon",
    "singer_bt_set",
    "sum_set",
    "verify_bt",
    "VerificationReport",
    "WeightedPhaseSet",
    "drop_coordinate",
    "gram_check",
    "grid_design",
    "group_design_from_bt",
    "is_minimal",
    "quadratic_prime_design",
    "verify_design",
    "SimplexDesign",
    "StateDesign",
    "almost_minimal_2design",
    "concatenate",
    "frame_potential",
    "moment_tensor_check",
    "simplex_two_design",
    "ApproxExperiment",
    "max_deviation",
    "required_M",
    "run_experiment",
    "sample_uniform",
]
