"""Exact-arithmetic toolkit for finite-dimensional nonassociative algebras."""

from .algebra import (
    AlgebraTable,
    Element,
    LinearMap,
    associator,
    check_identity,
    direct_sum,
    ideal_closure,
    invert_element,
    is_division_algebra,
    is_ideal,
    quotient_algebra,
    split_null_extension,
)
from .constructions import (
    albert_type,
    cayley_dickson,
    cd_conjugate,
    cd_norm,
    cd_trace,
    diagonal_spin_factor,
    gamma_involution,
    hermitian_subalgebra,
    involution_check,
    matrix_algebra,
    plus_algebra,
    spin_factor,
)
from .derivations import (
    DerivationSpace,
    DivReport,
    ReductionResult,
    albert_div_witness,
    construct_spin_div,
    derivation_space,
    div_reduction,
    div_search,
    enumerate_ideals,
    extend_derivation_diagonal,
    extend_derivation_eps,
    has_invertible_values,
    inner_assoc_derivation,
    is_derivation,
    largest_ideal_in_kernel,
    sample_derivation,
    simplicity_scan,
    spin_div_criterion,
)
from .fields import Field, RATIONALS, Scalar, parse_field, prime_field
from .formats import (
    format_element,
    parse_element,
    read_algebra,
    read_map,
    write_algebra,
    write_map,
)
from .jordan import (
    albert_norm,
    albert_slots,
    is_idempotent,
    jordan_inverse,
    left_multiplication,
    peirce_frame,
    peirce_single,
    power,
    spin_norm,
)
from .linalg import Matrix, Subspace, diagonalize_symmetric_form

__all__ = [
    "AlgebraTable",
    "Element",
    "LinearMap",
    "associator",
    "check_identity",
    "direct_sum",
    "ideal_closure",
    "invert_element",
    "is_division_algebra",
    "is_ideal",
    "quotient_algebra",
    "split_null_extension",
    "albert_type",
    "cayley_dickson",
    "cd_conjugate",
    "cd_norm",
    "cd_trace",
    "diagonal_spin_factor",
    "gamma_involution",
    "hermitian_subalgebra",
    "involution_check",
    "matrix_algebra",
    "plus_algebra",
    "spin_factor",
    "DerivationSpace",
    "DivReport",
    "ReductionResult",
    "albert_div_witness",
    "construct_spin_div",
    "derivation_space",
    "div_reduction",
    "div_search",
    "enumerate_ideals",
    "extend_derivation_diagonal",
    "extend_derivation_eps",
    "has_invertible_values",
    "inner_assoc_derivation",
    "is_derivation",
    "largest_ideal_in_kernel",
    "sample_derivation",
    "simplicity_scan",
    "spin_div_criterion",
    "Field",
    "RATIONALS",
    "Scalar",
    "parse_field",
    "prime_field",
    "format_element",
    "parse_element",
    "read_algebra",
    "read_map",
    "write_algebra",
    "write_map",
    "albert_norm",
    "albert_slots",
    "is_idempotent",
    "jordan_inverse",
    "left_multiplication",
    "peirce_frame",
    "peirce_single",
    "power",
    "spin_norm",
    "Matrix",
    "Subspace",
    "diagonalize_symmetric_form",
]
