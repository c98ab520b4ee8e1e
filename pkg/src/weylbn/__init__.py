"""Exact-arithmetic root systems, Weyl-group combinatorics, and finite
Tits-system (BN-pair) verification."""

from .rootsys import (
    RootSystem,
    RootSystemSpec,
    branch_node,
    build_root_system,
    coxeter_matrix,
    dynkin_path,
    is_end_node,
    nondivisible_core,
    reduced_form,
    reflect,
)
from .weyl import (
    WeylElement,
    act_on_weight,
    element_of,
    fundamental_weight,
    is_minus_one,
    length,
    longest_element,
    reduced_words,
    simple_reflection,
)
from .cosets import (
    DoubleCosetReport,
    ParabolicChoice,
    WitnessReport,
    double_coset_count,
    double_coset_count_naive,
    double_coset_sweep,
    end_node_weight_sets,
    parabolic_orbit,
    root_count_gap_check,
    third_coset_witness,
    w0_negation_map,
)
from .fingrp import (
    FiniteGroup,
    GroupAction,
    affine_group,
    central_quotient,
    fitting_subgroup,
    is_2transitive,
    projective_space_action,
    special_linear_group,
)
from .titssys import (
    ClassificationFlags,
    TitsReport,
    TitsSystemCandidate,
    check_axioms,
    classify,
    psl3_f2_nonstandard_system,
    rank1_from_2transitive,
    sl_rank1_column_system,
    standard_sl_system,
    star_property_check,
)

__all__ = [
    "ClassificationFlags",
    "DoubleCosetReport",
    "FiniteGroup",
    "GroupAction",
    "ParabolicChoice",
    "RootSystem",
    "RootSystemSpec",
    "TitsReport",
    "TitsSystemCandidate",
    "WeylElement",
    "WitnessReport",
    "act_on_weight",
    "affine_group",
    "branch_node",
    "build_root_system",
    "central_quotient",
    "check_axioms",
    "classify",
    "coxeter_matrix",
    "double_coset_count",
    "double_coset_count_naive",
    "double_coset_sweep",
    "dynkin_path",
    "element_of",
    "end_node_weight_sets",
    "fitting_subgroup",
    "fundamental_weight",
    "is_2transitive",
    "is_end_node",
    "is_minus_one",
    "length",
    "longest_element",
    "nondivisible_core",
    "parabolic_orbit",
    "projective_space_action",
    "psl3_f2_nonstandard_system",
    "rank1_from_2transitive",
    "reduced_form",
    "reduced_words",
    "reflect",
    "root_count_gap_check",
    "simple_reflection",
    "sl_rank1_column_system",
    "special_linear_group",
    "standard_sl_system",
    "star_property_check",
    "third_coset_witness",
    "w0_negation_map",
]
__version__ = "0.1.0"
