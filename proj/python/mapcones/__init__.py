"""Cones of positive maps on M_n and their one-parameter semigroups."""

from ._core import (  # noqa: F401
    DimensionError,
    NumericError,
    SchemaError,
    SuperOp,
    UnsupportedConstruction,
    build_gksl,
    compression_idempotent,
    conditional_positivity,
    dual_pairing,
    entry_time,
    exp_idempotent,
    family_choi_eigs,
    family_evolve,
    family_is_cp,
    family_superop,
    gksl_decompose,
    hs_inner,
    is_cp,
    is_cp_generator,
    is_eb,
    is_k_positive_01,
    is_k_positive_10,
    is_k_positive_witnessed,
    is_ppt,
    k_positive_generator_witnessed,
    kraus_rank_bound,
    lift_block_map,
    pairing_with_ray,
    positive_generator_m2,
    semigroup_split,
    superop_distance,
    superop_from_json,
    superop_to_json,
    unitality_relations_check,
)

__all__ = [
    "DimensionError",
    "NumericError",
    "SchemaError",
    "SuperOp",
    "UnsupportedConstruction",
    "build_gksl",
    "compression_idempotent",
    "conditional_positivity",
    "dual_pairing",
    "entry_time",
    "exp_idempotent",
    "family_choi_eigs",
    "family_evolve",
    "family_is_cp",
    "family_superop",
    "gksl_decompose",
    "hs_inner",
    "is_cp",
    "is_cp_generator",
    "is_eb",
    "is_k_positive_01",
    "is_k_positive_10",
    "is_k_positive_witnessed",
    "is_ppt",
    "k_positive_generator_witnessed",
    "kraus_rank_bound",
    "lift_block_map",
    "pairing_with_ray",
    "positive_generator_m2",
    "semigroup_split",
    "superop_distance",
    "superop_from_json",
    "superop_to_json",
    "unitality_relations_check",
]
