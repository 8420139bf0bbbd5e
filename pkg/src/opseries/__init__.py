"""Exact differential-operator algebra and compositional inversion of series.

Everything is computed over the rationals with explicit truncation
orders, so every identity check in the package is an equality test.
"""

from .combinat import (
    BellPoly,
    IntPartition,
    SetPartition,
    bell_eval_bullet,
    bell_polynomial,
    integer_partitions,
    partition_class_count,
    set_partitions,
    stirling2,
)
from .diffop import (
    DiffOp,
    diamond_chain,
    partition_operator,
    power_diamond,
    subset_operator,
    unit_op,
)
from .multipoly import MultiIndex, MultiPoly
from .series import (
    EgfSeries,
    INVERSE_METHODS,
    InvertibleSeries,
    classical_inverse,
    egf_to_ogf,
    from_json_dict,
    log_form_inverse,
    log_form_terms,
    newton_inverse,
    ogf_to_egf,
    operator_inverse,
    operator_iterate,
    to_json_dict,
)
from .verify import (
    RandomSpec,
    SUITES,
    VerifyReport,
    random_diffop,
    random_invertible_series,
    random_op_list,
    random_vector_field,
    run_suite,
    verify_bell_power,
    verify_composition_split,
    verify_exp_identity,
    verify_exp_identity_xd,
    verify_inversion,
    verify_partition_expansion,
    verify_product_identities,
    verify_stirling_power,
)

__version__ = "0.1.0"

__all__ = [
    "BellPoly",
    "DiffOp",
    "EgfSeries",
    "INVERSE_METHODS",
    "IntPartition",
    "InvertibleSeries",
    "MultiIndex",
    "MultiPoly",
    "RandomSpec",
    "SUITES",
    "SetPartition",
    "VerifyReport",
    "bell_eval_bullet",
    "bell_polynomial",
    "classical_inverse",
    "diamond_chain",
    "egf_to_ogf",
    "from_json_dict",
    "integer_partitions",
    "log_form_inverse",
    "log_form_terms",
    "newton_inverse",
    "ogf_to_egf",
    "operator_inverse",
    "operator_iterate",
    "partition_class_count",
    "partition_operator",
    "power_diamond",
    "random_diffop",
    "random_invertible_series",
    "random_op_list",
    "random_vector_field",
    "run_suite",
    "set_partitions",
    "stirling2",
    "subset_operator",
    "to_json_dict",
    "unit_op",
    "verify_bell_power",
    "verify_composition_split",
    "verify_exp_identity",
    "verify_exp_identity_xd",
    "verify_inversion",
    "verify_partition_expansion",
    "verify_product_identities",
    "verify_stirling_power",
]
