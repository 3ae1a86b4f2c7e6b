"""Exact-rational pseudo-Boolean function algebra, hardness classifiers, and
a perfect-matching estimator for nonnegative-Fourier binary counting."""

from .classify import (
    RelTag,
    RelTrichotomy,
    TwoSpinTag,
    TwoSpinVerdict,
    UpDownTag,
    UpDownVerdict,
    classify_relations,
    classify_two_spin,
    classify_with_updown,
)
from .funcs import (
    ARITY_CAP,
    DELTA0,
    DELTA1,
    EQ,
    EQ3,
    IMP,
    NEQ,
    XOR3,
    CapacityError,
    PBFunction,
    ProductForm,
    PropertyReport,
    SignedTable,
    SupportRelation,
    add_fictitious,
    binary,
    bit_flip,
    fourier,
    frac,
    identify,
    in_cp,
    in_sdp3,
    inverse_fourier,
    irredundant,
    is_lsm,
    is_log_modular,
    is_monotone,
    is_pin_monotone,
    is_product_type,
    permute,
    pin,
    pin_monotone_violation,
    product,
    product_form,
    property_report,
    relation_class,
    sum_out,
    support,
    unary,
)
from .gadgets import (
    GadgetError,
    NonLsmBinary,
    PinningTag,
    PinningVerdict,
    PpsFormula,
    UpDownPair,
    approx_pin,
    eval_pps,
    extract_nonlsm_binary,
    make_up_down,
    normalize_unary,
    parse_pps,
    pinning_analysis,
    serialize_pps,
    symmetrize,
)
from .instances import (
    CspInstance,
    HolantConversion,
    HolantInstance,
    InstanceError,
    holographic_transform,
    near_assignment_total,
    parse,
    serialize,
    to_holant,
    z_exact,
    z_product_type,
)
from .matching import (
    Edge,
    EstimateError,
    EstimatorConfig,
    FourierNormalForm,
    WeightedMultigraph,
    build_triangle_graph,
    count_npm_exact,
    count_pm_exact,
    estimate_pm,
    estimate_z_fpras,
    holant_fourier_form,
    integerize,
    lift_instance,
    sdp3_lift,
    serialize_graph,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
