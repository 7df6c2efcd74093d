"""Steiner triple system constructions with an exact symmetry oracle."""

from .system import (
    FormatError,
    PartialTripleSystem,
    PointSet,
    TripleSystem,
    ValidationReport,
    is_subsystem,
    read_system,
    restrict,
    span,
    validate_pstss,
    validate_sts,
    write_system,
)
from .perm import PermutationGroup
from .search import (
    BudgetExceededError,
    IsoCertificate,
    are_isomorphic,
    automorphism_group,
    canonical_form,
    is_automorphism,
)
from .constructions import (
    BlockDesign,
    ConstructionError,
    CyclicLabeling,
    LabelingError,
    MooreInput,
    UnsupportedEmbeddingError,
    base_sts,
    bose,
    direct_product,
    double,
    embed_subsystem,
    is_pg2_paired,
    is_pg2_pointed,
    is_pg3_2pointed,
    label_per_p7,
    lift_v_automorphism,
    moore,
    moore_variant_sigma,
    paired_via_design,
    pg_sts,
    reachable_sizes,
    rigid_sts_search,
    skolem,
)
from .fano import (
    ClassificationError,
    FanoClassification,
    all_vsf,
    classify_fano,
    enumerate_fano,
    recognize_subsystem,
    yv_subsystem,
)
from .params import (
    ParameterError,
    ParameterSolution,
    choose_K,
    corollary26_bounds,
    delta_of,
    global_threshold,
    k_bound_expression,
    n_bound,
    residue_coverage,
    solve_order,
    threshold,
)
from .pstss import (
    BooleanSpace,
    CyclicPstss,
    GadgetQ,
    PstssError,
    ReplacedSystem,
    attach_gadgets,
    boolean_space,
    build_q,
    build_qr,
    check_property_44,
    corollary46_build,
    corollary47_build,
    cyclic_pstss,
    reconstruct_line,
    recover_vprime,
    replace_triples,
)

__version__ = "0.1.0"
