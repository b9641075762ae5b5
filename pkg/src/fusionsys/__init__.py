"""Saturated fusion systems over small finite p-groups.

Construction of group fusion systems and generated subsystems, full
classification of subgroups, saturation deciders, normal subsystems and
components, morphism labelings with their induced subsystems, and
normalizers of commuting families.
"""

from .errors import (
    BudgetExceeded,
    ChainNotInvariant,
    ClosureBudgetExceeded,
    Constrained,
    FusionError,
    HNotClosedUnderOvergroups,
    HNotConjugacyClosed,
    HypothesisFailed,
    IncompleteEnumeration,
    InvalidPermutation,
    MalformedH,
    NotAHomomorphism,
    NotCentral,
    NotCommuting,
    NotFullyNormalized,
    NotInH,
    NotIsomorphism,
    NotSaturated,
    NotSaturatedInput,
    NotSubsystem,
    PremiseFailed,
)
from .groups import (
    AutomorphismGroup,
    FiniteGroup,
    GroupMap,
    Subgroup,
    automorphism_group,
    centralizer,
    center,
    certify_Op_membership,
    conjugate_subgroup,
    conjugation_map,
    full_subgroup,
    generated_subgroup,
    hom_G,
    normalizer,
    O_p,
    quotient_group,
    subgroup_lattice,
    sylow_p,
    sylow_via_hom,
    trivial_subgroup,
)
from .fusion import (
    FusionMorphism,
    FusionSystem,
    SubgroupLattice,
    assert_valid_fusion_system,
    fusion_from_conjugation_maps,
    fusion_of_group,
    generate_fusion,
    inner_fusion,
    is_subsystem,
    subsystem_on_lattice,
    system_to_dict,
    transport,
    transport_by_automorphism,
)
from .classify import (
    CentralQuotient,
    SubgroupClassification,
    alperin_generates,
    center_of,
    central_extension_subsystem,
    centric_radical_indices,
    classify_subgroup,
    focal_subgroup,
    is_H_generated,
    is_H_saturated,
    is_saturated,
    is_saturated_sylow_extension,
    quotient_central,
    receptivity_transfer_check,
    saturation_criterion,
    strongly_closed_indices,
)
from .normal import (
    NormalityReport,
    components_of,
    enumerate_normal_subsystems,
    group_components,
    is_constrained,
    is_normal,
    is_normal_p_subgroup,
    is_quasisimple,
    is_subnormal,
    lemma_normality_in_intermediate,
    normal_p_core,
    simplicity_verdict,
    strong_invariance_check,
)
from .labeling import (
    MorphismLabeling,
    build_labeling,
    labeling_property_suite,
    saturation_normality_matrix,
    subsystem_property_suite,
    trivial_labeling,
)
from .normalizers import (
    CommutingFamily,
    NormalizerPair,
    build_family,
    central_product,
    commute_check,
    construct_normalizers,
    factor_criteria_check,
    factor_permutation_of,
    indecomposability_check,
    induced_labeling,
    product_structure_suite,
    subfamily_normality_suite,
    verify_component_normalizer_pipeline,
    verify_normalizer_theorem,
)
from .bigperm import BigPermGroup, fusion_of_big_group, subsystem_of_subgroup

__version__ = "0.1.0"
