"""Finite proposition/realizer structures: construction, canonical forms,
order-theoretic classification, induced structures, and fiber completeness."""

from .appstruct import (
    PAS,
    SubPASPair,
    apply,
    arrow_set,
    check_orbit_theorem,
    find_pairing,
    induce_nested,
    induce_relative,
    induce_sigma,
    is_totally_matching,
    magma_posetal_check,
    orbit_condition,
    pas_preorder_witness,
)
from .canonical import (
    CanonicalForm,
    canonicalize,
    compare,
    degree,
    equivalent,
    is_p_structure,
    observed_pointwise_cutoff,
    pumping_structures,
    reduce_dominated,
    structure_of,
)
from .catalog import (
    GeneratorSpec,
    all_pas,
    all_pr_structures,
    enumerate_structures,
    random_pas,
    random_pr_structures,
    sigma_from_bin,
    sigma_n,
    two_element_lattical,
)
from .completeness import (
    IncompletenessCertificate,
    RemarkReport,
    SupremumResult,
    fiber_relation,
    find_supremum,
    has_supremum,
    incompleteness_witness,
    is_fiber_complete,
    nonrepresentable_function,
    remark_check,
)
from .core import (
    BinRel,
    FamilyPair,
    PRStructure,
    bin_rel,
    entails,
    entails_indexed,
    entails_pairset,
    family_witnesses,
    is_partitioned,
    pr_structure,
    reindex,
    rho_inverse,
)
from .errors import (
    BudgetExceededError,
    MalformedInputError,
    PreconditionError,
    PRKitError,
    TheoremViolation,
)
from .order import (
    BoundsWitness,
    FiberReport,
    Monoid,
    PreorderWitness,
    check_fiber,
    extract_monoid,
    fibers_distributive_up_to,
    fibers_lattical_up_to,
    find_bounds_witness,
    find_preorder_witness,
    is_bounded_posetal,
    is_posetal,
    is_preorderal,
    p_structure_sufficient_bottom,
    p_structure_sufficient_top,
    partitioned_posetal_p_check,
)

__version__ = "0.1.0"
