"""Finite q-cycle sets and left non-degenerate set-theoretic Yang-Baxter solutions.

Construction, verification, bidirectional conversion, retraction, dynamical
and semidirect extensions, covering factorization, simplicity testing, and
exhaustive enumeration up to isomorphism, over carriers {0, ..., n-1}.
"""

from .analysis import (
    BudgetExceeded,
    GenPermGroup,
    IllDefined,
    NotInvariant,
    NotNonDegenerate,
    NotRegular,
    QuotientNotQCycleSet,
    RetractQuotient,
    close_permutations,
    eta_maps,
    is_irretractable,
    perm_group,
    permutation_orbits,
    restrict_to_invariant,
    retract,
    retract_matches_lambda_rho,
    retract_solution,
    retract_tower,
)
from .core import (
    DegreeMismatch,
    InvalidStructure,
    NotLeftNonDegenerate,
    QCycleError,
    QCycleSet,
    SolutionMap,
    VerificationReport,
    Violation,
    are_isomorphic,
    canonical_form,
    dumps_canonical,
    is_bijective_solution,
    is_cycle_set,
    is_left_nondeg,
    is_nondegenerate,
    is_regular,
    is_right_nondeg,
    qcs_from_obj,
    qcs_to_obj,
    qcs_to_solution,
    relabel,
    solution_from_obj,
    solution_to_obj,
    solution_to_qcs,
    solution_power_eq,
    squaring_maps,
    verify_qcycle,
    verify_solution,
)
from .enumeration import (
    CapExceeded,
    EnumFilter,
    EnumResult,
    WorkUnit,
    enumerate_qcs,
    enumerate_solutions,
    naive_enumerate_qcs,
    split_search,
)
from .extensions import (
    CompatibilityFailed,
    CongruencePartition,
    CoveringMap,
    DynamicalPair,
    FactoredCovering,
    InvalidCovering,
    InvalidPair,
    NotAGroup,
    NotAutomorphism,
    NotCycleSet,
    NotEndomorphism,
    NotLeftQuasiNormal,
    automorphism_group,
    build_extension,
    constant_cocycle_pair,
    enumerate_congruences,
    extension_equivalence,
    factor_covering,
    is_simple,
    kernel_partition,
    quasinormal_base,
    quasinormal_pair,
    semibrace_base,
    semibrace_pair,
    semidirect_product,
    trivial_pair,
    verify_covering,
    verify_dynamical_pair,
    z_example_witness,
)
from .fixtures import Fixture, check_fixture, fixture_by_name, fixture_catalog
from .perm import (
    Perm,
    compose as perm_compose,
    cycle_type,
    from_cycles,
    identity as perm_identity,
    inverse as perm_inverse,
    is_permutation,
    perm_order,
)

__version__ = "0.1.0"
