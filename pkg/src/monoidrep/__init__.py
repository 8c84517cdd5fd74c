"""Finite regular and inverse monoids, their Green's-relation structure, and
exact-rational irreducible representations via reduction and induction."""

from .elements import (
    ClosureCapError,
    DegreeMismatchError,
    ElementParseError,
    FiniteMonoid,
    PartialBijection,
    Permutation,
    Transformation,
    closure,
    cycle_link_format,
    cycle_link_parse,
    full_transformation_monoid,
    product_monoid,
    symmetric_group,
    symmetric_inverse_monoid,
)
from .green import (
    Eggbox,
    GreenClasses,
    JPoset,
    Transversal,
    eggbox,
    green_structure,
    hclass_decompose,
    idempotents,
    jclass_subgroup_iso,
    maximal_subgroup,
    transversal,
)
from .lattice import (
    FiniteLattice,
    GroupAction,
    LatticeError,
    SGLContext,
    SGLElement,
    sgl_context,
    StabilizerPair,
    make_lattice,
    maximal_subgroup_at,
    partition_lattice_report,
    sgl_canonical,
    sgl_monoid,
    sgl_order,
    stabilizers,
    subsets_to_partial_bijection,
)
from .linrep import (
    Matrix,
    Representation,
    RrefResult,
    Subspace,
    VerificationError,
    char_equal,
    commutant_dim,
    direct_sum,
    exterior_power,
    intertwiner_space,
    is_irreducible,
    iso_test,
    kron,
    mapping_rep,
    mapping_rep_by_kind,
    one_dim_invariant_lines,
    outer_tensor,
    parse_representation_payload,
    quotient_rep,
    restrict_rep,
    rref,
    serialize_representation,
    spin,
    trivial_rep,
)
from .specht import (
    SpechtData,
    column_group,
    compositions,
    p_count,
    partitions,
    polytabloid,
    specht_rep,
    standard_tableaux_count,
    tabloid_module,
    tabloids,
    tableaux,
    young_tensor,
)
from .cliffmunn import (
    ApexError,
    CatalogEntry,
    CatalogError,
    InducedRaw,
    ReducedRep,
    SemisimpleReport,
    annihilator,
    apex,
    cm_catalog,
    cm_roundtrip_check,
    composition_leq,
    decompose,
    induce,
    induce_raw,
    induce_sgl,
    reduce_rep,
    renner_permutohedron_catalog,
    semisimple_predicate,
    support_jclasses,
)
