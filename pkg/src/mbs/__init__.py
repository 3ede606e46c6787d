"""Multibranched surfaces: invariants, neighborhoods, and minor calculus.

A multibranched surface is a 2-complex glued from circles (branches) and
compact surfaces with boundary (sectors) along covering maps of the boundary
circles.  This package computes its combinatorial invariants: Euler
characteristic, first homology with torsion, an embeddability obstruction,
genus upper bounds from regular neighborhoods, and a minor order with
canonical forms.
"""

__version__ = "0.1.0"

from .builders import (
    graph_to_mbs,
    obstruction_example,
    one_sector,
    pants_example,
    rose_times_circle,
    seifert_example,
)
from .document import parse, parse_one, serialize, serialize_document
from .errors import (
    DegreeNotOne,
    Disconnected,
    DocumentSyntaxError,
    InternalMismatch,
    MbsError,
    NonorientableSector,
    NotAnAnnulus,
    NotRegular,
    ResultCapExceeded,
    SameBranch,
    SearchBudgetExceeded,
    SemanticError,
    ValidationError,
)
from .homology import (
    FgAbelianGroup,
    IntegerMatrix,
    S3Verdict,
    h1,
    punctured_spine_rank,
    relation_matrix,
    s3_obstruction,
    smith_normal_form,
    spine_graph,
)
from .minors import (
    CanonicalForm,
    MinorCertificate,
    OmegaResult,
    OmegaVerdict,
    all_minors,
    are_isomorphic,
    canonical_form,
    contract_annulus,
    is_minor,
    neighborhood_minor_certificate,
    obstruction_candidate_s3,
    reduce_degree,
    remove_sector,
    replay_certificate,
    standard_decomposition,
    torus_sum,
)
from .neighborhoods import (
    BoundarySurface,
    CircularPermutationSystem,
    DualGraph,
    HeegaardBound,
    SlopeSystem,
    best_genus_upper_bound,
    boundary_surface,
    dual_graph,
    enumerate_permutation_systems,
    genus_upper_bound_heegaard,
    genus_upper_bound_sectors,
    identity_system,
)
from .surfaces import (
    MultibranchedSurface,
    Prebranch,
    Sector,
    branch_degree,
    branch_index,
    connected_components,
    euler_characteristic,
    is_connected,
    is_regular,
    validate,
)

__all__ = [
    "__version__",
    "MultibranchedSurface",
    "Prebranch",
    "Sector",
    "validate",
    "branch_index",
    "branch_degree",
    "is_regular",
    "euler_characteristic",
    "connected_components",
    "is_connected",
    "IntegerMatrix",
    "smith_normal_form",
    "FgAbelianGroup",
    "relation_matrix",
    "spine_graph",
    "punctured_spine_rank",
    "h1",
    "S3Verdict",
    "s3_obstruction",
    "CircularPermutationSystem",
    "SlopeSystem",
    "BoundarySurface",
    "DualGraph",
    "HeegaardBound",
    "identity_system",
    "enumerate_permutation_systems",
    "boundary_surface",
    "dual_graph",
    "genus_upper_bound_sectors",
    "genus_upper_bound_heegaard",
    "best_genus_upper_bound",
    "remove_sector",
    "contract_annulus",
    "reduce_degree",
    "torus_sum",
    "standard_decomposition",
    "CanonicalForm",
    "canonical_form",
    "are_isomorphic",
    "all_minors",
    "is_minor",
    "MinorCertificate",
    "neighborhood_minor_certificate",
    "replay_certificate",
    "OmegaVerdict",
    "OmegaResult",
    "obstruction_candidate_s3",
    "one_sector",
    "seifert_example",
    "pants_example",
    "rose_times_circle",
    "obstruction_example",
    "graph_to_mbs",
    "parse",
    "parse_one",
    "serialize",
    "serialize_document",
    "MbsError",
    "ValidationError",
    "DocumentSyntaxError",
    "SemanticError",
]
