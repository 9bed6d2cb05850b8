"""walkiso: walk-count graph invariants, exact characteristic polynomials,
spectral adjacency reconstruction, and certificate-seeded isomorphism search.
"""

from .charpoly import (
    DeletedCharPolys,
    IntegrityError,
    Polynomial,
    RecoveredInvariants,
    TraceSequence,
    charpoly_direct,
    charpoly_from_traces,
    check_derivative_identity,
    invariants_from_deleted_charpolys,
    power_traces,
    vertex_deleted_charpolys,
)
from .graphs import (
    Graph,
    GraphParseError,
    Permutation,
    SplitMix64,
    apply_permutation,
    complete_graph,
    connected_components,
    contains_triangle,
    cycle_graph,
    fixture_graph,
    induced_subgraph,
    is_connected,
    neighborhood_subgraph,
    parse_edge_list,
    parse_graph6,
    parse_graph_auto,
    path_graph,
    petersen_graph,
    random_graph,
    random_permutation,
    rook_4x4_graph,
    shrikhande_graph,
    write_edge_list,
    write_graph6,
)
from .invariants import (
    DEFAULT_MODULUS,
    Certificate,
    CertificateComparison,
    ExtendedProfile,
    InvariantTable,
    ModularTable,
    certificate,
    compare_certificates,
    extended_profile,
    neighbor_sum_refinement,
    walk_diagonal_table,
    walk_diagonal_table_mod,
    walk_matrix_powers,
)
from .isomatch import (
    DEFAULT_BUDGET,
    IsoConfig,
    IsoResult,
    IsoVerdict,
    SearchStats,
    VertexClasses,
    Witness,
    brute_force_isomorphism,
    find_isomorphism,
    verify_isomorphism,
    vertex_classes,
)
from .reconstruct import (
    NonGenericSpectrumError,
    ReconstructionError,
    ReconstructionResult,
    ReconstructionStatus,
    SolveFailureError,
    Spectrum,
    assign_signs,
    charpoly_has_repeated_roots,
    compute_spectrum,
    reconstruct_adjacency,
    solve_v_squares,
    spectrum_from_charpoly,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
