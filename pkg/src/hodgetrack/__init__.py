"""Homology, Hodge spectra, and persistent harmonic tracking.

The package computes Betti numbers and Laplacian spectra for simplicial
complexes built from point clouds, for hypergraphs via their largest
embedded chain complex, for directed graphs via path homology, and for
directed hypergraphs; over a filtration it follows individual harmonic
generators through births and deaths.
"""

from .complexes import (
    BoundaryBlocks,
    PointCloud,
    SimplicialComplex,
    SpectralReport,
    betti_numbers,
    boundary_matrices,
    canonicalize,
    dirac_matrix,
    laplacian_matrix,
    omission_boundary,
    rips_complex,
    spectral_report,
)
from .digraphs import (
    Digraph,
    PathBasis,
    enumerate_paths,
    path_betti,
    path_boundary_matrices,
    path_laplacian,
)
from .hyperdigraphs import (
    Hyperdigraph,
    hyperdigraph_betti,
    hyperdigraph_boundary,
    hyperdigraph_laplacian,
)
from .hypergraphs import (
    Hypergraph,
    InfimumChainData,
    element_indices,
    embedded_betti,
    hyperedge_indices,
    hypergraph_laplacian,
    infimum_data,
    simplicial_closure,
    split_columns,
    two_color_rips_hypergraph,
)
from .io import (
    CurveRecord,
    InputError,
    ParseError,
    emit_curves,
    format_generators,
    normalize_generators,
    parse_combinatorial,
    parse_point_cloud,
    read_curves,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    ZeroPivotError,
    left_null_space,
    lower_triangular_inverse,
    pivoted_row_echelon,
    pseudo_inverse,
    rank,
    symmetric_eigenvalues,
    triangular_eliminate,
)
from .persistence import (
    BlockBoundary,
    Filtration,
    HarmonicTrack,
    betti_curve,
    build_filtration,
    harmonic_births,
    harmonic_space,
    harmonic_transition,
    persistent_betti,
    persistent_laplacian,
    spectral_gap_curve,
    split_block_boundary,
    track_harmonics,
)

__version__ = "0.1.0"
