"""netsym: network symmetry detection, compression and spectral analysis."""

from .automorphism import (
    GeneratorSet,
    OrderedPartition,
    Permutation,
    export_generators,
    find_generators,
    group_order,
    import_generators,
    refine_equitable,
    verify_automorphism,
)
from .compression import (
    Annotation,
    CompressedMeasure,
    average_compress,
    average_decompress,
    compression_ratios,
    lossless_compress,
    lossless_decompress,
    read_container,
    write_container,
)
from .decomposition import (
    GeometricDecomposition,
    SymmetricMotif,
    geometric_decomposition,
    motif_orbits,
    motif_type,
    support,
)
from .errors import ContractError, InternalError, NetsymError, ParseError
from .graph import (
    Graph,
    induced_subgraph,
    largest_connected_component,
    load_edge_list,
    to_edge_list_text,
)
from .measures import (
    DistanceTable,
    MeasureKind,
    MeasureNetwork,
    closeness_quotient,
    communicability,
    degree_quotient,
    eccentricity_quotient,
    eigenvector_centrality,
    laplacian,
    motif_laplacian,
    quotient_commutation_check,
    resistance_distance,
    shortest_paths_quotient,
    vertex_compress,
    vertex_decompress,
)
from .quotient import (
    CharacteristicMap,
    QuotientNetwork,
    basic_characteristic_map,
    basic_quotient,
    characteristic_map,
    orbit_characteristic_map,
    quotient,
    skeleton,
    symmetric_quotient,
    verify_equitable,
)
from .spectral import (
    GOLDEN_RATIO,
    UNWEIGHTED_2ORBIT_SPECTRUM,
    BsmSpectrum,
    SymEigenDecomposition,
    discrete_spectrum_report,
    eig_symmetric,
    laplacian_redundant_1orbit,
    redundant_eigs_1orbit,
    redundant_eigs_2orbit,
    symmetry_eig,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
