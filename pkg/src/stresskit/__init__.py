"""stresskit: equilibrium stresses of bar-joint frameworks.

Library + CLI for computing stress spaces, classifying general-position
and locally-full-spanning stresses, parameterizing them via pinned
rubber-band equilibria, constructing PSD stresses from orthogonal
representations, extracting kernel frameworks, and certifying generic
global rigidity, super stability, and corank statistics.
"""

from .errors import (
    ConstructionFailed,
    InvalidInput,
    NotAStress,
    NotAStressMatrix,
    NotCentered,
    NotConnectedEnough,
    NotEquilibrium,
    NumericalError,
    OutsideDomain,
    PinningFailed,
    SpanDeficient,
    StressKitError,
    Unresolvable,
    WrongRank,
)
from .linalg import (
    SubspaceBasis,
    TolerancePolicy,
    cokernel_basis,
    is_psd,
    kernel_basis,
    numeric_rank,
)
from .graphs import (
    Graph,
    builtin_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    find_clique,
    load_graph,
    path_graph,
    prism_graph,
    save_graph,
    vertex_connectivity,
    wheel_graph,
)
from .frameworks import (
    Framework,
    GeneralPositionCheck,
    affine_general_position,
    affine_span_dimension,
    infinitesimally_rigid,
    linear_general_position,
    load_framework,
    maxwell_index,
    neighborhood_spans,
    on_conic_at_infinity,
    rigidity_matrix,
    save_framework,
)
from .statics import (
    equilibrium_load_space_dimension,
    induced_load,
    is_equilibrium_load,
    resolve_load,
    restrict_load_to_support,
)
from .stresses import (
    StressClass,
    StressMatrix,
    StressVector,
    classify,
    is_stress_for,
    kernel_framework,
    load_stress_csv,
    save_stress_csv,
    stress_space,
    to_matrix,
)
from .constructions import (
    OrthogonalRep,
    RubberBandResult,
    build_gor,
    center_gor,
    lss_stress,
    non_clique_edges,
    parse_signature,
    rubber_band_readoff,
    rubber_band_stress,
)
from .certificates import (
    CertificateReport,
    URConstruction,
    construct_universally_rigid,
    corank_stats,
    dimension_probe,
    ggr_test,
    gor_dimension_probe,
    super_stable,
)

__version__ = "0.1.0"
