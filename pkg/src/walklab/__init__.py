"""walklab: exact periodicity analysis of Grover walks on regular graphs
and feasible-spectrum enumeration for bipartite regular periodic graphs.

All arithmetic is exact (arbitrary-precision integers and rationals);
no floating point participates in any decision.
"""

from .exact import (
    Poly,
    QuadraticNumber,
    SieveResult,
    Spectrum,
    Unresolved,
    charpoly,
    charpoly_bareiss,
    cyclotomic,
    cyclotomic_sieve,
    eval_poly_at_matrix,
    extract_spectrum,
    is_quadratic_algebraic_integer,
    kernel_dim,
    min_poly_2cos,
    order_of_cos_pair,
    squarefree_part,
)
from .feasibility import (
    FeasibleRow,
    RowChecks,
    ThetaClass,
    all_rows,
    classify_four_eigenvalue,
    closed_walks_integral,
    enumerate_rows,
    multiplicities,
    n_bounds,
    read_tables_csv,
    render_tables,
)
from .graphs import (
    ArcSpace,
    Graph,
    GraphError,
    PartiteSplit,
    arc_space,
    biadjacency,
    bipartite_double,
    cartesian_product,
    complete_bipartite,
    complete_graph,
    count_quadrangles,
    count_quadrangles_brute,
    cycle,
    hamming,
    hypercube,
    is_bipartite,
    is_connected,
    kronecker_product,
    line_graph,
    petersen,
    regularity,
    tensor_allones,
)
from .graphio import (
    from_edge_list,
    from_graph6,
    load,
    load_path,
    save_path,
    to_edge_list,
    to_graph6,
)
from .walk import (
    NotConnectedError,
    NotPeriodic,
    NotRegularError,
    Periodic,
    PeriodicityVerdict,
    QuadrangleReport,
    SpectrumShapeError,
    UnresolvedSpectrumError,
    USpectrumModel,
    WalkMatrices,
    build_walk_matrices,
    decide_periodic,
    eigenvalue_gate,
    hoffman_check,
    period_oracle,
    quadrangle_report,
    u_charpoly_via_mapping,
    u_spectrum_model,
    verify_biadjacency_identities,
    walk_regularity_check,
)

__version__ = "0.1.0"
