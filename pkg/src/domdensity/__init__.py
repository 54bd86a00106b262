"""domdensity: exact domination numbers, density inequalities, k-regular
bipartite scans, and rank-based covering obstructions."""

from .catalog import all_graphs, connected_bipartite_graphs, connected_graphs
from .criteria import (
    REFERENCE_NK,
    CriterionVerdict,
    ThresholdEntry,
    ThresholdTable,
    bipartition_upper_bound,
    build_threshold_table,
    conjectured_kreg_bound,
    degree_lower_bound,
    finite_remainder,
    imbalance_criterion,
    imbalance_vs_arbitrary,
    kreg_order_bound,
    min_threshold_order,
    threshold_condition,
)
from .density import Density, as_fraction, density_vizing_check, rho
from .domination import (
    DominatingSet,
    GammaCache,
    VizingReport,
    check_vizing,
    gamma_brute,
    gamma_exact,
    gamma_value,
    is_dominating,
)
from .enumeration import (
    BiadjacencyMatrix,
    ScanRecord,
    ScanReport,
    canonical_key,
    class_record,
    classify_k_plus_2,
    enumerate_kreg,
    is_unique_form,
    parse_biadjacency,
    scan_conjecture,
    to_graph,
    unique_form_matrix,
)
from .errors import CapacityError, FindingError, ParseError, PreconditionError
from .graphs import (
    DEFAULT_MAX_PRODUCT_VERTICES,
    BipartiteGraph,
    Graph,
    LabeledProduct,
    attach_leaves,
    bipartition,
    canonical_form,
    cartesian_product,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    emit_graph6,
    empty_graph,
    from_edges,
    graph_key,
    is_connected,
    max_degree,
    parse_edge_list,
    parse_graph6,
    path_graph,
    star,
)
from .rankcheck import (
    ObstructionReport,
    RationalMatrix,
    biadjacency_rank,
    complement_identity_check,
    cover_to_dominating_set,
    disjoint_row_cover,
    obstruction_report,
    rank_exact,
)
from .transform import (
    ConstructiveReport,
    DominationSplit,
    HypothesisReport,
    TransformTrace,
    constructive_inequality_check,
    domination_split,
    evaluate_hypothesis,
    iterate_leaves,
    m_star,
)

__version__ = "0.1.0"
