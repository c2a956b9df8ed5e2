"""Path weights in Gaussian concentration graph models.

The covariance between two variables of a Gaussian concentration graph model
decomposes additively over the simple paths joining them in the graph. This
package computes those path weights for the covariance and for its normalized
relatives (correlation and inflated correlation), factors every weight into a
partial weight times an inflation factor, bounds weights sharply, and turns
them into a path-weight betweenness centrality. It also ships the supporting
machinery: labelled symmetric matrices, path enumeration, graph-constrained
maximum-likelihood fitting, sign-structure analysis, file formats, a CLI, and
two bundled dietary intake networks for demonstration.
"""

from .centrality import CentralityTable, VertexCentrality, betweenness, degree_centrality
from .decomposition import (
    DecompositionReport,
    PathContribution,
    decompose,
    rank_paths,
    subset_share,
)
from .errors import (
    InvalidMatrixError,
    InvalidPathError,
    ModelFileError,
    NotAdaptedError,
    NotConvergedError,
    NotPositiveDefiniteError,
    PathExplosionError,
    PathWeightsError,
    UndefinedShareError,
    UnknownVertexError,
)
from .fit import SignAssignment, ips_fit, is_mtp2, mtp2_sign_search
from .graphs import Graph, Path, chords, enumerate_paths, is_chordless, validate_path
from .inflation import (
    InflationIdentities,
    global_collinearity,
    inflation_factor,
    inflation_factor_identities,
)
from .model import CustomScaling, Kind, Measure, Model
from .modelio import (
    load_covariance_csv,
    load_graph,
    load_model,
    save_covariance_csv,
    save_model,
    save_report,
)
from .symmetric import SymMatrix
from .weights import (
    EdgeMeasures,
    WeightBreakdown,
    edge_measures,
    factorize,
    inflated_weight_explicit,
    normalized_weight,
    partial_inflated_weight_explicit,
    partial_weight,
    weight,
    weight_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "betweenness", "CentralityTable", "VertexCentrality", "degree_centrality",
    "decompose", "subset_share", "rank_paths", "DecompositionReport", "PathContribution",
    "Graph", "Path", "enumerate_paths", "chords", "is_chordless", "validate_path",
    "inflation_factor", "inflation_factor_identities", "InflationIdentities",
    "global_collinearity",
    "Model", "Measure", "CustomScaling", "Kind",
    "SymMatrix",
    "weight", "partial_weight", "factorize", "WeightBreakdown",
    "inflated_weight_explicit", "partial_inflated_weight_explicit",
    "normalized_weight", "weight_bounds", "edge_measures", "EdgeMeasures",
    "ips_fit", "mtp2_sign_search", "SignAssignment", "is_mtp2",
    "load_model", "save_model", "load_graph", "load_covariance_csv",
    "save_covariance_csv", "save_report",
    "PathWeightsError", "InvalidMatrixError", "NotPositiveDefiniteError",
    "UnknownVertexError", "NotAdaptedError", "InvalidPathError",
    "PathExplosionError", "NotConvergedError", "UndefinedShareError",
    "ModelFileError",
    "__version__",
]
