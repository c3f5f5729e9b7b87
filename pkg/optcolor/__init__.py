"""
optcolor
Speculative parallel graph coloring: sequential First-Fit, the two-barrier
optimistic scheme, the single-barrier RSOC scheme, a lockstep SIMT simulator
and a benchmark harness.
"""

from optcolor.coloring import (
    ALGORITHMS,
    UNCOLORED,
    Coloring,
    ConflictReport,
    Worklist,
    color_catalyurek,
    color_classes,
    color_rsoc,
    color_sequential,
    count_colors,
    detect_conflicts,
    first_fit_sequential,
    get_algorithm,
    smallest_available_color,
    verify_coloring,
)
from optcolor.errors import (
    CapacityError,
    ConfigError,
    GraphInputError,
    GraphParseError,
    OptcolorError,
    ReportError,
    UnsupportedFormatError,
    VerificationError,
)
from optcolor.graph import Graph, build_graph, degree, graph_summary
from optcolor.graph_io import (
    RMAT_PRESETS,
    RmatParams,
    generate_rmat,
    load_edge_list,
    load_graph,
    load_matrix_market,
    rmat_preset,
    shuffle_vertices,
)
from optcolor.lockstep import LockstepOutcome, lockstep_color, round_robin_lanes
from optcolor.stats import ColoringStats

__version__ = '0.1.0'
