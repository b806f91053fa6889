"""Resolution-path variable dependencies for QCNF formulas.

Parse QDIMACS, query the resolution-path dependency scheme in linear time
per query via properly-edge-colored-walk reachability, and cross-check
everything against brute-force semantic oracles.
"""

from .formula import (
    EXISTS,
    FORALL,
    DependencyRelation,
    FormulaError,
    NormalizeDiagnostics,
    QcnfFormula,
    closure,
    normalize,
    qcnf,
    shift_down,
    transpose_adjacent,
)
from .qdimacs import (
    QdimacsParseError,
    formula_digest,
    parse_qdimacs,
    parse_qdimacs_file,
    parse_qdimacs_raw,
    parse_qdimacs_with_diagnostics,
    serialize_qdimacs,
)
from .cnf3 import TernaryForm, map_path_back, serialize_with_provenance, to_q3cnf
from .engine import BLUE, RED
from .pecgraph import (
    ColorLabeling,
    ColoredGraph,
    build_connection_graph,
    build_incidence_graph,
    extract_walk,
    graph_from_edges,
    lit_to_vertex,
    pec_walk,
    reachable_with_last_color,
    vertex_to_lit,
    walk_violations,
)
from .respath import ResolutionPath, path_violations, validate_path
from .oracles import (
    BudgetExceededError,
    EvalBudget,
    check_cumulative_shift,
    check_transposition_soundness,
    dmat_contains,
    enumerate_resolution_paths,
    evaluate,
    evaluate_by_expansion,
    pec_reachable_oracle,
    resolution_connected_bruteforce,
)
from .resdep import (
    DependencyQueryResult,
    QueryStats,
    dres_connecting_set,
    dres_contains,
    dres_full,
    dres_of_existential,
    dtriv_full,
    is_dependency_pair,
    relation_to_json_dict,
    relation_to_text,
    resolution_connected,
)
from .families import chain_formula

__version__ = "0.1.0"
