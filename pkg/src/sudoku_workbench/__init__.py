"""Audit-first Sudoku workbench: identity placement with a replayable ledger.

Every analysis step is validated, recorded (valid, wrong-but-recorded, or
rejected), and replayable; the grid model, the three analysis templates,
an independent brute-force solver, an HTTP service, and a CLI sit on top.
"""

from .errors import (
    IntegrityError,
    LedgerError,
    PuzzleFormatError,
    ReplayDivergence,
    UsageError,
    WorkbenchError,
)
from .exclusion import (
    ERROR_SENTINEL,
    UNRESOLVED_MARK,
    CellAnalysis,
    Justification,
    ResultValue,
    assert_exclusion,
    auto_row_exclusions,
    conclude_cell,
    evaluate_cell_result,
    open_cell_analysis,
)
from .grid import (
    ALL_CELLS,
    ALL_DIMENSIONS,
    ALL_IDENTITIES,
    CellRef,
    CellState,
    Dimension,
    Grid,
    Status,
    box_dim,
    box_of,
    candidates,
    canonical_state_text,
    col_dim,
    dimensions_of,
    is_consistent,
    oneline,
    parse_grid,
    peers,
    render,
    row_dim,
    state_for_candidates,
)
from .ledger import (
    Ledger,
    MoveRecord,
    ReviewerReport,
    ValidationOutcome,
    grid_digest,
    reviewer_report,
)
from .location import (
    LocationAnalysis,
    LocationConclusion,
    assert_location_exclusion,
    count_and_conclude,
    open_location_analysis,
    open_positions,
)
from .mutual import (
    CellRevision,
    ExclusionReport,
    PairGroup,
    apply_mutual_exclusion,
    apply_pair_groups,
    find_pair_groups,
)
from .oracle import SolveOutcome, auto_fixpoint, brute_force_solve
from .workbench import MoveResult, Workbench, diff_grids, replay, replay_workbench

__version__ = "0.1.0"

__all__ = [
    "ALL_CELLS",
    "ALL_DIMENSIONS",
    "ALL_IDENTITIES",
    "CellAnalysis",
    "CellRef",
    "CellRevision",
    "CellState",
    "Dimension",
    "ERROR_SENTINEL",
    "ExclusionReport",
    "Grid",
    "IntegrityError",
    "Justification",
    "Ledger",
    "LedgerError",
    "LocationAnalysis",
    "LocationConclusion",
    "MoveRecord",
    "MoveResult",
    "PairGroup",
    "PuzzleFormatError",
    "ReplayDivergence",
    "ResultValue",
    "ReviewerReport",
    "SolveOutcome",
    "Status",
    "UNRESOLVED_MARK",
    "UsageError",
    "ValidationOutcome",
    "WorkbenchError",
    "Workbench",
    "apply_mutual_exclusion",
    "apply_pair_groups",
    "assert_exclusion",
    "assert_location_exclusion",
    "auto_fixpoint",
    "auto_row_exclusions",
    "box_dim",
    "box_of",
    "brute_force_solve",
    "candidates",
    "canonical_state_text",
    "col_dim",
    "conclude_cell",
    "count_and_conclude",
    "diff_grids",
    "dimensions_of",
    "evaluate_cell_result",
    "find_pair_groups",
    "grid_digest",
    "is_consistent",
    "oneline",
    "open_cell_analysis",
    "open_location_analysis",
    "open_positions",
    "parse_grid",
    "peers",
    "render",
    "replay",
    "replay_workbench",
    "reviewer_report",
    "row_dim",
    "state_for_candidates",
]
