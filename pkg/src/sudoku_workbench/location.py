"""Location analysis: where, within one dimension, can an identity still go.

The template lists the open positions for an identity in a row, column or
box, lets the user exclude positions one by one (each citing a witness in
a crossing dimension), and then counts. All but one excluded solves the
survivor; excluding every position is an integrity error; fewer is simply
inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UsageError
from .grid import CellRef, CellState, Dimension, Grid, dimensions_of, require_identity
from .ledger import ValidationOutcome

INCONCLUSIVE = "inconclusive"
SOLVED = "solved"
INTEGRITY = "integrity_error"


@dataclass(frozen=True)
class LocationConclusion:
    """Outcome of counting the exclusions: solved survivor, not enough
    information yet, or every position struck."""

    kind: str  # "solved" | "inconclusive" | "integrity_error"
    count: int
    position: CellRef | None = None
    reason: str = ""

    @classmethod
    def solved(cls, count: int, position: CellRef) -> "LocationConclusion":
        return cls(SOLVED, count, position=position)

    @classmethod
    def inconclusive(cls, count: int) -> "LocationConclusion":
        return cls(INCONCLUSIVE, count)

    @classmethod
    def integrity(cls, count: int, reason: str) -> "LocationConclusion":
        return cls(INTEGRITY, count, reason=reason)


@dataclass
class LocationAnalysis:
    """Worksheet state for one (dimension, identity) question."""

    dim: Dimension
    identity: int
    open_positions: tuple[CellRef, ...]
    excluded: dict[CellRef, CellRef] = field(default_factory=dict)  # position -> witness

    @property
    def count(self) -> int:
        return len(self.excluded)


def open_positions(grid: Grid, dim: Dimension, identity: int) -> tuple[CellRef, ...]:
    """Cells of `dim` whose recorded candidate set still admits `identity`.

    The listing reads the stored cell states; it does not re-derive
    candidates from peers, so it reflects exactly the narrowing already
    concluded elsewhere.
    """
    require_identity(identity)
    for ref in dim.cells():
        state = grid.at(ref)
        if state.is_determined and state.value == identity:
            raise UsageError(
                f"identity {identity} is already placed at {ref.code()} in {dim.code()}"
            )
    return tuple(
        ref
        for ref in dim.cells()
        if not grid.at(ref).is_determined and identity in grid.at(ref).candidate_view()
    )


def open_location_analysis(grid: Grid, dim: Dimension, identity: int) -> LocationAnalysis:
    return LocationAnalysis(dim=dim, identity=identity, open_positions=open_positions(grid, dim, identity))


def assert_location_exclusion(
    analysis: LocationAnalysis, grid: Grid, position: CellRef, witness: CellRef
) -> ValidationOutcome:
    """Strike one open position, citing a witness in a crossing dimension.

    The witness must share a row, column or box with the position other
    than the dimension under analysis; whether it actually holds the
    identity decides valid versus wrong-but-recorded.
    """
    if position not in analysis.open_positions:
        return ValidationOutcome.integrity(
            f"{position.code()} is not an open position for identity "
            f"{analysis.identity} in {analysis.dim.code()}"
        )
    if position in analysis.excluded:
        return ValidationOutcome.integrity(
            f"{position.code()} was already excluded citing "
            f"{analysis.excluded[position].code()}"
        )
    if witness == position:
        return ValidationOutcome.integrity("a witness must be a different cell from the position")
    crossings = [d for d in dimensions_of(position) if d != analysis.dim and witness in d]
    if not crossings:
        return ValidationOutcome.integrity(
            f"witness {witness.code()} shares no crossing dimension with {position.code()}"
        )
    witness_state = grid.at(witness)
    if witness_state.is_determined and witness_state.value == analysis.identity:
        outcome = ValidationOutcome.valid()
    else:
        held = (
            f"holds {witness_state.value}"
            if witness_state.is_determined
            else f"is {witness_state.status.value}"
        )
        outcome = ValidationOutcome.incorrect(
            f"witness {witness.code()} {held}, not {analysis.identity}"
        )
    analysis.excluded[position] = witness
    return outcome


def count_and_conclude(analysis: LocationAnalysis, grid: Grid) -> tuple[Grid, LocationConclusion]:
    """Count the exclusions and act on the tally.

    len-1 struck: the survivor takes the identity. All struck: integrity
    error, nothing written. Anything less: inconclusive, nothing written.
    """
    count = analysis.count
    total = len(analysis.open_positions)
    if count == total:
        return grid, LocationConclusion.integrity(
            count,
            f"identity {analysis.identity} has nowhere left to go in {analysis.dim.code()}",
        )
    if count == total - 1:
        survivor = next(p for p in analysis.open_positions if p not in analysis.excluded)
        solved = grid.with_cell(survivor, CellState.solved(analysis.identity))
        return solved, LocationConclusion.solved(count, survivor)
    return grid, LocationConclusion.inconclusive(count)


__all__ = [
    "INCONCLUSIVE",
    "SOLVED",
    "INTEGRITY",
    "LocationConclusion",
    "LocationAnalysis",
    "open_positions",
    "open_location_analysis",
    "assert_location_exclusion",
    "count_and_conclude",
]
