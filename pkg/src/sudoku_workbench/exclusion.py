"""Analysis by exclusion: justify striking candidates from one cell.

Opening an analysis on a cell snapshots its prior state, strikes every
identity already placed in the cell's row automatically, and then accepts
user justifications, each citing a witness cell in the target's column or
box. The analysis keeps a working candidate set; concluding writes the
narrowed state back to the grid and fixes the displayed result value.

The result value is a five-branch state machine evaluated strictly in
order; the branches are reproduced literally, including the quirks (the
prior state wins even over a freshly concluded one, and a "Solved" result
is the sum of the posted slots rather than the single nonzero slot).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IntegrityError, UsageError
from .grid import (
    ALL_IDENTITIES,
    ROW,
    CellRef,
    CellState,
    Dimension,
    Grid,
    Status,
    require_identity,
    row_dim,
)
from .ledger import ValidationOutcome

ERROR_SENTINEL = "#Error"
UNRESOLVED_MARK = "."

STATUS_BLANK = ""
STATUS_SOLVED = "Solved"
STATUS_PAIR = "1 of 2"


@dataclass(frozen=True)
class ResultValue:
    """Displayed outcome of a cell analysis: error sentinel, a solved
    identity, a candidate pair, or the unresolved mark."""

    kind: str  # "error" | "identity" | "pair" | "unresolved"
    value: int = 0
    pair: tuple[int, int] = (0, 0)

    @classmethod
    def error_sentinel(cls) -> "ResultValue":
        return cls("error")

    @classmethod
    def identity(cls, value: int) -> "ResultValue":
        require_identity(value)
        return cls("identity", value=value)

    @classmethod
    def pair_string(cls, a: int, b: int) -> "ResultValue":
        require_identity(a)
        require_identity(b)
        if a == b:
            raise ValueError("a pair needs two distinct identities")
        return cls("pair", pair=(a, b))

    @classmethod
    def unresolved_mark(cls) -> "ResultValue":
        return cls("unresolved")

    def render(self) -> str:
        if self.kind == "error":
            return ERROR_SENTINEL
        if self.kind == "identity":
            return str(self.value)
        if self.kind == "pair":
            return f"{self.pair[0]} {self.pair[1]}"
        return UNRESOLVED_MARK


@dataclass(frozen=True)
class Justification:
    """One exclusion claim: strike `excluded` from `target` because
    `witness`, sharing `via` with the target, already holds it."""

    target: CellRef
    excluded: int
    witness: CellRef
    via: Dimension

    def __post_init__(self):
        require_identity(self.excluded)


@dataclass
class CellAnalysis:
    """Worksheet state for one cell: prior snapshot, striking history,
    working candidate set, and the concluded status fields."""

    target: CellRef
    row_selected: bool = True
    prior_status: CellState | None = None
    auto_row_exclusions: tuple[tuple[int, CellRef], ...] = ()
    justifications: list[Justification] = field(default_factory=list)
    working: set[int] = field(default_factory=set)
    current_status: str = STATUS_BLANK
    pair_digits: str = ""
    posted_slots: tuple[int, ...] = (0,) * 9

    @property
    def populated(self) -> bool:
        return self.prior_status is not None

    def excluded_pairs(self) -> set[tuple[int, CellRef]]:
        seen = set(self.auto_row_exclusions)
        seen.update((j.excluded, j.witness) for j in self.justifications)
        return seen


def auto_row_exclusions(grid: Grid, target: CellRef) -> tuple[tuple[int, CellRef], ...]:
    """Identities already placed in the target's row, with the cells holding them."""
    if grid.at(target).is_determined:
        raise UsageError(f"{target.code()} is already determined")
    found = []
    for ref in row_dim(target.row).cells():
        state = grid.at(ref)
        if ref != target and state.is_determined:
            found.append((state.value, ref))
    return tuple(found)


def open_cell_analysis(grid: Grid, target: CellRef, populate: bool = True) -> CellAnalysis:
    """Select a cell's row and, unless `populate` is off, fill the analysis in.

    Skipping population models selecting a row while leaving the analysis
    blank; the only thing such an analysis can do is conclude to the error
    sentinel.
    """
    state = grid.at(target)
    if state.is_determined:
        raise UsageError(f"{target.code()} is already determined; nothing to analyse")
    analysis = CellAnalysis(target=target)
    if populate:
        analysis.prior_status = state
        analysis.auto_row_exclusions = auto_row_exclusions(grid, target)
        struck = {identity for identity, _ in analysis.auto_row_exclusions}
        analysis.working = set(state.candidate_view()) - struck
    return analysis


def assert_exclusion(analysis: CellAnalysis, grid: Grid, just: Justification) -> ValidationOutcome:
    """Validate one exclusion claim and, unless rejected, apply it.

    Valid and wrong-but-recorded claims both narrow the working set; only
    integrity errors (malformed citations, duplicates, or a claim that
    would empty the cell) leave the analysis untouched.
    """
    if just.target != analysis.target:
        raise UsageError(
            f"justification targets {just.target.code()} but the open analysis is on "
            f"{analysis.target.code()}"
        )
    if not analysis.populated:
        raise UsageError("the analysis was opened blank; nothing to assert against")
    if just.via.kind == ROW:
        return ValidationOutcome.integrity(
            "row exclusions are automatic; cite a column or box witness"
        )
    if just.target not in just.via:
        return ValidationOutcome.integrity(
            f"{just.via.code()} does not contain the target {just.target.code()}"
        )
    if just.witness == just.target:
        return ValidationOutcome.integrity("a witness must be a different cell from the target")
    if just.witness not in just.via:
        return ValidationOutcome.integrity(
            f"witness {just.witness.code()} is not in {just.via.code()}"
        )
    if (just.excluded, just.witness) in analysis.excluded_pairs():
        return ValidationOutcome.integrity(
            f"identity {just.excluded} was already excluded citing {just.witness.code()}"
        )
    if analysis.working == {just.excluded}:
        return ValidationOutcome.integrity(
            f"excluding identity {just.excluded} would leave {just.target.code()} "
            "with no candidates"
        )
    redundant = just.excluded not in analysis.working
    witness_state = grid.at(just.witness)
    if witness_state.is_determined and witness_state.value == just.excluded:
        outcome = ValidationOutcome.valid(redundant=redundant)
    else:
        held = (
            f"holds {witness_state.value}"
            if witness_state.is_determined
            else f"is {witness_state.status.value}"
        )
        outcome = ValidationOutcome.incorrect(
            f"witness {just.witness.code()} {held}, not {just.excluded}",
            redundant=redundant,
        )
    analysis.working.discard(just.excluded)
    analysis.justifications.append(just)
    return outcome


def evaluate_cell_result(analysis: CellAnalysis) -> ResultValue:
    """Five-branch result machine, evaluated strictly in order.

    1. Row selected but analysis never populated: the error sentinel.
    2. A determined or paired prior state wins, even over a fresh conclusion.
    3. Concluded "Solved": the sum of the posted slots.
    4. Concluded "1 of 2": the two pair digits joined with a space.
    5. Otherwise the unresolved mark.
    """
    if analysis.row_selected and analysis.prior_status is None:
        return ResultValue.error_sentinel()
    prior = analysis.prior_status
    if prior is not None and prior.status in (Status.PRE_SET, Status.SOLVED):
        return ResultValue.identity(prior.value)
    if prior is not None and prior.status is Status.ONE_OF_TWO:
        return ResultValue.pair_string(*prior.pair)
    if analysis.current_status == STATUS_SOLVED:
        return ResultValue("identity", value=sum(analysis.posted_slots))
    if analysis.current_status == STATUS_PAIR:
        return ResultValue("pair", pair=(int(analysis.pair_digits[0]), int(analysis.pair_digits[1])))
    return ResultValue.unresolved_mark()


def conclude_cell(analysis: CellAnalysis, grid: Grid) -> tuple[Grid, CellState]:
    """Write the working set back to the grid and fix the analysis status.

    One survivor solves the cell, two become a recorded pair, three or more
    stay unresolved (with the narrowed set). An empty working set cannot be
    reached through validated moves; hitting one anyway is an integrity
    error and nothing is written.
    """
    if not analysis.populated:
        raise UsageError("cannot conclude an analysis that was never populated")
    working = sorted(analysis.working)
    if not working:
        raise IntegrityError(
            f"no candidates remain for {analysis.target.code()}; the analysis is corrupt"
        )
    if len(working) == 1:
        value = working[0]
        state = CellState.solved(value)
        analysis.current_status = STATUS_SOLVED
        analysis.posted_slots = tuple(value if v == value else 0 for v in sorted(ALL_IDENTITIES))
        analysis.pair_digits = ""
    elif len(working) == 2:
        a, b = working
        state = CellState.one_of_two(a, b)
        analysis.current_status = STATUS_PAIR
        analysis.pair_digits = f"{a}{b}"
        analysis.posted_slots = (0,) * 9
    else:
        state = CellState.unresolved(working)
        analysis.current_status = STATUS_BLANK
        analysis.pair_digits = ""
        analysis.posted_slots = (0,) * 9
    return grid.with_cell(analysis.target, state), state


__all__ = [
    "ERROR_SENTINEL",
    "UNRESOLVED_MARK",
    "STATUS_BLANK",
    "STATUS_SOLVED",
    "STATUS_PAIR",
    "ResultValue",
    "Justification",
    "CellAnalysis",
    "auto_row_exclusions",
    "open_cell_analysis",
    "assert_exclusion",
    "evaluate_cell_result",
    "conclude_cell",
]
