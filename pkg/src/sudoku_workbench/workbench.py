"""Move engine: every analysis step becomes a validated, replayable record.

A workbench holds the current grid, at most one open analysis, and the
append-only ledger. Opening an analysis is free; asserting exclusions,
concluding, and applying mutual exclusion are moves, and every move
(including rejected attempts) lands in the ledger with its outcome and a
digest of the grid afterwards. Replaying a ledger from its puzzle line
re-executes each move and demands byte-identical records, so a transcript
either reproduces exactly or names the first diverging step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IntegrityError, ReplayDivergence, UsageError, WorkbenchError
from .exclusion import (
    CellAnalysis,
    Justification,
    ResultValue,
    assert_exclusion,
    conclude_cell,
    evaluate_cell_result,
    open_cell_analysis,
)
from .grid import CellRef, CellState, Dimension, Grid, oneline, parse_grid
from .ledger import (
    CELL_CONCLUDE,
    EXCLUSION_ASSERT,
    LOCATION_ASSERT,
    LOCATION_CONCLUDE,
    MUTUAL_EXCLUSION_APPLY,
    Ledger,
    MoveRecord,
    ReviewerReport,
    ValidationOutcome,
    grid_digest,
    reviewer_report,
)
from .location import (
    INTEGRITY,
    SOLVED,
    LocationAnalysis,
    LocationConclusion,
    assert_location_exclusion,
    count_and_conclude,
    open_location_analysis,
)
from .mutual import ExclusionReport, apply_mutual_exclusion


@dataclass(frozen=True)
class MoveResult:
    """A recorded move plus the grid transition it caused (if any)."""

    record: MoveRecord
    grid_before: Grid
    grid_after: Grid
    result: ResultValue | None = None
    state: CellState | None = None
    conclusion: LocationConclusion | None = None
    report: ExclusionReport | None = None

    @property
    def outcome(self) -> ValidationOutcome:
        return self.record.outcome

    @property
    def changed(self) -> bool:
        return self.grid_after != self.grid_before


def diff_grids(before: Grid, after: Grid) -> list[tuple[CellRef, CellState, CellState]]:
    """Cells whose state differs between two grids, in row-major order."""
    from .grid import ALL_CELLS

    return [
        (ref, before.at(ref), after.at(ref))
        for ref in ALL_CELLS
        if before.at(ref) != after.at(ref)
    ]


class Workbench:
    """One session: current grid, open analysis, append-only ledger."""

    def __init__(self, grid: Grid, ledger: Ledger):
        self.grid = grid
        self.ledger = ledger
        self.open_analysis: CellAnalysis | LocationAnalysis | None = None

    @classmethod
    def from_puzzle(cls, text: str) -> "Workbench":
        grid = parse_grid(text)
        return cls(grid, Ledger(puzzle=oneline(grid)))

    @classmethod
    def from_grid(cls, grid: Grid) -> "Workbench":
        return cls(grid, Ledger(puzzle=oneline(grid)))

    # -- analyses ----------------------------------------------------------

    def _require_no_open(self, doing: str) -> None:
        if self.open_analysis is not None:
            raise UsageError(f"an analysis is already open; conclude it before {doing}")

    def open_exclusion(self, target: CellRef, populate: bool = True) -> CellAnalysis:
        """Open a cell analysis. Opening is not a move and is not recorded;
        the ledger captures it implicitly through the asserts and the
        conclude that follow."""
        self._require_no_open("opening another")
        analysis = open_cell_analysis(self.grid, target, populate=populate)
        self.open_analysis = analysis
        return analysis

    def open_location(self, dim: Dimension, identity: int) -> LocationAnalysis:
        self._require_no_open("opening another")
        analysis = open_location_analysis(self.grid, dim, identity)
        self.open_analysis = analysis
        return analysis

    # -- moves -------------------------------------------------------------

    def _record(self, kind: str, payload: dict[str, str], outcome: ValidationOutcome) -> MoveRecord:
        record = MoveRecord(
            seq=len(self.ledger.records) + 1,
            kind=kind,
            payload=payload,
            outcome=outcome,
            grid_digest=grid_digest(self.grid),
        )
        self.ledger.append(record)
        return record

    def assert_exclusion_move(
        self, target: CellRef, excluded: int, witness: CellRef, via: Dimension
    ) -> MoveResult:
        analysis = self.open_analysis
        if not isinstance(analysis, CellAnalysis):
            raise UsageError("no cell analysis is open")
        just = Justification(target=target, excluded=excluded, witness=witness, via=via)
        outcome = assert_exclusion(analysis, self.grid, just)
        record = self._record(
            EXCLUSION_ASSERT,
            {
                "target": target.code(),
                "excluded": str(excluded),
                "witness": witness.code(),
                "via": via.code(),
            },
            outcome,
        )
        return MoveResult(record, self.grid, self.grid)

    def assert_location_move(self, position: CellRef, witness: CellRef) -> MoveResult:
        analysis = self.open_analysis
        if not isinstance(analysis, LocationAnalysis):
            raise UsageError("no location analysis is open")
        outcome = assert_location_exclusion(analysis, self.grid, position, witness)
        record = self._record(
            LOCATION_ASSERT,
            {
                "dim": analysis.dim.code(),
                "identity": str(analysis.identity),
                "position": position.code(),
                "witness": witness.code(),
            },
            outcome,
        )
        return MoveResult(record, self.grid, self.grid)

    def conclude(self) -> MoveResult:
        """Conclude the open analysis, write any narrowing, close it."""
        analysis = self.open_analysis
        if analysis is None:
            raise UsageError("no analysis is open")
        if isinstance(analysis, CellAnalysis):
            return self._conclude_cell(analysis)
        return self._conclude_location(analysis)

    def _conclude_cell(self, analysis: CellAnalysis) -> MoveResult:
        before = self.grid
        if analysis.populated:
            after, state = conclude_cell(analysis, before)
        else:
            after, state = before, None
        result = evaluate_cell_result(analysis)
        self.grid = after
        record = self._record(
            CELL_CONCLUDE,
            {
                "target": analysis.target.code(),
                "populated": "yes" if analysis.populated else "no",
                "result": result.render(),
            },
            ValidationOutcome.valid(),
        )
        self.open_analysis = None
        return MoveResult(record, before, after, result=result, state=state)

    def _conclude_location(self, analysis: LocationAnalysis) -> MoveResult:
        before = self.grid
        after, conclusion = count_and_conclude(analysis, before)
        payload = {
            "dim": analysis.dim.code(),
            "identity": str(analysis.identity),
            "count": str(conclusion.count),
            "conclusion": conclusion.kind,
        }
        if conclusion.kind == SOLVED:
            payload["position"] = conclusion.position.code()
        if conclusion.kind == INTEGRITY:
            outcome = ValidationOutcome.integrity(conclusion.reason)
        else:
            outcome = ValidationOutcome.valid()
        self.grid = after
        record = self._record(LOCATION_CONCLUDE, payload, outcome)
        self.open_analysis = None
        return MoveResult(record, before, after, conclusion=conclusion)

    def apply_mutual(self, dim: Dimension) -> MoveResult:
        self._require_no_open("applying mutual exclusion")
        before = self.grid
        try:
            after, report = apply_mutual_exclusion(before, dim)
        except IntegrityError as exc:
            record = self._record(
                MUTUAL_EXCLUSION_APPLY,
                {"dim": dim.code()},
                ValidationOutcome.integrity(exc.reason),
            )
            return MoveResult(record, before, before)
        payload = {
            "dim": dim.code(),
            "parity": str(report.parity_total),
            "groups": ";".join(
                f"{g.members[0].code()}+{g.members[1].code()}={g.pair[0]}{g.pair[1]}"
                for g in report.groups
            ),
            "revised": ";".join(
                f"{r.ref.code()}:{''.join(map(str, r.before))}>{''.join(map(str, r.after))}"
                for r in report.revised
            ),
            "solved": ";".join(f"{ref.code()}={v}" for ref, v in report.newly_solved),
        }
        self.grid = after
        record = self._record(MUTUAL_EXCLUSION_APPLY, payload, ValidationOutcome.valid())
        return MoveResult(record, before, after, report=report)


# -- replay -----------------------------------------------------------------


def _reapply(wb: Workbench, rec: MoveRecord) -> MoveRecord:
    """Re-execute one recorded move against the workbench, implicitly
    opening the analysis the record belongs to when none is open."""
    p = rec.payload
    if rec.kind == EXCLUSION_ASSERT:
        target = CellRef.parse(p["target"])
        if wb.open_analysis is None:
            wb.open_exclusion(target)
        analysis = wb.open_analysis
        if not isinstance(analysis, CellAnalysis) or analysis.target != target:
            raise UsageError(f"record asserts on {target.code()} but another analysis is open")
        if not analysis.populated:
            raise UsageError("record asserts against a blank analysis")
        result = wb.assert_exclusion_move(
            target, int(p["excluded"]), CellRef.parse(p["witness"]), Dimension.parse(p["via"])
        )
        return result.record
    if rec.kind == CELL_CONCLUDE:
        target = CellRef.parse(p["target"])
        populated = p["populated"] == "yes"
        if wb.open_analysis is None:
            wb.open_exclusion(target, populate=populated)
        analysis = wb.open_analysis
        if (
            not isinstance(analysis, CellAnalysis)
            or analysis.target != target
            or analysis.populated != populated
        ):
            raise UsageError(f"record concludes {target.code()} but another analysis is open")
        return wb.conclude().record
    if rec.kind == LOCATION_ASSERT or rec.kind == LOCATION_CONCLUDE:
        dim = Dimension.parse(p["dim"])
        identity = int(p["identity"])
        if wb.open_analysis is None:
            wb.open_location(dim, identity)
        analysis = wb.open_analysis
        if (
            not isinstance(analysis, LocationAnalysis)
            or analysis.dim != dim
            or analysis.identity != identity
        ):
            raise UsageError(
                f"record belongs to a location analysis of {dim.code()}/{identity} "
                "but another analysis is open"
            )
        if rec.kind == LOCATION_ASSERT:
            result = wb.assert_location_move(
                CellRef.parse(p["position"]), CellRef.parse(p["witness"])
            )
            return result.record
        return wb.conclude().record
    if rec.kind == MUTUAL_EXCLUSION_APPLY:
        return wb.apply_mutual(Dimension.parse(p["dim"])).record
    raise UsageError(f"unknown record kind {rec.kind!r}")


def replay_workbench(puzzle: str, records: list[MoveRecord]) -> tuple[Workbench, ReviewerReport]:
    """Re-execute a transcript from its puzzle line, demanding that every
    recomputed record is byte-identical to the stored one.

    The returned workbench carries the reconstructed grid, ledger, and any
    still-open analysis, so a session can resume exactly where the
    transcript stops.
    """
    wb = Workbench.from_puzzle(puzzle)
    for rec in records:
        line = rec.encode()
        try:
            redone = _reapply(wb, rec)
        except ReplayDivergence:
            raise
        except (WorkbenchError, ValueError, KeyError, IndexError) as exc:
            raise ReplayDivergence(rec.seq, f"move could not be re-applied: {exc}") from exc
        if redone.encode() != line:
            raise ReplayDivergence(
                rec.seq,
                f"recomputed record differs from the stored one: "
                f"stored {line!r}, recomputed {redone.encode()!r}",
            )
    return wb, reviewer_report(wb.ledger)


def replay(puzzle: str, records: list[MoveRecord]) -> tuple[Grid, ReviewerReport]:
    """Replay a transcript and return the resulting grid and review summary."""
    wb, report = replay_workbench(puzzle, records)
    return wb.grid, report


__all__ = ["MoveResult", "Workbench", "diff_grids", "replay", "replay_workbench"]
