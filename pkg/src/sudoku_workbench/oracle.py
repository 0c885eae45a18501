"""Independent solver plus the automatic derivation loop.

The brute-force solver is a plain backtracking search that shares no logic
with the analysis templates, so template conclusions can be checked against
it. The fixpoint driver chains the three templates (exclusion, location,
mutual exclusion) through a workbench until none narrows anything further,
producing a fully audited derivation of everything the templates can reach.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IntegrityError, UsageError
from .grid import (
    ALL_CELLS,
    ALL_DIMENSIONS,
    ALL_IDENTITIES,
    CellRef,
    CellState,
    Dimension,
    Grid,
    box_of,
    col_dim,
    is_consistent,
    row_dim,
    state_for_candidates,
)
from .ledger import MoveRecord
from .location import open_positions
from .mutual import apply_mutual_exclusion
from .workbench import Workbench


@dataclass(frozen=True)
class SolveOutcome:
    """How many solutions exist (capped at 2) and the first one found."""

    solutions_found: int
    solution: Grid | None


def brute_force_solve(grid: Grid) -> SolveOutcome:
    """Count solutions by backtracking, stopping at the second.

    Open cells are tried in row-major order, identities in ascending
    order, so the search is deterministic. The returned solution keeps the
    original determined cells and fills the rest as solved.
    """
    if not is_consistent(grid):
        raise UsageError("the grid repeats an identity within a dimension")
    values = [0] * 81
    rows = [0] * 9
    cols = [0] * 9
    boxes = [0] * 9
    open_cells: list[tuple[int, int, int, int]] = []
    for i, ref in enumerate(ALL_CELLS):
        state = grid.at(ref)
        r, c = ref.row - 1, ref.col - 1
        b = box_of(ref).index - 1
        if state.is_determined:
            values[i] = state.value
            bit = 1 << state.value
            rows[r] |= bit
            cols[c] |= bit
            boxes[b] |= bit
        else:
            open_cells.append((i, r, c, b))

    solutions = 0
    first = [0] * 81

    def search(pos: int) -> bool:
        nonlocal solutions
        if pos == len(open_cells):
            solutions += 1
            if solutions == 1:
                first[:] = values
            return solutions >= 2
        i, r, c, b = open_cells[pos]
        used = rows[r] | cols[c] | boxes[b]
        for v in range(1, 10):
            bit = 1 << v
            if used & bit:
                continue
            values[i] = v
            rows[r] |= bit
            cols[c] |= bit
            boxes[b] |= bit
            stop = search(pos + 1)
            rows[r] ^= bit
            cols[c] ^= bit
            boxes[b] ^= bit
            values[i] = 0
            if stop:
                return True
        return False

    search(0)
    if solutions == 0:
        return SolveOutcome(0, None)
    changes = {ALL_CELLS[i]: CellState.solved(first[i]) for i, _, _, _ in open_cells}
    return SolveOutcome(min(solutions, 2), grid.with_cells(changes))


# -- automatic derivation ----------------------------------------------------


def auto_fixpoint(grid: Grid) -> tuple[Grid, list[MoveRecord]]:
    """Drive the three templates to a fixpoint, recording every move.

    Cell analyses cite a real witness for every strike beyond the automatic
    row exclusions; location analyses conclude lone survivors; mutual
    exclusion runs dimension by dimension. A pass touches a cell only when
    precomputation shows the conclusion would actually narrow it, so the
    ledger carries no idle moves.

    A contradictory grid raises IntegrityError with the records produced
    so far attached as ``.derivation``.
    """
    wb = Workbench.from_grid(grid)
    try:
        changed = True
        while changed:
            changed = _exclusion_pass(wb) or _location_pass(wb) or _mutual_pass(wb)
    except IntegrityError as exc:
        exc.derivation = list(wb.ledger.records)
        raise
    return wb.grid, list(wb.ledger.records)


def _held_witness(grid: Grid, target: CellRef, identity: int) -> tuple[CellRef, Dimension] | None:
    """A determined cell holding `identity` in the target's column or box."""
    for via in (col_dim(target.col), box_of(target)):
        for ref in via.cells():
            if ref == target:
                continue
            state = grid.at(ref)
            if state.is_determined and state.value == identity:
                return ref, via
    return None


def _exclusion_pass(wb: Workbench) -> bool:
    """Run a cell analysis on every cell the analysis would narrow."""
    any_change = False
    for target in ALL_CELLS:
        state = wb.grid.at(target)
        if state.is_determined:
            continue
        view = state.candidate_view()
        row_held = {
            wb.grid.at(ref).value
            for ref in row_dim(target.row).cells()
            if ref != target and wb.grid.at(ref).is_determined
        }
        witnessed = {
            v: hit for v in view if v not in row_held and (hit := _held_witness(wb.grid, target, v))
        }
        working = tuple(v for v in view if v not in row_held and v not in witnessed)
        if not working:
            raise IntegrityError(f"no identity can stand at {target.code()}")
        if state_for_candidates(working) == state:
            continue
        analysis = wb.open_exclusion(target)
        for identity in sorted(analysis.working):
            if identity in witnessed:
                witness, via = witnessed[identity]
                wb.assert_exclusion_move(target, identity, witness, via)
        wb.conclude()
        any_change = True
    return any_change


def _location_pass(wb: Workbench) -> bool:
    """Solve the first identity that has exactly one admissible cell left
    in some dimension; an identity with none is a contradiction."""
    for dim in ALL_DIMENSIONS:
        placed = {
            wb.grid.at(ref).value for ref in dim.cells() if wb.grid.at(ref).is_determined
        }
        for identity in sorted(ALL_IDENTITIES - placed):
            positions = open_positions(wb.grid, dim, identity)
            if not positions:
                raise IntegrityError(
                    f"identity {identity} has no admissible cell in {dim.code()}"
                )
            if len(positions) == 1:
                wb.open_location(dim, identity)
                result = wb.conclude()
                if result.outcome.rejected:
                    raise IntegrityError(result.outcome.reason)
                return True
    return False


def _mutual_pass(wb: Workbench) -> bool:
    """Apply mutual exclusion to the first dimension where it narrows."""
    for dim in ALL_DIMENSIONS:
        _, report = apply_mutual_exclusion(wb.grid, dim)
        if report.changed:
            wb.apply_mutual(dim)
            return True
    return False


__all__ = ["SolveOutcome", "brute_force_solve", "auto_fixpoint"]
