"""Grid model: cells, the three overlapping dimensions, candidates, consistency.

Digits are identities (labels), never magnitudes. A cell belongs to exactly
one row, one column and one box; those 27 groups are the "dimensions" every
deduction must cite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import IntegrityError, PuzzleFormatError, UsageError

ALL_IDENTITIES: frozenset[int] = frozenset(range(1, 10))

ROW = "row"
COL = "col"
BOX = "box"
DIMENSION_KINDS = (ROW, COL, BOX)

_KIND_CODES = {ROW: "R", COL: "C", BOX: "B"}
_CODE_KINDS = {v: k for k, v in _KIND_CODES.items()}


def _check_index(value: int, what: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 9:
        raise ValueError(f"{what} must be an integer in 1..9, got {value!r}")


def require_identity(value: int) -> int:
    """Validate a digit used as an identity; raises ValueError outside 1..9."""
    _check_index(value, "identity")
    return value


@dataclass(frozen=True, order=True)
class CellRef:
    """One cell position, 1-based. Canonical rendering is R{row}C{col}."""

    row: int
    col: int

    def __post_init__(self):
        _check_index(self.row, "row")
        _check_index(self.col, "col")

    def code(self) -> str:
        return f"R{self.row}C{self.col}"

    @classmethod
    def parse(cls, text: str) -> "CellRef":
        t = text.strip().upper()
        if len(t) == 4 and t[0] == "R" and t[2] == "C" and t[1].isdigit() and t[3].isdigit():
            return cls(int(t[1]), int(t[3]))
        raise ValueError(f"cell reference must look like R4C5, got {text!r}")

    def __str__(self) -> str:
        return self.code()


@dataclass(frozen=True, order=True)
class Dimension:
    """One of the 27 constraint groups: a row, a column, or a box."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in DIMENSION_KINDS:
            raise ValueError(f"dimension kind must be one of {DIMENSION_KINDS}, got {self.kind!r}")
        _check_index(self.index, "dimension index")

    def code(self) -> str:
        return f"{_KIND_CODES[self.kind]}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "Dimension":
        t = text.strip().upper()
        if len(t) == 2 and t[0] in _CODE_KINDS and t[1].isdigit():
            return cls(_CODE_KINDS[t[0]], int(t[1]))
        raise ValueError(f"dimension must look like R4, C5 or B3, got {text!r}")

    def cells(self) -> tuple[CellRef, ...]:
        """The 9 cells of this dimension in reading order."""
        return _DIMENSION_CELLS[self]

    def __contains__(self, ref: CellRef) -> bool:
        return ref in _DIMENSION_CELL_SETS[self]

    def __str__(self) -> str:
        return self.code()


def row_dim(index: int) -> Dimension:
    return Dimension(ROW, index)


def col_dim(index: int) -> Dimension:
    return Dimension(COL, index)


def box_dim(index: int) -> Dimension:
    return Dimension(BOX, index)


def box_of(ref: CellRef) -> Dimension:
    """The box containing a cell; boxes are numbered 1..9 in reading order."""
    return box_dim(3 * ((ref.row - 1) // 3) + (ref.col - 1) // 3 + 1)


def dimensions_of(ref: CellRef) -> tuple[Dimension, Dimension, Dimension]:
    """The cell's row, column and box, in that order."""
    return row_dim(ref.row), col_dim(ref.col), box_of(ref)


def _dimension_cells(dim: Dimension) -> tuple[CellRef, ...]:
    if dim.kind == ROW:
        return tuple(CellRef(dim.index, c) for c in range(1, 10))
    if dim.kind == COL:
        return tuple(CellRef(r, dim.index) for r in range(1, 10))
    r0 = 3 * ((dim.index - 1) // 3) + 1
    c0 = 3 * ((dim.index - 1) % 3) + 1
    return tuple(CellRef(r0 + i, c0 + j) for i in range(3) for j in range(3))


ALL_CELLS: tuple[CellRef, ...] = tuple(CellRef(r, c) for r in range(1, 10) for c in range(1, 10))
ALL_DIMENSIONS: tuple[Dimension, ...] = tuple(
    Dimension(kind, i) for kind in DIMENSION_KINDS for i in range(1, 10)
)
_DIMENSION_CELLS = {d: _dimension_cells(d) for d in ALL_DIMENSIONS}
_DIMENSION_CELL_SETS = {d: frozenset(cells) for d, cells in _DIMENSION_CELLS.items()}

PEERS: dict[CellRef, frozenset[CellRef]] = {
    ref: frozenset(
        other
        for dim in dimensions_of(ref)
        for other in dim.cells()
        if other != ref
    )
    for ref in ALL_CELLS
}


def peers(ref: CellRef) -> frozenset[CellRef]:
    """The 20 cells sharing a row, column or box with `ref` (never `ref` itself)."""
    return PEERS[ref]


class Status(Enum):
    PRE_SET = "Pre-Set"
    SOLVED = "Solved"
    ONE_OF_TWO = "1 of 2"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class CellState:
    """State of one cell: a given clue, a solved identity, a two-candidate
    pair (ascending), or an unresolved candidate set."""

    status: Status
    value: int | None = None
    pair: tuple[int, int] | None = None
    candidates: frozenset[int] | None = None

    @classmethod
    def preset(cls, value: int) -> "CellState":
        return cls(Status.PRE_SET, value=require_identity(value))

    @classmethod
    def solved(cls, value: int) -> "CellState":
        return cls(Status.SOLVED, value=require_identity(value))

    @classmethod
    def one_of_two(cls, a: int, b: int) -> "CellState":
        require_identity(a)
        require_identity(b)
        if a == b:
            raise ValueError(f"a 1-of-2 pair needs two distinct identities, got {a} twice")
        lo, hi = min(a, b), max(a, b)
        return cls(Status.ONE_OF_TWO, pair=(lo, hi))

    @classmethod
    def unresolved(cls, candidates) -> "CellState":
        cands = frozenset(require_identity(v) for v in candidates)
        if not cands:
            raise IntegrityError("a cell cannot be left with an empty candidate set")
        return cls(Status.UNRESOLVED, candidates=cands)

    @property
    def is_determined(self) -> bool:
        return self.status in (Status.PRE_SET, Status.SOLVED)

    def candidate_view(self) -> frozenset[int]:
        """The identities this cell could still hold, regardless of variant."""
        if self.is_determined:
            return frozenset((self.value,))
        if self.status is Status.ONE_OF_TWO:
            return frozenset(self.pair)
        return self.candidates

    def token(self) -> str:
        """Compact canonical token: P5 / S5 / T28 / U134679."""
        if self.status is Status.PRE_SET:
            return f"P{self.value}"
        if self.status is Status.SOLVED:
            return f"S{self.value}"
        if self.status is Status.ONE_OF_TWO:
            return f"T{self.pair[0]}{self.pair[1]}"
        return "U" + "".join(str(d) for d in sorted(self.candidates))


def state_for_candidates(cands) -> CellState:
    """Normalize a candidate set into a state: 1 left is solved, 2 a pair."""
    cands = frozenset(cands)
    if not cands:
        raise IntegrityError("a cell cannot be left with an empty candidate set")
    if len(cands) == 1:
        return CellState.solved(next(iter(cands)))
    if len(cands) == 2:
        a, b = sorted(cands)
        return CellState.one_of_two(a, b)
    return CellState.unresolved(cands)


@dataclass(frozen=True)
class Grid:
    """The 9x9 puzzle state, row-major, as an immutable snapshot."""

    cells: tuple[CellState, ...]

    def __post_init__(self):
        if len(self.cells) != 81:
            raise ValueError(f"a grid holds exactly 81 cells, got {len(self.cells)}")

    def at(self, ref: CellRef) -> CellState:
        return self.cells[(ref.row - 1) * 9 + (ref.col - 1)]

    def with_cell(self, ref: CellRef, state: CellState) -> "Grid":
        i = (ref.row - 1) * 9 + (ref.col - 1)
        return Grid(self.cells[:i] + (state,) + self.cells[i + 1:])

    def with_cells(self, changes: dict[CellRef, CellState]) -> "Grid":
        cells = list(self.cells)
        for ref, state in changes.items():
            cells[(ref.row - 1) * 9 + (ref.col - 1)] = state
        return Grid(tuple(cells))

    def undetermined_cells(self) -> tuple[CellRef, ...]:
        return tuple(ref for ref in ALL_CELLS if not self.at(ref).is_determined)

    def is_complete(self) -> bool:
        return all(state.is_determined for state in self.cells)


def parse_grid(text: str) -> Grid:
    """Parse an 81-character puzzle ('.' or '0' empty, digits preset);
    whitespace and newlines are ignored."""
    stripped = "".join(text.split())
    if len(stripped) != 81:
        raise PuzzleFormatError(
            f"puzzle must contain exactly 81 cells after stripping whitespace, got {len(stripped)}"
        )
    cells = []
    for i, ch in enumerate(stripped):
        if ch in ".0":
            cells.append(CellState.unresolved(ALL_IDENTITIES))
        elif ch.isdigit():
            cells.append(CellState.preset(int(ch)))
        else:
            raise PuzzleFormatError(f"illegal character {ch!r} at position {i + 1}")
    return Grid(tuple(cells))


def oneline(grid: Grid) -> str:
    """81-character rendering, '.' for anything not pre-set or solved."""
    return "".join(
        str(state.value) if state.is_determined else "." for state in grid.cells
    )


def render(grid: Grid) -> str:
    """Nine lines of nine characters, '.' for empty."""
    flat = oneline(grid)
    return "\n".join(flat[i: i + 9] for i in range(0, 81, 9))


def candidates(grid: Grid, ref: CellRef) -> frozenset[int]:
    """Identities not already employed by a determined peer of `ref`."""
    state = grid.at(ref)
    if state.is_determined:
        raise UsageError(f"{ref} is already {state.status.value} ({state.value}); it has no candidates")
    used = {grid.at(p).value for p in PEERS[ref] if grid.at(p).is_determined}
    return ALL_IDENTITIES - used


def is_consistent(grid: Grid) -> bool:
    """True iff no dimension holds the same identity in two determined cells."""
    for dim in ALL_DIMENSIONS:
        seen = set()
        for ref in dim.cells():
            state = grid.at(ref)
            if state.is_determined:
                if state.value in seen:
                    return False
                seen.add(state.value)
    return True


def canonical_state_text(grid: Grid) -> str:
    """Canonical full-state encoding: the 9-line rendering plus every cell's
    state token in row-major order. Checksummed for the ledger digests."""
    return render(grid) + "\n" + ",".join(state.token() for state in grid.cells)
