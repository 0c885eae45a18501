"""Grid model: references, dimensions, cell states, parsing, candidates."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sudoku_workbench import (
    ALL_CELLS,
    ALL_DIMENSIONS,
    ALL_IDENTITIES,
    CellRef,
    CellState,
    Dimension,
    Grid,
    IntegrityError,
    PuzzleFormatError,
    Status,
    UsageError,
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

EASY = "53..7....6..195....98....6.8...6...34..8.3..17...2...6.6....28....419..5....8..79"


def test_cell_ref_codes_round_trip():
    for ref in ALL_CELLS:
        assert CellRef.parse(ref.code()) == ref
    assert CellRef(4, 5).code() == "R4C5"
    with pytest.raises(ValueError):
        CellRef(0, 5)
    with pytest.raises(ValueError):
        CellRef.parse("R10C1")
    with pytest.raises(ValueError):
        CellRef.parse("4,5")


def test_dimension_codes_round_trip():
    assert len(ALL_DIMENSIONS) == 27
    for dim in ALL_DIMENSIONS:
        assert Dimension.parse(dim.code()) == dim
        assert len(dim.cells()) == 9
    with pytest.raises(ValueError):
        Dimension.parse("X4")


def test_box_arithmetic():
    assert box_of(CellRef(1, 1)).index == 1
    assert box_of(CellRef(4, 5)).index == 5
    assert box_of(CellRef(9, 9)).index == 9
    assert box_of(CellRef(1, 9)).index == 3
    assert box_of(CellRef(7, 1)).index == 7


def test_every_cell_has_three_dimensions_and_twenty_peers():
    for ref in ALL_CELLS:
        dims = dimensions_of(ref)
        assert len(dims) == 3
        assert all(ref in d for d in dims)
        assert len(peers(ref)) == 20
        assert ref not in peers(ref)


def test_cell_state_variants():
    assert CellState.preset(5).is_determined
    assert CellState.solved(5).is_determined
    pair = CellState.one_of_two(8, 2)
    assert pair.pair == (2, 8)
    assert not pair.is_determined
    unresolved = CellState.unresolved([4, 1, 7])
    assert unresolved.candidate_view() == frozenset({1, 4, 7})
    with pytest.raises(IntegrityError):
        CellState.unresolved([])
    with pytest.raises(ValueError):
        CellState.one_of_two(3, 3)
    with pytest.raises(ValueError):
        CellState.preset(0)


def test_state_for_candidates_normalizes():
    assert state_for_candidates([7]).status is Status.SOLVED
    assert state_for_candidates([7, 2]).pair == (2, 7)
    assert state_for_candidates([1, 2, 3]).status is Status.UNRESOLVED
    with pytest.raises(IntegrityError):
        state_for_candidates([])


def test_parse_grid_validation():
    with pytest.raises(PuzzleFormatError):
        parse_grid("123")
    with pytest.raises(PuzzleFormatError):
        parse_grid("x" * 81)
    grid = parse_grid(EASY.replace(".", "0"))
    assert oneline(grid) == EASY


def test_parse_marks_givens_preset_and_blanks_unresolved():
    grid = parse_grid(EASY)
    assert grid.at(CellRef(1, 1)).status is Status.PRE_SET
    blank = grid.at(CellRef(1, 3))
    assert blank.status is Status.UNRESOLVED
    assert blank.candidate_view() == ALL_IDENTITIES


def test_render_shows_determined_cells_only():
    grid = parse_grid(EASY)
    rows = render(grid).split("\n")
    assert len(rows) == 9
    assert rows[0] == "53..7...."
    solved = grid.with_cell(CellRef(1, 3), CellState.solved(4))
    assert render(solved).split("\n")[0] == "534.7...."


def test_candidates_subtracts_determined_peers():
    grid = parse_grid(EASY)
    assert candidates(grid, CellRef(1, 3)) == frozenset({1, 2, 4})
    with pytest.raises(UsageError):
        candidates(grid, CellRef(1, 1))


def test_is_consistent_flags_dimension_duplicates():
    grid = parse_grid(EASY)
    assert is_consistent(grid)
    broken = grid.with_cell(CellRef(1, 3), CellState.solved(5))
    assert not is_consistent(broken)


def test_canonical_state_text_sees_candidate_changes():
    grid = parse_grid(EASY)
    narrowed = grid.with_cell(CellRef(1, 3), CellState.unresolved([1, 2]))
    assert oneline(grid) == oneline(narrowed)
    assert canonical_state_text(grid) != canonical_state_text(narrowed)


@given(
    st.lists(
        st.one_of(st.just("."), st.integers(1, 9).map(str)),
        min_size=81,
        max_size=81,
    )
)
def test_parse_oneline_round_trip(chars):
    text = "".join(chars)
    grid = parse_grid(text)
    assert oneline(grid) == text
    assert parse_grid(oneline(grid)) == grid


@given(st.sets(st.integers(1, 9), min_size=1))
def test_state_for_candidates_matches_input(cands):
    state = state_for_candidates(cands)
    assert state.candidate_view() == frozenset(cands)
