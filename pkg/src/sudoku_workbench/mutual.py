"""Mutual exclusion: two cells sharing the same candidate pair lock it up.

Within one dimension, two cells both recorded as the same "1 of 2" pair
must take those two identities between them, so the pair is struck from
every other cell of the dimension. Three cells claiming one pair is a
contradiction, and an odd number of cells participating in pair groups
trips the parity check: both are integrity errors and nothing is written.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IntegrityError
from .grid import CellRef, Dimension, Grid, Status, state_for_candidates


@dataclass(frozen=True)
class PairGroup:
    """Two cells of one dimension locked to the same candidate pair."""

    dim: Dimension
    members: tuple[CellRef, CellRef]
    pair: tuple[int, int]

    def __post_init__(self):
        a, b = self.members
        if a == b:
            raise ValueError("a pair group needs two distinct cells")
        if a not in self.dim or b not in self.dim:
            raise ValueError(f"pair group members must lie in {self.dim.code()}")
        lo, hi = self.pair
        if not (1 <= lo < hi <= 9):
            raise ValueError("a pair is two distinct identities in ascending order")


@dataclass(frozen=True)
class CellRevision:
    """One cell's candidate set before and after the strike."""

    ref: CellRef
    before: tuple[int, ...]
    after: tuple[int, ...]


@dataclass(frozen=True)
class ExclusionReport:
    """What one application did: the groups found, every revised cell, and
    any cells the revision solved outright."""

    dim: Dimension
    groups: tuple[PairGroup, ...]
    revised: tuple[CellRevision, ...]
    newly_solved: tuple[tuple[CellRef, int], ...]
    parity_total: int

    @property
    def changed(self) -> bool:
        return bool(self.revised)


def find_pair_groups(grid: Grid, dim: Dimension) -> tuple[PairGroup, ...]:
    """Collect the dimension's matching "1 of 2" pairs, in cell order.

    Three or more cells claiming the same pair cannot all be satisfied;
    that is an integrity error, not a group.
    """
    by_pair: dict[tuple[int, int], list[CellRef]] = {}
    for ref in dim.cells():
        state = grid.at(ref)
        if state.status is Status.ONE_OF_TWO:
            by_pair.setdefault(state.pair, []).append(ref)
    groups = []
    for pair, refs in by_pair.items():
        if len(refs) > 2:
            cells = ", ".join(r.code() for r in refs)
            raise IntegrityError(
                f"{len(refs)} cells ({cells}) in {dim.code()} all claim the pair "
                f"{pair[0]},{pair[1]}; two identities cannot fill them"
            )
        if len(refs) == 2:
            groups.append(PairGroup(dim=dim, members=(refs[0], refs[1]), pair=pair))
    return tuple(groups)


def apply_pair_groups(
    grid: Grid, dim: Dimension, groups: tuple[PairGroup, ...]
) -> tuple[Grid, ExclusionReport]:
    """Strike each group's pair from the rest of the dimension.

    The parity check runs first: an even number of cells must participate
    in the groups, or the whole application is refused. A strike that
    would empty a cell's candidate set is likewise refused, leaving the
    grid untouched either way.
    """
    participants = {member for g in groups for member in g.members}
    parity_total = len(participants)
    if parity_total % 2 == 1:
        raise IntegrityError(
            f"{parity_total} cells participate in pair groups in {dim.code()}; "
            "an odd total is a systems error"
        )
    revisions: list[CellRevision] = []
    solved: list[tuple[CellRef, int]] = []
    changes: dict[CellRef, "object"] = {}
    for ref in dim.cells():
        state = grid.at(ref)
        if state.is_determined:
            continue
        banned = set()
        for g in groups:
            if ref not in g.members:
                banned.update(g.pair)
        view = tuple(sorted(state.candidate_view()))
        after = tuple(v for v in view if v not in banned)
        if after == view:
            continue
        if not after:
            raise IntegrityError(
                f"striking {sorted(banned)} would leave {ref.code()} with no candidates"
            )
        new_state = state_for_candidates(after)
        changes[ref] = new_state
        revisions.append(CellRevision(ref=ref, before=view, after=after))
        if new_state.status is Status.SOLVED:
            solved.append((ref, new_state.value))
    result = grid.with_cells(changes) if changes else grid
    report = ExclusionReport(
        dim=dim,
        groups=groups,
        revised=tuple(revisions),
        newly_solved=tuple(solved),
        parity_total=parity_total,
    )
    return result, report


def apply_mutual_exclusion(grid: Grid, dim: Dimension) -> tuple[Grid, ExclusionReport]:
    """Find the dimension's pair groups and apply them in one step."""
    return apply_pair_groups(grid, dim, find_pair_groups(grid, dim))


__all__ = [
    "PairGroup",
    "CellRevision",
    "ExclusionReport",
    "find_pair_groups",
    "apply_pair_groups",
    "apply_mutual_exclusion",
]
