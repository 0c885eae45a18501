"""Append-only move ledger: outcome taxonomy, record encoding, reviewer report.

File format (bit-exact, line oriented):

    version=1
    puzzle=<81 chars, '.' for empty>
    digest=sha256
    <seq>|<kind>|key=value|...|<outcome>|<hex digest>

One record per line. Values are percent-escaped just enough to keep the
line structure unambiguous ('%', '|', newlines). An outcome field looks
like ``Valid``, ``Valid+redundant`` or ``IncorrectButRecorded+review:<reason>``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from urllib.parse import unquote

from .errors import LedgerError
from .grid import Grid, canonical_state_text

VALID = "Valid"
INCORRECT_BUT_RECORDED = "IncorrectButRecorded"
INTEGRITY_ERROR = "IntegrityError"
OUTCOME_KINDS = (VALID, INCORRECT_BUT_RECORDED, INTEGRITY_ERROR)

FLAG_REDUNDANT = "redundant"
FLAG_REVIEW = "review"

EXCLUSION_ASSERT = "ExclusionAssert"
LOCATION_ASSERT = "LocationAssert"
MUTUAL_EXCLUSION_APPLY = "MutualExclusionApply"
CELL_CONCLUDE = "CellConclude"
LOCATION_CONCLUDE = "LocationConclude"
MOVE_KINDS = (
    EXCLUSION_ASSERT,
    LOCATION_ASSERT,
    MUTUAL_EXCLUSION_APPLY,
    CELL_CONCLUDE,
    LOCATION_CONCLUDE,
)

DIGEST_NAME = "sha256"


def _escape(text: str) -> str:
    return (
        text.replace("%", "%25")
        .replace("|", "%7C")
        .replace("\n", "%0A")
        .replace("\r", "%0D")
    )


def _unescape(text: str) -> str:
    return unquote(text)


def grid_digest(grid: Grid) -> str:
    """Checksum of the full canonical grid state (rendering + candidate sets)."""
    return hashlib.sha256(canonical_state_text(grid).encode()).hexdigest()


@dataclass(frozen=True)
class ValidationOutcome:
    """How a user assertion fared: accepted, wrong-but-recorded, or rejected.

    Wrong-but-recorded claims still take effect and carry the review flag;
    integrity errors never accompany a state change.
    """

    kind: str
    reason: str = ""
    flags: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.kind not in OUTCOME_KINDS:
            raise ValueError(f"unknown outcome kind {self.kind!r}")
        if self.kind == INCORRECT_BUT_RECORDED and FLAG_REVIEW not in self.flags:
            raise ValueError("wrong-but-recorded outcomes always carry the review flag")

    @classmethod
    def valid(cls, redundant: bool = False) -> "ValidationOutcome":
        flags = frozenset((FLAG_REDUNDANT,)) if redundant else frozenset()
        return cls(VALID, flags=flags)

    @classmethod
    def incorrect(cls, reason: str, redundant: bool = False) -> "ValidationOutcome":
        flags = {FLAG_REVIEW}
        if redundant:
            flags.add(FLAG_REDUNDANT)
        return cls(INCORRECT_BUT_RECORDED, reason=reason, flags=frozenset(flags))

    @classmethod
    def integrity(cls, reason: str) -> "ValidationOutcome":
        return cls(INTEGRITY_ERROR, reason=reason)

    @property
    def rejected(self) -> bool:
        return self.kind == INTEGRITY_ERROR

    @property
    def review_flagged(self) -> bool:
        return FLAG_REVIEW in self.flags

    def encode(self) -> str:
        head = self.kind + "".join(f"+{f}" for f in sorted(self.flags))
        return f"{head}:{_escape(self.reason)}" if self.reason else head

    @classmethod
    def decode(cls, text: str) -> "ValidationOutcome":
        head, _, reason = text.partition(":")
        kind, *flags = head.split("+")
        try:
            return cls(kind, reason=_unescape(reason), flags=frozenset(flags))
        except ValueError as exc:
            raise LedgerError(f"bad outcome field {text!r}: {exc}") from exc


@dataclass(frozen=True)
class MoveRecord:
    """One ledger line: a move's inputs, its outcome, and the grid digest after it."""

    seq: int
    kind: str
    payload: dict[str, str]
    outcome: ValidationOutcome
    grid_digest: str

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        if self.seq < 1:
            raise ValueError("sequence numbers start at 1")
        if not self.payload:
            raise ValueError("a move record needs at least one payload field")

    def encode(self) -> str:
        fields = [str(self.seq), self.kind]
        fields += [f"{k}={_escape(v)}" for k, v in self.payload.items()]
        fields.append(self.outcome.encode())
        fields.append(self.grid_digest)
        return "|".join(fields)

    @classmethod
    def decode(cls, line: str) -> "MoveRecord":
        parts = line.split("|")
        if len(parts) < 5:
            raise LedgerError(f"record line has too few fields: {line!r}")
        try:
            seq = int(parts[0])
        except ValueError as exc:
            raise LedgerError(f"bad sequence number {parts[0]!r}") from exc
        kind = parts[1]
        payload: dict[str, str] = {}
        for kv in parts[2:-2]:
            key, eq, value = kv.partition("=")
            if not eq or not key:
                raise LedgerError(f"bad payload field {kv!r} in record {seq}")
            if key in payload:
                raise LedgerError(f"duplicate payload key {key!r} in record {seq}")
            payload[key] = _unescape(value)
        outcome = ValidationOutcome.decode(parts[-2])
        try:
            return cls(seq, kind, payload, outcome, parts[-1])
        except ValueError as exc:
            raise LedgerError(str(exc)) from exc


@dataclass
class Ledger:
    """Replayable transcript of one session, rejected attempts included."""

    puzzle: str
    records: list[MoveRecord] = field(default_factory=list)
    digest_name: str = DIGEST_NAME

    def append(self, record: MoveRecord) -> None:
        expected = len(self.records) + 1
        if record.seq != expected:
            raise LedgerError(f"sequence corruption: expected seq {expected}, got {record.seq}")
        self.records.append(record)

    def serialize(self) -> str:
        lines = [f"version=1", f"puzzle={self.puzzle}", f"digest={self.digest_name}"]
        lines += [r.encode() for r in self.records]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Ledger":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if len(lines) < 3:
            raise LedgerError("ledger file is truncated: missing header")
        if lines[0] != "version=1":
            raise LedgerError(f"unsupported ledger version line {lines[0]!r}")
        if not lines[1].startswith("puzzle="):
            raise LedgerError("second header line must be puzzle=<81 chars>")
        puzzle = lines[1][len("puzzle="):]
        if len(puzzle) != 81 or any(ch not in ".123456789" for ch in puzzle):
            raise LedgerError("puzzle header is not a canonical 81-character grid")
        if not lines[2].startswith("digest="):
            raise LedgerError("third header line must be digest=<algorithm>")
        digest_name = lines[2][len("digest="):]
        if digest_name != DIGEST_NAME:
            raise LedgerError(f"unsupported digest algorithm {digest_name!r}")
        ledger = cls(puzzle=puzzle, digest_name=digest_name)
        for n, line in enumerate(lines[3:], start=4):
            if line == "":
                raise LedgerError(f"blank record line {n}")
            record = MoveRecord.decode(line)
            try:
                ledger.append(record)
            except LedgerError as exc:
                raise LedgerError(f"line {n}: {exc}") from exc
        return ledger

    def review_flag_count(self) -> int:
        return sum(1 for r in self.records if r.outcome.review_flagged)


@dataclass(frozen=True)
class FlaggedMove:
    seq: int
    kind: str
    witness: str
    reason: str
    payload: dict[str, str]


@dataclass(frozen=True)
class ReviewerReport:
    """What a human reviewer needs: outcome tallies, every move whose cited
    rationale did not validate, and every rejected attempt."""

    total: int
    counts: dict[str, int]
    flagged: tuple[FlaggedMove, ...]
    integrity_attempts: tuple[FlaggedMove, ...]

    def to_dict(self) -> dict:
        def entry(m: FlaggedMove) -> dict:
            return {
                "seq": m.seq,
                "kind": m.kind,
                "witness": m.witness,
                "reason": m.reason,
                "payload": dict(m.payload),
            }

        return {
            "total": self.total,
            "counts": dict(self.counts),
            "flagged": [entry(m) for m in self.flagged],
            "integrity_attempts": [entry(m) for m in self.integrity_attempts],
        }

    def render_text(self) -> str:
        lines = [f"records: {self.total}"]
        for kind in OUTCOME_KINDS:
            lines.append(f"  {kind}: {self.counts.get(kind, 0)}")
        lines.append(f"review-flagged moves: {len(self.flagged)}")
        for m in self.flagged:
            lines.append(f"  seq {m.seq} {m.kind} witness={m.witness or '-'}: {m.reason}")
        lines.append(f"rejected attempts: {len(self.integrity_attempts)}")
        for m in self.integrity_attempts:
            lines.append(f"  seq {m.seq} {m.kind}: {m.reason}")
        return "\n".join(lines)


def reviewer_report(ledger: Ledger) -> ReviewerReport:
    """Summarize a ledger for review: tallies, flagged moves, rejected attempts."""
    counts: dict[str, int] = {kind: 0 for kind in OUTCOME_KINDS}
    flagged: list[FlaggedMove] = []
    rejected: list[FlaggedMove] = []
    for r in ledger.records:
        counts[r.outcome.kind] += 1
        entry = FlaggedMove(
            seq=r.seq,
            kind=r.kind,
            witness=r.payload.get("witness", ""),
            reason=r.outcome.reason,
            payload=dict(r.payload),
        )
        if r.outcome.review_flagged:
            flagged.append(entry)
        if r.outcome.rejected:
            rejected.append(entry)
    return ReviewerReport(
        total=len(ledger.records),
        counts=counts,
        flagged=tuple(flagged),
        integrity_attempts=tuple(rejected),
    )
