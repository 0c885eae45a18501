"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class PuzzleFormatError(WorkbenchError):
    """Puzzle text is not a well-formed 81-character grid."""


class UsageError(WorkbenchError):
    """An operation was invoked against a state its contract forbids."""


class IntegrityError(WorkbenchError):
    """A step that would corrupt the model as a whole; never applied."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class LedgerError(WorkbenchError):
    """Ledger file is malformed or its record sequence is corrupt."""


class ReplayDivergence(WorkbenchError):
    """Replaying a ledger produced a different outcome or digest."""

    def __init__(self, seq: int, detail: str):
        super().__init__(f"replay diverged at seq {seq}: {detail}")
        self.seq = seq
        self.detail = detail
