"""HTTP facade over the workbench: sessions, moves, transcripts, reports.

Each session is one workbench whose ledger file under the data directory
is the source of truth: records are appended as they happen, and a session
absent from memory is rebuilt by replaying its file. Validation outcomes
map onto status codes: accepted moves (valid or wrong-but-recorded) return
200, rejected attempts return 422 with the recorded move in the body, and
malformed requests never reach the ledger at all (400/404/409).
"""

from __future__ import annotations

import re
import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .errors import IntegrityError, PuzzleFormatError, UsageError
from .exclusion import CellAnalysis
from .grid import (
    ALL_CELLS,
    ALL_DIMENSIONS,
    ALL_IDENTITIES,
    BOX,
    COL,
    CellRef,
    CellState,
    Dimension,
    Grid,
    box_of,
    col_dim,
    render,
)
from .ledger import Ledger, MoveRecord, grid_digest, reviewer_report
from .location import INTEGRITY, LocationAnalysis
from .workbench import MoveResult, Workbench, diff_grids, replay_workbench

_SESSION_ID = re.compile(r"^[0-9a-f]{12}$")


class SessionRuntime:
    def __init__(self, sid: str, wb: Workbench, path: Path):
        self.sid = sid
        self.wb = wb
        self.path = path
        self.lock = threading.Lock()


class SessionStore:
    """In-memory sessions backed by one ledger file each."""

    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, SessionRuntime] = {}
        self._lock = threading.Lock()

    def create(self, puzzle: str) -> SessionRuntime:
        wb = Workbench.from_puzzle(puzzle)
        sid = uuid.uuid4().hex[:12]
        runtime = SessionRuntime(sid, wb, self.data_dir / f"{sid}.ledger")
        runtime.path.write_text(wb.ledger.serialize())
        with self._lock:
            self._sessions[sid] = runtime
        return runtime

    def get(self, sid: str) -> SessionRuntime | None:
        if not _SESSION_ID.match(sid):
            return None
        with self._lock:
            runtime = self._sessions.get(sid)
        if runtime is not None:
            return runtime
        path = self.data_dir / f"{sid}.ledger"
        if not path.exists():
            return None
        ledger = Ledger.parse(path.read_text())
        wb, _ = replay_workbench(ledger.puzzle, ledger.records)
        runtime = SessionRuntime(sid, wb, path)
        with self._lock:
            return self._sessions.setdefault(sid, runtime)

    def persist(self, runtime: SessionRuntime, record: MoveRecord) -> None:
        with runtime.path.open("a") as f:
            f.write(record.encode() + "\n")


# -- JSON views ---------------------------------------------------------------


def state_json(state: CellState) -> dict:
    return {
        "status": state.status.value,
        "value": state.value,
        "pair": list(state.pair) if state.pair else None,
        "candidates": sorted(state.candidates) if state.candidates else None,
    }


def grid_json(grid: Grid) -> dict:
    return {
        "rows": render(grid).split("\n"),
        "cells": [{"cell": ref.code(), **state_json(grid.at(ref))} for ref in ALL_CELLS],
    }


def record_json(record: MoveRecord) -> dict:
    return {
        "seq": record.seq,
        "kind": record.kind,
        "payload": dict(record.payload),
        "outcome": outcome_json(record),
        "digest": record.grid_digest,
        "line": record.encode(),
    }


def outcome_json(record: MoveRecord) -> dict:
    return {
        "kind": record.outcome.kind,
        "flags": sorted(record.outcome.flags),
        "reason": record.outcome.reason,
    }


def analysis_json(analysis: CellAnalysis | LocationAnalysis | None) -> dict | None:
    if analysis is None:
        return None
    if isinstance(analysis, CellAnalysis):
        return {
            "mode": "exclusion",
            "target": analysis.target.code(),
            "populated": analysis.populated,
            "prior": state_json(analysis.prior_status) if analysis.prior_status else None,
            "auto_exclusions": [
                {"identity": identity, "witness": ref.code()}
                for identity, ref in analysis.auto_row_exclusions
            ],
            "justifications": [
                {"excluded": j.excluded, "witness": j.witness.code(), "via": j.via.code()}
                for j in analysis.justifications
            ],
            "working": sorted(analysis.working),
        }
    return {
        "mode": "location",
        "dim": analysis.dim.code(),
        "identity": analysis.identity,
        "open_positions": [p.code() for p in analysis.open_positions],
        "excluded": {p.code(): w.code() for p, w in analysis.excluded.items()},
        "count": analysis.count,
    }


def session_json(runtime: SessionRuntime) -> dict:
    wb = runtime.wb
    return {
        "id": runtime.sid,
        "puzzle": wb.ledger.puzzle,
        "seq": len(wb.ledger.records),
        "digest": grid_digest(wb.grid),
        "complete": wb.grid.is_complete(),
        "review_flags": wb.ledger.review_flag_count(),
        "grid": grid_json(wb.grid),
        "open_analysis": analysis_json(wb.open_analysis),
    }


def move_json(runtime: SessionRuntime, result: MoveResult) -> dict:
    body = {
        "outcome": outcome_json(result.record),
        "record": record_json(result.record),
        "grid_delta": [
            {"cell": ref.code(), "before": state_json(b), "after": state_json(a)}
            for ref, b, a in diff_grids(result.grid_before, result.grid_after)
        ],
        "session": session_json(runtime),
    }
    if result.result is not None:
        body["result"] = result.result.render()
    if result.conclusion is not None:
        body["conclusion"] = {
            "kind": result.conclusion.kind,
            "count": result.conclusion.count,
            "position": result.conclusion.position.code() if result.conclusion.position else None,
        }
    if result.report is not None:
        body["report"] = {
            "dim": result.report.dim.code(),
            "parity_total": result.report.parity_total,
            "groups": [
                {"members": [m.code() for m in g.members], "pair": list(g.pair)}
                for g in result.report.groups
            ],
            "revised": [
                {"cell": r.ref.code(), "before": list(r.before), "after": list(r.after)}
                for r in result.report.revised
            ],
            "newly_solved": [
                {"cell": ref.code(), "identity": v} for ref, v in result.report.newly_solved
            ],
        }
    return body


# -- request bodies -----------------------------------------------------------


class CreateSessionBody(BaseModel):
    puzzle: str


class OpenAnalysisBody(BaseModel):
    mode: str
    target: str | None = None
    populate: bool = True
    dim: str | None = None
    identity: int | None = None


class MoveBody(BaseModel):
    kind: str
    target: str | None = None
    excluded: int | None = None
    witness: str | None = None
    via: str | None = None
    position: str | None = None


class MutualBody(BaseModel):
    dim: str


# -- app ----------------------------------------------------------------------


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message, **extra})


def _need(value, name: str):
    if value is None:
        raise ValueError(f"field {name!r} is required for this request")
    return value


def create_app(data_dir: Path | str, ui_dir: Path | str | None = None) -> FastAPI:
    app = FastAPI(title="sudoku-workbench", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = SessionStore(Path(data_dir))
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    def bad_body(request: Request, exc: RequestValidationError):
        return _error(400, f"invalid request body: {exc.errors()[0].get('msg', 'malformed')}")

    @app.exception_handler(ValueError)
    def bad_value(request: Request, exc: ValueError):
        return _error(400, str(exc))

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        try:
            runtime = store.create(body.puzzle)
        except (PuzzleFormatError, ValueError) as exc:
            return _error(400, str(exc))
        return session_json(runtime)

    def _runtime_or_none(sid: str) -> SessionRuntime | None:
        return store.get(sid)

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        runtime = _runtime_or_none(sid)
        if runtime is None:
            return _error(404, f"no session {sid!r}")
        with runtime.lock:
            return session_json(runtime)

    @app.post("/sessions/{sid}/analysis")
    def open_analysis(sid: str, body: OpenAnalysisBody):
        runtime = _runtime_or_none(sid)
        if runtime is None:
            return _error(404, f"no session {sid!r}")
        with runtime.lock:
            if runtime.wb.open_analysis is not None:
                return _error(409, "an analysis is already open; conclude it first")
            try:
                if body.mode == "exclusion":
                    target = CellRef.parse(_need(body.target, "target"))
                    runtime.wb.open_exclusion(target, populate=body.populate)
                elif body.mode == "location":
                    dim = Dimension.parse(_need(body.dim, "dim"))
                    runtime.wb.open_location(dim, _need(body.identity, "identity"))
                else:
                    return _error(
                        400, f"unknown analysis mode {body.mode!r}",
                        allowed=["exclusion", "location"],
                    )
            except UsageError as exc:
                return _error(400, str(exc))
            return {
                "analysis": analysis_json(runtime.wb.open_analysis),
                "session": session_json(runtime),
            }

    def _respond_move(runtime: SessionRuntime, result: MoveResult):
        store.persist(runtime, result.record)
        body = move_json(runtime, result)
        status = 422 if result.outcome.rejected else 200
        return JSONResponse(status_code=status, content=body)

    @app.post("/sessions/{sid}/moves")
    def post_move(sid: str, body: MoveBody):
        runtime = _runtime_or_none(sid)
        if runtime is None:
            return _error(404, f"no session {sid!r}")
        with runtime.lock:
            analysis = runtime.wb.open_analysis
            if analysis is None:
                return _error(409, "no analysis is open")
            try:
                if body.kind == "exclusion_assert":
                    if not isinstance(analysis, CellAnalysis):
                        return _error(409, "the open analysis is a location analysis")
                    result = runtime.wb.assert_exclusion_move(
                        CellRef.parse(_need(body.target, "target")),
                        _need(body.excluded, "excluded"),
                        CellRef.parse(_need(body.witness, "witness")),
                        Dimension.parse(_need(body.via, "via")),
                    )
                elif body.kind == "location_assert":
                    if not isinstance(analysis, LocationAnalysis):
                        return _error(409, "the open analysis is a cell analysis")
                    result = runtime.wb.assert_location_move(
                        CellRef.parse(_need(body.position, "position")),
                        CellRef.parse(_need(body.witness, "witness")),
                    )
                else:
                    return _error(
                        400, f"unknown move kind {body.kind!r}",
                        allowed=["exclusion_assert", "location_assert"],
                    )
            except UsageError as exc:
                return _error(409, str(exc))
            return _respond_move(runtime, result)

    @app.post("/sessions/{sid}/conclude")
    def conclude(sid: str):
        runtime = _runtime_or_none(sid)
        if runtime is None:
            return _error(404, f"no session {sid!r}")
        with runtime.lock:
            if runtime.wb.open_analysis is None:
                return _error(409, "no analysis is open")
            try:
                result = runtime.wb.conclude()
            except IntegrityError as exc:
                return _error(422, exc.reason)
            return _respond_move(runtime, result)

    @app.post("/sessions/{sid}/mutual-exclusion")
    def mutual(sid: str, body: MutualBody):
        runtime = _runtime_or_none(sid)
        if runtime is None:
            return _error(404, f"no session {sid!r}")
        with runtime.lock:
            if runtime.wb.open_analysis is not None:
                return _error(409, "an analysis is open; conclude it first")
            result = runtime.wb.apply_mutual(Dimension.parse(body.dim))
            return _respond_move(runtime, result)

    @app.get("/sessions/{sid}/ledger")
    def ledger_text(sid: str):
        runtime = _runtime_or_none(sid)
        if runtime is None:
            return _error(404, f"no session {sid!r}")
        with runtime.lock:
            return PlainTextResponse(runtime.wb.ledger.serialize())

    @app.get("/sessions/{sid}/report")
    def report(sid: str):
        runtime = _runtime_or_none(sid)
        if runtime is None:
            return _error(404, f"no session {sid!r}")
        with runtime.lock:
            return reviewer_report(runtime.wb.ledger).to_dict()

    @app.get("/sessions/{sid}/allowed-inputs")
    def allowed_inputs(sid: str, context: str, dimension: str | None = None):
        runtime = _runtime_or_none(sid)
        if runtime is None:
            return _error(404, f"no session {sid!r}")
        with runtime.lock:
            analysis = runtime.wb.open_analysis
            if context == "identity":
                values = sorted(ALL_IDENTITIES)
            elif context == "dimension":
                values = [d.code() for d in ALL_DIMENSIONS]
            elif context == "cell":
                values = [ref.code() for ref in ALL_CELLS]
            elif context == "via":
                if isinstance(analysis, CellAnalysis):
                    target = analysis.target
                    values = [col_dim(target.col).code(), box_of(target).code()]
                else:
                    values = [d.code() for d in ALL_DIMENSIONS if d.kind in (COL, BOX)]
            elif context == "witness":
                if dimension is None:
                    return _error(400, "context 'witness' needs a ?dimension= parameter")
                values = [ref.code() for ref in Dimension.parse(dimension).cells()]
            elif context == "position":
                if not isinstance(analysis, LocationAnalysis):
                    return _error(400, "context 'position' needs an open location analysis")
                values = [p.code() for p in analysis.open_positions if p not in analysis.excluded]
            else:
                return _error(
                    400, f"unknown input context {context!r}",
                    allowed=["identity", "dimension", "cell", "via", "witness", "position"],
                )
            return {"context": context, "values": values}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


__all__ = ["create_app", "SessionStore", "SessionRuntime", "session_json"]
