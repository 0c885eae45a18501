import { ApiClient, ApiError, MoveReply } from "./api.js";
import { AuditPanel } from "./audit.js";
import { GridBoard } from "./grid.js";
import {
  ExclusionPanel,
  LocationPanel,
  MutualPanel,
  PanelContext,
} from "./panels.js";
import { MoveResponse, ReviewerReportView, SessionView } from "./types.js";

export interface AppOptions {
  /** Poll the service for session/ledger/report changes. */
  autoPoll?: boolean;
  pollMs?: number;
}

/** The application shell: owns the session, enforces a single in-flight
 * mutating request, and re-renders everything from the service's own
 * responses. No solving logic lives here. */
export class App {
  readonly root: HTMLElement;
  readonly board: GridBoard;
  readonly exclusion: ExclusionPanel;
  readonly location: LocationPanel;
  readonly mutual: MutualPanel;
  readonly audit: AuditPanel;

  private api: ApiClient;
  private session: SessionView | null = null;
  private inflight = false;
  private pending: Promise<unknown> = Promise.resolve();
  private reviewCells = new Set<string>();
  private freshSolves = new Set<string>();
  private banner: HTMLElement;
  private statusLine: HTMLElement;
  private puzzleInput: HTMLInputElement;
  private timer: ReturnType<typeof setInterval> | null = null;
  private options: Required<AppOptions>;

  constructor(root: HTMLElement, api: ApiClient, options: AppOptions = {}) {
    this.root = root;
    this.api = api;
    this.options = { autoPoll: options.autoPoll ?? true, pollMs: options.pollMs ?? 1500 };

    const header = document.createElement("header");
    this.puzzleInput = document.createElement("input");
    this.puzzleInput.className = "puzzle-input";
    this.puzzleInput.placeholder = "81 characters; . or 0 for empty";
    this.puzzleInput.maxLength = 81;
    const createButton = document.createElement("button");
    createButton.className = "mutating";
    createButton.textContent = "new session";
    createButton.addEventListener("click", () => this.create());
    header.appendChild(this.puzzleInput);
    header.appendChild(createButton);
    this.statusLine = document.createElement("div");
    this.statusLine.className = "status-line";
    header.appendChild(this.statusLine);
    root.appendChild(header);

    this.banner = document.createElement("div");
    this.banner.className = "banner";
    root.appendChild(this.banner);

    this.board = new GridBoard((cell) => this.exclusion.chooseTarget(cell));
    root.appendChild(this.board.root);

    const ctx: PanelContext = {
      api,
      sessionId: () => this.session?.id ?? null,
      mutate: (action) => void this.mutate(action),
      onMove: (reply) => this.handleMove(reply),
      onError: (err) => this.showError(err),
    };
    this.exclusion = new ExclusionPanel(ctx);
    this.location = new LocationPanel(ctx);
    this.mutual = new MutualPanel(ctx);
    this.audit = new AuditPanel((cells) => this.board.spotlight(cells));
    const panels = document.createElement("div");
    panels.className = "panels";
    panels.appendChild(this.exclusion.root);
    panels.appendChild(this.location.root);
    panels.appendChild(this.mutual.root);
    panels.appendChild(this.audit.root);
    root.appendChild(panels);
  }

  get sessionView(): SessionView | null {
    return this.session;
  }

  /** Resolves once every in-flight action (and what it queued) settles. */
  async settle(): Promise<void> {
    let last;
    do {
      last = this.pending;
      await last.catch(() => undefined);
    } while (last !== this.pending);
  }

  /** The single-in-flight gate: while one mutating request is out, submit
   * controls are disabled and further attempts are ignored. Mutations are
   * never retried automatically. */
  mutate(action: () => Promise<void>): Promise<void> {
    if (this.inflight) {
      return Promise.resolve();
    }
    this.inflight = true;
    this.setBanner("");
    this.toggleControls(true);
    const run = action()
      .catch((err) => this.showError(err))
      .finally(() => {
        this.inflight = false;
        this.toggleControls(false);
      });
    this.pending = run;
    return run;
  }

  create(): void {
    const puzzle = this.puzzleInput.value.trim();
    if (!puzzle) {
      return;
    }
    void this.mutate(async () => {
      const session = await this.api.createSession(puzzle);
      this.reviewCells.clear();
      this.freshSolves.clear();
      this.applySession(session);
      await this.refreshAudit();
      if (this.options.autoPoll) {
        this.startPolling();
      }
    });
  }

  startPolling(): void {
    if (this.timer === null) {
      this.timer = setInterval(() => void this.refresh(), this.options.pollMs);
    }
  }

  stopPolling(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  /** Re-pull session, ledger, and report; the poll timer lands here too. */
  async refresh(): Promise<void> {
    if (this.session === null || this.inflight) {
      return;
    }
    const sid = this.session.id;
    try {
      const [session, ledger, report] = await Promise.all([
        this.api.getSession(sid),
        this.api.ledgerText(sid),
        this.api.report(sid),
      ]);
      this.applyReport(report);
      this.applySession(session);
      this.audit.setLedger(ledger);
    } catch (err) {
      this.showError(err);
    }
  }

  private async handleMove(reply: MoveReply): Promise<void> {
    const move = reply.move;
    this.routeOutcome(move);
    if (move.result !== undefined) {
      this.exclusion.showResult(move.result);
      if (move.result === "#Error") {
        this.setBanner("#Error", "banner-sentinel");
      }
    }
    if (move.conclusion !== undefined) {
      this.location.showConclusion(
        move.conclusion.kind,
        move.conclusion.count,
        move.conclusion.position
      );
    }
    this.freshSolves.clear();
    if (move.report !== undefined) {
      this.mutual.showReport(move.report);
      for (const solved of move.report.newly_solved) {
        this.freshSolves.add(solved.cell);
      }
    }
    for (const delta of move.grid_delta) {
      if (delta.after.status === "Solved" && delta.before.status !== "Solved") {
        this.freshSolves.add(delta.cell);
      }
    }
    if (!reply.accepted) {
      this.setBanner(
        `${move.outcome.kind}: ${move.outcome.reason}`,
        "banner-integrity"
      );
    }
    this.applySession(move.session);
    await this.refreshAudit();
  }

  private routeOutcome(move: MoveResponse): void {
    switch (move.record.kind) {
      case "ExclusionAssert":
      case "CellConclude":
        this.exclusion.noteOutcome(move.outcome);
        break;
      case "LocationAssert":
      case "LocationConclude":
        this.location.noteOutcome(move.outcome);
        break;
      case "MutualExclusionApply":
        this.mutual.noteOutcome(move.outcome);
        break;
    }
  }

  private async refreshAudit(): Promise<void> {
    if (this.session === null) {
      return;
    }
    const sid = this.session.id;
    const [ledger, report] = await Promise.all([
      this.api.ledgerText(sid),
      this.api.report(sid),
    ]);
    this.audit.setLedger(ledger);
    this.applyReport(report);
    if (this.session !== null) {
      this.board.update(this.session.grid, this.reviewCells, this.freshSolves);
    }
  }

  private applyReport(report: ReviewerReportView): void {
    this.audit.setReport(report);
    this.reviewCells.clear();
    for (const move of report.flagged) {
      for (const key of ["target", "position"]) {
        const cell = move.payload[key];
        if (cell) {
          this.reviewCells.add(cell);
        }
      }
    }
  }

  private applySession(session: SessionView): void {
    this.session = session;
    this.board.update(session.grid, this.reviewCells, this.freshSolves);
    this.statusLine.textContent =
      `session ${session.id} · moves ${session.seq} · ` +
      `review flags ${session.review_flags} · digest ${session.digest.slice(0, 12)}` +
      (session.complete ? " · complete" : "");
    this.exclusion.update(session);
    this.location.update(session);
    this.mutual.update(session);
  }

  private setBanner(text: string, className = ""): void {
    this.banner.textContent = text;
    this.banner.className = `banner ${className}`.trim();
    this.banner.classList.toggle("visible", text.length > 0);
  }

  private showError(err: unknown): void {
    if (err instanceof ApiError) {
      this.setBanner(`${err.status}: ${err.message}`, "banner-service-error");
    } else {
      this.setBanner(String(err), "banner-service-error");
    }
  }

  private toggleControls(disabled: boolean): void {
    for (const button of this.root.querySelectorAll<HTMLButtonElement>("button.mutating")) {
      button.disabled = disabled;
    }
  }
}
