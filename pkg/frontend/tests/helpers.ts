import { vi } from "vitest";
import {
  CellView,
  ExclusionAnalysisView,
  GridViewData,
  MoveResponse,
  OutcomeView,
  RecordView,
  ReviewerReportView,
  SessionView,
} from "../src/types.js";

export const EMPTY_PUZZLE = ".".repeat(81);

export function allCellCodes(): string[] {
  const codes: string[] = [];
  for (let r = 1; r <= 9; r++) {
    for (let c = 1; c <= 9; c++) {
      codes.push(`R${r}C${c}`);
    }
  }
  return codes;
}

export function unresolvedCell(code: string): CellView {
  return {
    cell: code,
    status: "Unresolved",
    value: null,
    pair: null,
    candidates: [1, 2, 3, 4, 5, 6, 7, 8, 9],
  };
}

export function emptyGrid(): GridViewData {
  return {
    rows: Array(9).fill(".".repeat(9)),
    cells: allCellCodes().map(unresolvedCell),
  };
}

export function baseSession(overrides: Partial<SessionView> = {}): SessionView {
  return {
    id: "abcdef123456",
    puzzle: EMPTY_PUZZLE,
    seq: 0,
    digest: "0".repeat(64),
    complete: false,
    review_flags: 0,
    grid: emptyGrid(),
    open_analysis: null,
    ...overrides,
  };
}

export function exclusionAnalysis(
  overrides: Partial<ExclusionAnalysisView> = {}
): ExclusionAnalysisView {
  return {
    mode: "exclusion",
    target: "R1C3",
    populated: true,
    prior: unresolvedCell("R1C3"),
    auto_exclusions: [],
    justifications: [],
    working: [1, 2, 3, 4, 5, 6, 7, 8, 9],
    ...overrides,
  };
}

export function outcome(
  kind: OutcomeView["kind"],
  reason = "",
  flags: string[] = []
): OutcomeView {
  return { kind, flags, reason };
}

export function record(
  seq: number,
  kind: string,
  payload: Record<string, string>,
  out: OutcomeView
): RecordView {
  return { seq, kind, payload, outcome: out, digest: "f".repeat(64), line: `${seq}|${kind}` };
}

export function moveResponse(
  kind: string,
  out: OutcomeView,
  session: SessionView,
  extra: Partial<MoveResponse> = {}
): MoveResponse {
  return {
    outcome: out,
    record: record(session.seq, kind, {}, out),
    grid_delta: [],
    session,
    ...extra,
  };
}

export function emptyReport(): ReviewerReportView {
  return { total: 0, counts: {}, flagged: [], integrity_attempts: [] };
}

export const LEDGER_HEADERS = `version=1\npuzzle=${EMPTY_PUZZLE}\ndigest=sha256\n`;

export interface RouteReply {
  status?: number;
  json?: unknown;
  text?: string;
}

export interface Route {
  method: string;
  path: string | RegExp;
  reply: (url: URL, body: unknown) => RouteReply | Promise<RouteReply>;
}

export interface LoggedCall {
  method: string;
  path: string;
  body: unknown;
}

/** Replace global fetch with a route table; returns the call log. */
export function installFetch(routes: Route[]): LoggedCall[] {
  const calls: LoggedCall[] = [];
  vi.stubGlobal(
    "fetch",
    async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
      const url = new URL(String(input), "http://mock");
      const method = init?.method ?? "GET";
      const body =
        typeof init?.body === "string" ? JSON.parse(init.body) : undefined;
      calls.push({ method, path: url.pathname + url.search, body });
      for (const route of routes) {
        const hit =
          typeof route.path === "string"
            ? url.pathname === route.path
            : route.path.test(url.pathname);
        if (route.method === method && hit) {
          const out = await route.reply(url, body);
          if (out.text !== undefined) {
            return new Response(out.text, {
              status: out.status ?? 200,
              headers: { "Content-Type": "text/plain; charset=utf-8" },
            });
          }
          return new Response(JSON.stringify(out.json), {
            status: out.status ?? 200,
            headers: { "Content-Type": "application/json" },
          });
        }
      }
      throw new Error(`no mock route for ${method} ${url.pathname}${url.search}`);
    }
  );
  return calls;
}

/** Option values of a restricted drop-down, placeholder excluded. */
export function optionValues(select: HTMLSelectElement): string[] {
  return [...select.options].filter((o) => !o.disabled).map((o) => o.value);
}

export function choiceSelect(root: HTMLElement, name: string): HTMLSelectElement {
  const el = root.querySelector<HTMLSelectElement>(`select[data-choice="${name}"]`);
  if (!el) {
    throw new Error(`no choice select named ${name}`);
  }
  return el;
}

export function buttonLabeled(root: HTMLElement, label: string): HTMLButtonElement {
  for (const button of root.querySelectorAll<HTMLButtonElement>("button")) {
    if (button.textContent === label) {
      return button;
    }
  }
  throw new Error(`no button labeled ${label}`);
}

export function pick(select: HTMLSelectElement, value: string): void {
  select.value = value;
  select.dispatchEvent(new Event("change", { bubbles: true }));
}
