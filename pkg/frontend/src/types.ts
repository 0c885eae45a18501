/** JSON shapes returned by the workbench service. The UI renders these
 * verbatim; it never derives an outcome of its own. */

export type StatusName = "Pre-Set" | "Solved" | "1 of 2" | "Unresolved";

export type OutcomeKind = "Valid" | "IncorrectButRecorded" | "IntegrityError";

export interface StateView {
  status: StatusName;
  value: number | null;
  pair: number[] | null;
  candidates: number[] | null;
}

export interface CellView extends StateView {
  cell: string;
}

export interface GridViewData {
  rows: string[];
  cells: CellView[];
}

export interface OutcomeView {
  kind: OutcomeKind;
  flags: string[];
  reason: string;
}

export interface RecordView {
  seq: number;
  kind: string;
  payload: Record<string, string>;
  outcome: OutcomeView;
  digest: string;
  line: string;
}

export interface ExclusionAnalysisView {
  mode: "exclusion";
  target: string;
  populated: boolean;
  prior: StateView | null;
  auto_exclusions: { identity: number; witness: string }[];
  justifications: { excluded: number; witness: string; via: string }[];
  working: number[];
}

export interface LocationAnalysisView {
  mode: "location";
  dim: string;
  identity: number;
  open_positions: string[];
  excluded: Record<string, string>;
  count: number;
}

export type AnalysisView = ExclusionAnalysisView | LocationAnalysisView;

export interface SessionView {
  id: string;
  puzzle: string;
  seq: number;
  digest: string;
  complete: boolean;
  review_flags: number;
  grid: GridViewData;
  open_analysis: AnalysisView | null;
}

export interface MutualReportView {
  dim: string;
  parity_total: number;
  groups: { members: string[]; pair: number[] }[];
  revised: { cell: string; before: number[]; after: number[] }[];
  newly_solved: { cell: string; identity: number }[];
}

export interface ConclusionView {
  kind: "inconclusive" | "solved" | "integrity_error";
  count: number;
  position: string | null;
}

export interface MoveResponse {
  outcome: OutcomeView;
  record: RecordView;
  grid_delta: { cell: string; before: StateView; after: StateView }[];
  session: SessionView;
  result?: string;
  conclusion?: ConclusionView;
  report?: MutualReportView;
}

export interface AllowedInputs {
  context: string;
  values: (string | number)[];
}

export interface FlaggedMoveView {
  seq: number;
  kind: string;
  witness: string;
  reason: string;
  payload: Record<string, string>;
}

export interface ReviewerReportView {
  total: number;
  counts: Record<string, number>;
  flagged: FlaggedMoveView[];
  integrity_attempts: FlaggedMoveView[];
}
