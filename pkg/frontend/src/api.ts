import {
  AllowedInputs,
  MoveResponse,
  ReviewerReportView,
  SessionView,
} from "./types.js";

/** A non-2xx response whose body was not a recorded move. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: { error?: string } | null
  ) {
    super(body?.error ?? `request failed with status ${status}`);
  }
}

/** A move the service validated, applied or rejected, and recorded. The
 * service answers 200 for applied moves and 422 for recorded rejections;
 * both carry the same body shape. */
export interface MoveReply {
  accepted: boolean;
  move: MoveResponse;
}

export interface OpenAnalysisRequest {
  mode: "exclusion" | "location";
  target?: string;
  populate?: boolean;
  dim?: string;
  identity?: number;
}

export interface MoveRequest {
  kind: "exclusion_assert" | "location_assert";
  target?: string;
  excluded?: number;
  witness?: string;
  via?: string;
  position?: string;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown
  ): Promise<T> {
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const data = text ? JSON.parse(text) : null;
    if (!response.ok) {
      throw new ApiError(response.status, data);
    }
    return data as T;
  }

  /** POSTs that produce a ledger record: 422 bodies carrying a record are
   * recorded rejections, not transport failures. */
  private async move(path: string, body?: unknown): Promise<MoveReply> {
    const response = await fetch(this.base + path, {
      method: "POST",
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const data = await response.json();
    if (response.ok) {
      return { accepted: true, move: data as MoveResponse };
    }
    if (response.status === 422 && data && "record" in data) {
      return { accepted: false, move: data as MoveResponse };
    }
    throw new ApiError(response.status, data);
  }

  createSession(puzzle: string): Promise<SessionView> {
    return this.request("POST", "/sessions", { puzzle });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  openAnalysis(
    id: string,
    body: OpenAnalysisRequest
  ): Promise<{ analysis: unknown; session: SessionView }> {
    return this.request("POST", `/sessions/${id}/analysis`, body);
  }

  postMove(id: string, body: MoveRequest): Promise<MoveReply> {
    return this.move(`/sessions/${id}/moves`, body);
  }

  conclude(id: string): Promise<MoveReply> {
    return this.move(`/sessions/${id}/conclude`);
  }

  applyMutualExclusion(id: string, dim: string): Promise<MoveReply> {
    return this.move(`/sessions/${id}/mutual-exclusion`, { dim });
  }

  async ledgerText(id: string): Promise<string> {
    const response = await fetch(`${this.base}/sessions/${id}/ledger`);
    if (!response.ok) {
      throw new ApiError(response.status, null);
    }
    return response.text();
  }

  report(id: string): Promise<ReviewerReportView> {
    return this.request("GET", `/sessions/${id}/report`);
  }

  allowedInputs(
    id: string,
    context: string,
    dimension?: string
  ): Promise<AllowedInputs> {
    const query =
      dimension === undefined
        ? `context=${context}`
        : `context=${context}&dimension=${dimension}`;
    return this.request("GET", `/sessions/${id}/allowed-inputs?${query}`);
  }
}
