import { ApiClient, MoveReply } from "./api.js";
import {
  AllowedInputs,
  ExclusionAnalysisView,
  LocationAnalysisView,
  MutualReportView,
  OutcomeView,
  SessionView,
} from "./types.js";

/** Shared wiring the panels need from the app shell. */
export interface PanelContext {
  api: ApiClient;
  sessionId: () => string | null;
  mutate: (action: () => Promise<void>) => void;
  onMove: (reply: MoveReply) => Promise<void>;
  onError: (err: unknown) => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

/** The service's validation outcome, verbatim: kind, flags, reason.
 * Colors follow the fixed semantics (green valid, amber review, red
 * integrity error). */
export function outcomeElement(outcome: OutcomeView): HTMLElement {
  const wrap = el("div", `outcome outcome-${outcome.kind.toLowerCase()}`);
  wrap.appendChild(el("span", "outcome-kind", outcome.kind));
  for (const flag of outcome.flags) {
    wrap.appendChild(el("span", `flag-badge flag-${flag}`, flag));
  }
  if (outcome.reason) {
    wrap.appendChild(el("span", "outcome-reason", outcome.reason));
  }
  return wrap;
}

/** A drop-down whose options come exclusively from GET /allowed-inputs.
 * The UI never fabricates an option list. */
export class ChoiceSelect {
  readonly el: HTMLSelectElement;
  private loadedFor = "";

  constructor(name: string) {
    this.el = el("select", `choice choice-${name}`);
    this.el.dataset.choice = name;
    this.reset();
  }

  reset(): void {
    this.el.textContent = "";
    const placeholder = el("option", "", "--");
    placeholder.value = "";
    placeholder.disabled = true;
    placeholder.selected = true;
    this.el.appendChild(placeholder);
    this.loadedFor = "";
  }

  /** Populate from an allowed-inputs response; `key` avoids refetching
   * when the context has not changed. */
  async load(key: string, fetcher: () => Promise<AllowedInputs>): Promise<void> {
    if (this.loadedFor === key) {
      return;
    }
    const previous = this.el.value;
    const inputs = await fetcher();
    this.reset();
    for (const value of inputs.values) {
      const option = el("option", "", String(value));
      option.value = String(value);
      this.el.appendChild(option);
    }
    this.loadedFor = key;
    if (previous && inputs.values.some((v) => String(v) === previous)) {
      this.el.value = previous;
    }
  }

  value(): string {
    return this.el.value;
  }
}

abstract class Panel {
  readonly root: HTMLElement;
  protected outcomeLog: HTMLElement;

  constructor(protected ctx: PanelContext, title: string, className: string) {
    this.root = el("section", `panel ${className}`);
    this.root.appendChild(el("h2", "", title));
    this.outcomeLog = el("div", "outcome-log");
  }

  protected logOutcome(outcome: OutcomeView): void {
    this.outcomeLog.appendChild(outcomeElement(outcome));
  }

  protected button(label: string, onClick: () => void): HTMLButtonElement {
    const b = el("button", "mutating", label);
    b.addEventListener("click", onClick);
    return b;
  }
}

/** Analysis by exclusion: pick a target cell, strike candidates with
 * witness citations from the cell's column and box, then conclude. Row
 * exclusions arrive automatically with the analysis and render read-only. */
export class ExclusionPanel extends Panel {
  private targetPick = new ChoiceSelect("target");
  private identityPick = new ChoiceSelect("identity");
  private viaPick = new ChoiceSelect("via");
  private witnessPick = new ChoiceSelect("witness");
  private populateBox: HTMLInputElement;
  private closedView: HTMLElement;
  private openView: HTMLElement;
  private detail: HTMLElement;
  private resultOut: HTMLElement;
  private analysis: ExclusionAnalysisView | null = null;

  constructor(ctx: PanelContext) {
    super(ctx, "Analysis by exclusion", "exclusion-panel");

    this.closedView = el("div", "when-closed");
    const openRow = el("div", "form-row");
    openRow.appendChild(el("label", "", "target"));
    openRow.appendChild(this.targetPick.el);
    this.populateBox = el("input");
    this.populateBox.type = "checkbox";
    this.populateBox.checked = true;
    const populateLabel = el("label", "populate-flag", "populate from grid");
    populateLabel.prepend(this.populateBox);
    openRow.appendChild(populateLabel);
    openRow.appendChild(this.button("open analysis", () => this.open()));
    this.closedView.appendChild(openRow);

    this.openView = el("div", "when-open");
    this.detail = el("div", "analysis-detail");
    this.openView.appendChild(this.detail);
    const strikeRow = el("div", "form-row strike-form");
    strikeRow.appendChild(el("label", "", "strike"));
    strikeRow.appendChild(this.identityPick.el);
    strikeRow.appendChild(el("label", "", "because, via"));
    strikeRow.appendChild(this.viaPick.el);
    strikeRow.appendChild(el("label", "", "witness"));
    strikeRow.appendChild(this.witnessPick.el);
    strikeRow.appendChild(this.button("assert exclusion", () => this.strike()));
    this.openView.appendChild(strikeRow);
    this.openView.appendChild(this.button("conclude", () => this.conclude()));

    this.resultOut = el("div", "conclude-result");
    this.root.appendChild(this.closedView);
    this.root.appendChild(this.openView);
    this.root.appendChild(this.resultOut);
    this.root.appendChild(this.outcomeLog);

    this.viaPick.el.addEventListener("change", () => {
      void this.loadWitnesses().catch(ctx.onError);
    });
  }

  /** Grid clicks land here so the user can pick targets on the board. */
  chooseTarget(cell: string): void {
    if (
      this.analysis === null &&
      [...this.targetPick.el.options].some((o) => o.value === cell)
    ) {
      this.targetPick.el.value = cell;
    }
  }

  update(session: SessionView): void {
    const analysis = session.open_analysis;
    const mine = analysis !== null && analysis.mode === "exclusion";
    this.analysis = mine ? (analysis as ExclusionAnalysisView) : null;
    this.closedView.classList.toggle("active", !mine);
    this.openView.classList.toggle("active", mine);
    const sid = session.id;
    void this.targetPick
      .load(`cell:${sid}`, () => this.ctx.api.allowedInputs(sid, "cell"))
      .catch(this.ctx.onError);
    if (this.analysis) {
      this.renderDetail(this.analysis);
      void this.identityPick
        .load(`identity:${sid}`, () => this.ctx.api.allowedInputs(sid, "identity"))
        .catch(this.ctx.onError);
      const target = this.analysis.target;
      void this.viaPick
        .load(`via:${sid}:${target}`, () => this.ctx.api.allowedInputs(sid, "via"))
        .then(() => this.loadWitnesses())
        .catch(this.ctx.onError);
    }
  }

  showResult(result: string): void {
    this.resultOut.textContent = "";
    this.resultOut.appendChild(el("span", "result-label", "result: "));
    const value = el("span", "result-value", result);
    if (result === "#Error") {
      value.classList.add("result-error");
    }
    this.resultOut.appendChild(value);
  }

  noteOutcome(outcome: OutcomeView): void {
    this.logOutcome(outcome);
  }

  private renderDetail(analysis: ExclusionAnalysisView): void {
    this.detail.textContent = "";
    this.detail.appendChild(
      el("h3", "", `analysing ${analysis.target}`)
    );
    if (!analysis.populated) {
      this.detail.appendChild(
        el("p", "unpopulated-note", "row selected, status not populated")
      );
      return;
    }
    const auto = el("ul", "auto-exclusions");
    for (const { identity, witness } of analysis.auto_exclusions) {
      auto.appendChild(el("li", "", `${identity} held by ${witness} (own row)`));
    }
    this.detail.appendChild(el("p", "", "automatic row exclusions:"));
    this.detail.appendChild(auto);
    const cited = el("ul", "citations");
    for (const j of analysis.justifications) {
      cited.appendChild(
        el("li", "", `${j.excluded} struck: ${j.witness} holds it via ${j.via}`)
      );
    }
    if (analysis.justifications.length > 0) {
      this.detail.appendChild(el("p", "", "cited exclusions:"));
      this.detail.appendChild(cited);
    }
    this.detail.appendChild(
      el("p", "working-set", `still standing: ${analysis.working.join(" ")}`)
    );
  }

  private async loadWitnesses(): Promise<void> {
    const sid = this.ctx.sessionId();
    const via = this.viaPick.value();
    if (!sid || !via) {
      return;
    }
    await this.witnessPick.load(`witness:${sid}:${via}`, () =>
      this.ctx.api.allowedInputs(sid, "witness", via)
    );
  }

  private open(): void {
    const sid = this.ctx.sessionId();
    const target = this.targetPick.value();
    if (!sid || !target) {
      return;
    }
    const populate = this.populateBox.checked;
    this.ctx.mutate(async () => {
      const reply = await this.ctx.api.openAnalysis(sid, {
        mode: "exclusion",
        target,
        populate,
      });
      this.resultOut.textContent = "";
      this.outcomeLog.textContent = "";
      this.update(reply.session);
    });
  }

  private strike(): void {
    const sid = this.ctx.sessionId();
    const excluded = Number(this.identityPick.value());
    const witness = this.witnessPick.value();
    const via = this.viaPick.value();
    const target = this.analysis?.target;
    if (!sid || !excluded || !witness || !via || !target) {
      return;
    }
    this.ctx.mutate(async () => {
      const reply = await this.ctx.api.postMove(sid, {
        kind: "exclusion_assert",
        target,
        excluded,
        witness,
        via,
      });
      await this.ctx.onMove(reply);
    });
  }

  private conclude(): void {
    const sid = this.ctx.sessionId();
    if (!sid) {
      return;
    }
    this.ctx.mutate(async () => {
      const reply = await this.ctx.api.conclude(sid);
      await this.ctx.onMove(reply);
    });
  }
}

/** Location analysis: where can one identity still go in a dimension?
 * Each exclusion cites a witness in a crossing dimension; the count and
 * the per-position Excluded? flags mirror the service's analysis view. */
export class LocationPanel extends Panel {
  private dimPick = new ChoiceSelect("dim");
  private identityPick = new ChoiceSelect("location-identity");
  private positionPick = new ChoiceSelect("position");
  private crossingPick = new ChoiceSelect("crossing");
  private witnessPick = new ChoiceSelect("location-witness");
  private closedView: HTMLElement;
  private openView: HTMLElement;
  private detail: HTMLElement;
  private conclusionOut: HTMLElement;

  constructor(ctx: PanelContext) {
    super(ctx, "Location analysis", "location-panel");

    this.closedView = el("div", "when-closed");
    const openRow = el("div", "form-row");
    openRow.appendChild(el("label", "", "dimension"));
    openRow.appendChild(this.dimPick.el);
    openRow.appendChild(el("label", "", "identity"));
    openRow.appendChild(this.identityPick.el);
    openRow.appendChild(this.button("open analysis", () => this.open()));
    this.closedView.appendChild(openRow);

    this.openView = el("div", "when-open");
    this.detail = el("div", "analysis-detail");
    this.openView.appendChild(this.detail);
    const strikeRow = el("div", "form-row strike-form");
    strikeRow.appendChild(el("label", "", "exclude position"));
    strikeRow.appendChild(this.positionPick.el);
    strikeRow.appendChild(el("label", "", "crossing dimension"));
    strikeRow.appendChild(this.crossingPick.el);
    strikeRow.appendChild(el("label", "", "witness"));
    strikeRow.appendChild(this.witnessPick.el);
    strikeRow.appendChild(this.button("assert exclusion", () => this.strike()));
    this.openView.appendChild(strikeRow);
    this.openView.appendChild(this.button("conclude", () => this.conclude()));

    this.conclusionOut = el("div", "conclude-result");
    this.root.appendChild(this.closedView);
    this.root.appendChild(this.openView);
    this.root.appendChild(this.conclusionOut);
    this.root.appendChild(this.outcomeLog);

    this.crossingPick.el.addEventListener("change", () => {
      void this.loadWitnesses().catch(ctx.onError);
    });
  }

  update(session: SessionView): void {
    const analysis = session.open_analysis;
    const mine = analysis !== null && analysis.mode === "location";
    this.closedView.classList.toggle("active", !mine);
    this.openView.classList.toggle("active", mine);
    const sid = session.id;
    void this.dimPick
      .load(`dimension:${sid}`, () => this.ctx.api.allowedInputs(sid, "dimension"))
      .catch(this.ctx.onError);
    void this.identityPick
      .load(`identity:${sid}`, () => this.ctx.api.allowedInputs(sid, "identity"))
      .catch(this.ctx.onError);
    if (mine) {
      const view = analysis as LocationAnalysisView;
      this.renderDetail(view);
      void this.positionPick
        .load(`position:${sid}:${view.count}`, () =>
          this.ctx.api.allowedInputs(sid, "position")
        )
        .catch(this.ctx.onError);
      void this.crossingPick
        .load(`dimension:${sid}`, () => this.ctx.api.allowedInputs(sid, "dimension"))
        .catch(this.ctx.onError);
    }
  }

  showConclusion(kind: string, count: number, position: string | null): void {
    this.conclusionOut.textContent = "";
    const text =
      kind === "solved"
        ? `solved: ${position}`
        : kind === "inconclusive"
          ? `inconclusive after ${count} exclusions`
          : "integrity error";
    this.conclusionOut.appendChild(el("span", `conclusion conclusion-${kind}`, text));
  }

  noteOutcome(outcome: OutcomeView): void {
    this.logOutcome(outcome);
  }

  private renderDetail(view: LocationAnalysisView): void {
    this.detail.textContent = "";
    this.detail.appendChild(
      el("h3", "", `identity ${view.identity} in ${view.dim}`)
    );
    this.detail.appendChild(
      el(
        "p",
        "exclusion-count",
        `excluded ${view.count} of ${view.open_positions.length} open positions`
      )
    );
    const list = el("ul", "positions");
    for (const position of view.open_positions) {
      const witness = view.excluded[position];
      const item = el("li", witness ? "excluded-yes" : "excluded-no");
      item.appendChild(el("span", "position-code", position));
      item.appendChild(
        el(
          "span",
          "excluded-flag",
          witness ? `excluded? yes (witness ${witness})` : "excluded? no"
        )
      );
      list.appendChild(item);
    }
    this.detail.appendChild(list);
  }

  private async loadWitnesses(): Promise<void> {
    const sid = this.ctx.sessionId();
    const crossing = this.crossingPick.value();
    if (!sid || !crossing) {
      return;
    }
    await this.witnessPick.load(`witness:${sid}:${crossing}`, () =>
      this.ctx.api.allowedInputs(sid, "witness", crossing)
    );
  }

  private open(): void {
    const sid = this.ctx.sessionId();
    const dim = this.dimPick.value();
    const identity = Number(this.identityPick.value());
    if (!sid || !dim || !identity) {
      return;
    }
    this.ctx.mutate(async () => {
      const reply = await this.ctx.api.openAnalysis(sid, {
        mode: "location",
        dim,
        identity,
      });
      this.conclusionOut.textContent = "";
      this.outcomeLog.textContent = "";
      this.update(reply.session);
    });
  }

  private strike(): void {
    const sid = this.ctx.sessionId();
    const position = this.positionPick.value();
    const witness = this.witnessPick.value();
    if (!sid || !position || !witness) {
      return;
    }
    this.ctx.mutate(async () => {
      const reply = await this.ctx.api.postMove(sid, {
        kind: "location_assert",
        position,
        witness,
      });
      await this.ctx.onMove(reply);
    });
  }

  private conclude(): void {
    const sid = this.ctx.sessionId();
    if (!sid) {
      return;
    }
    this.ctx.mutate(async () => {
      const reply = await this.ctx.api.conclude(sid);
      await this.ctx.onMove(reply);
    });
  }
}

/** Mutual exclusion: pick a dimension, apply, and read the before/after
 * candidate revisions in two blocks, newly solved cells emphasized. */
export class MutualPanel extends Panel {
  private dimPick = new ChoiceSelect("mutual-dim");
  private reportOut: HTMLElement;

  constructor(ctx: PanelContext) {
    super(ctx, "Mutual exclusion", "mutual-panel");
    const row = el("div", "form-row");
    row.appendChild(el("label", "", "dimension"));
    row.appendChild(this.dimPick.el);
    row.appendChild(this.button("apply", () => this.apply()));
    this.root.appendChild(row);
    this.reportOut = el("div", "mutual-report");
    this.root.appendChild(this.reportOut);
    this.root.appendChild(this.outcomeLog);
  }

  update(session: SessionView): void {
    void this.dimPick
      .load(`dimension:${session.id}`, () =>
        this.ctx.api.allowedInputs(session.id, "dimension")
      )
      .catch(this.ctx.onError);
  }

  noteOutcome(outcome: OutcomeView): void {
    this.logOutcome(outcome);
  }

  private apply(): void {
    const sid = this.ctx.sessionId();
    const dim = this.dimPick.value();
    if (!sid || !dim) {
      return;
    }
    this.ctx.mutate(async () => {
      const reply = await this.ctx.api.applyMutualExclusion(sid, dim);
      await this.ctx.onMove(reply);
    });
  }

  showReport(report: MutualReportView): void {
    this.reportOut.textContent = "";
    this.reportOut.appendChild(
      el("p", "parity", `pair-group members in ${report.dim}: ${report.parity_total}`)
    );
    const groups = el("ul", "pair-groups");
    for (const group of report.groups) {
      groups.appendChild(
        el("li", "", `${group.members.join(" + ")} share {${group.pair.join(",")}}`)
      );
    }
    this.reportOut.appendChild(groups);
    if (report.revised.length === 0) {
      this.reportOut.appendChild(el("p", "", "no revisions"));
      return;
    }
    const solved = new Map(report.newly_solved.map((s) => [s.cell, s.identity]));
    const table = el("table", "before-after");
    const head = el("tr");
    for (const caption of ["cell", "before", "after"]) {
      head.appendChild(el("th", "", caption));
    }
    table.appendChild(head);
    for (const revision of report.revised) {
      const row = el("tr");
      row.appendChild(el("td", "", revision.cell));
      row.appendChild(el("td", "block-before", revision.before.join(" ")));
      const after = el("td", "block-after", revision.after.join(" "));
      if (solved.has(revision.cell)) {
        after.classList.add("newly-solved");
      }
      row.appendChild(after);
      table.appendChild(row);
    }
    this.reportOut.appendChild(table);
  }
}
