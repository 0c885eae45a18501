import { ReviewerReportView } from "./types.js";

/** Reverse the ledger's field escaping: | newlines and % are the only
 * encoded characters, and % was encoded first. */
export function unescapeField(text: string): string {
  return text
    .replace(/%7C/g, "|")
    .replace(/%0A/g, "\n")
    .replace(/%0D/g, "\r")
    .replace(/%25/g, "%");
}

/** Pull the cell and dimension codes a ledger line names, for grid
 * spotlighting. */
export function cellsNamedBy(line: string): string[] {
  const named: string[] = [];
  for (const field of line.split("|")) {
    const eq = field.indexOf("=");
    if (eq < 0) {
      continue;
    }
    const key = field.slice(0, eq);
    if (["target", "witness", "position"].includes(key)) {
      named.push(unescapeField(field.slice(eq + 1)));
    }
  }
  return named;
}

/** Audit trail: the raw ledger tail (verbatim service bytes) plus the
 * reviewer report. Clicking a record spotlights the cells it names. */
export class AuditPanel {
  readonly root: HTMLElement;
  private tail: HTMLElement;
  private reportOut: HTMLElement;
  private onSpotlight: (cells: string[]) => void;
  private tailSize: number;

  constructor(onSpotlight: (cells: string[]) => void, tailSize = 10) {
    this.onSpotlight = onSpotlight;
    this.tailSize = tailSize;
    this.root = document.createElement("section");
    this.root.className = "panel audit-panel";
    const heading = document.createElement("h2");
    heading.textContent = "Audit trail";
    this.root.appendChild(heading);
    this.tail = document.createElement("div");
    this.tail.className = "ledger-tail";
    this.root.appendChild(this.tail);
    this.reportOut = document.createElement("div");
    this.reportOut.className = "reviewer-report";
    this.root.appendChild(this.reportOut);
    this.tail.addEventListener("click", (e) => {
      const line = (e.target as HTMLElement).closest<HTMLElement>(".ledger-line");
      if (line) {
        this.onSpotlight(cellsNamedBy(line.textContent ?? ""));
      }
    });
  }

  /** Render the last lines of the ledger exactly as served. */
  setLedger(text: string): void {
    const lines = text.split("\n").filter((line) => line.length > 0);
    this.tail.textContent = "";
    for (const line of lines.slice(-this.tailSize)) {
      const div = document.createElement("div");
      div.className = "ledger-line";
      div.textContent = line;
      this.tail.appendChild(div);
    }
  }

  setReport(report: ReviewerReportView): void {
    this.reportOut.textContent = "";
    const counts = document.createElement("p");
    counts.className = "report-counts";
    counts.textContent = Object.entries(report.counts)
      .map(([kind, count]) => `${kind}: ${count}`)
      .join("  ");
    this.reportOut.appendChild(counts);
    if (report.flagged.length > 0) {
      const list = document.createElement("ul");
      list.className = "flagged-moves";
      for (const move of report.flagged) {
        const item = document.createElement("li");
        item.textContent = `#${move.seq} ${move.kind}: ${move.reason}`;
        list.appendChild(item);
      }
      this.reportOut.appendChild(list);
    }
  }
}
