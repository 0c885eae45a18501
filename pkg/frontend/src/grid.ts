import { CellView, GridViewData } from "./types.js";

const STATUS_CLASS: Record<string, string> = {
  "Pre-Set": "status-preset",
  Solved: "status-solved",
  "1 of 2": "status-pair",
  Unresolved: "status-unresolved",
};

function rowOf(code: string): number {
  return Number(code[1]);
}

function colOf(code: string): number {
  return Number(code[3]);
}

function boxOf(code: string): number {
  return 3 * Math.floor((rowOf(code) - 1) / 3) + Math.floor((colOf(code) - 1) / 3) + 1;
}

/** The 9x9 board. Renders exactly what the service sent: values, pairs,
 * candidate sets, plus presentational row/column/box hover highlighting
 * and review badges on cells named by review-flagged records. */
export class GridBoard {
  readonly root: HTMLElement;
  private cells = new Map<string, HTMLElement>();
  private onSelect: (cell: string) => void;

  constructor(onSelect: (cell: string) => void) {
    this.root = document.createElement("div");
    this.root.className = "grid-board";
    this.onSelect = onSelect;
    this.root.addEventListener("mouseover", (e) => this.highlight(e, true));
    this.root.addEventListener("mouseout", (e) => this.highlight(e, false));
    this.root.addEventListener("click", (e) => {
      const cell = (e.target as HTMLElement).closest<HTMLElement>(".cell");
      if (cell && cell.dataset.cell) {
        this.onSelect(cell.dataset.cell);
      }
    });
  }

  update(grid: GridViewData, reviewCells: Set<string>, fresh: Set<string>): void {
    this.root.textContent = "";
    this.cells.clear();
    for (const view of grid.cells) {
      const el = this.renderCell(view, reviewCells.has(view.cell), fresh.has(view.cell));
      this.cells.set(view.cell, el);
      this.root.appendChild(el);
    }
  }

  cellElement(code: string): HTMLElement | undefined {
    return this.cells.get(code);
  }

  /** Pulse the cells a ledger record names, so clicking a record shows
   * where it acted. */
  spotlight(codes: string[]): void {
    for (const el of this.cells.values()) {
      el.classList.remove("spotlit");
    }
    for (const code of codes) {
      this.cells.get(code)?.classList.add("spotlit");
    }
  }

  private renderCell(view: CellView, review: boolean, fresh: boolean): HTMLElement {
    const el = document.createElement("div");
    el.className = `cell ${STATUS_CLASS[view.status] ?? ""}`;
    el.dataset.cell = view.cell;
    el.dataset.row = String(rowOf(view.cell));
    el.dataset.col = String(colOf(view.cell));
    el.dataset.box = String(boxOf(view.cell));
    if (review) {
      el.classList.add("review-flagged");
      const badge = document.createElement("span");
      badge.className = "review-badge";
      badge.textContent = "review";
      el.appendChild(badge);
    }
    if (fresh) {
      el.classList.add("fresh-solve");
    }
    const body = document.createElement("span");
    body.className = "cell-body";
    if (view.value !== null) {
      body.textContent = String(view.value);
    } else if (view.pair) {
      body.textContent = view.pair.join(" ");
    } else if (view.candidates) {
      body.classList.add("candidates");
      body.textContent = view.candidates.join("");
    }
    el.appendChild(body);
    return el;
  }

  private highlight(e: Event, on: boolean): void {
    const cell = (e.target as HTMLElement).closest<HTMLElement>(".cell");
    if (!cell) {
      return;
    }
    const { row, col, box } = cell.dataset;
    for (const el of this.cells.values()) {
      const hit =
        el.dataset.row === row || el.dataset.col === col || el.dataset.box === box;
      el.classList.toggle("peer-lit", on && hit);
    }
  }
}
