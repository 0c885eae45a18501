/** Contract tests against a mocked service: the UI renders outcomes
 * verbatim, populates widgets only from /allowed-inputs, and never runs
 * more than one mutating request at a time. */

import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { SessionView } from "../src/types.js";
import {
  EMPTY_PUZZLE,
  LEDGER_HEADERS,
  Route,
  baseSession,
  buttonLabeled,
  choiceSelect,
  emptyReport,
  exclusionAnalysis,
  installFetch,
  moveResponse,
  optionValues,
  outcome,
  pick,
} from "./helpers.js";

const ALLOWED: Record<string, (string | number)[]> = {
  cell: ["R1C3", "R2C5"],
  identity: [1, 2, 3],
  via: ["C3", "B1"],
  dimension: ["R1", "C8"],
  position: ["R2C2"],
};

const WITNESSES: Record<string, string[]> = {
  C3: ["R1C3", "R3C3"],
  B1: ["R2C1"],
};

interface World {
  session: SessionView;
  ledger: string;
  report: ReturnType<typeof emptyReport>;
}

function standardRoutes(world: World, extra: Route[] = []): Route[] {
  return [
    ...extra,
    {
      method: "POST",
      path: "/sessions",
      reply: () => ({ status: 201, json: world.session }),
    },
    {
      method: "GET",
      path: /^\/sessions\/[0-9a-f]+$/,
      reply: () => ({ json: world.session }),
    },
    {
      method: "GET",
      path: /\/ledger$/,
      reply: () => ({ text: world.ledger }),
    },
    {
      method: "GET",
      path: /\/report$/,
      reply: () => ({ json: world.report }),
    },
    {
      method: "GET",
      path: /\/allowed-inputs$/,
      reply: (url) => {
        const context = url.searchParams.get("context") ?? "";
        if (context === "witness") {
          const dimension = url.searchParams.get("dimension") ?? "";
          return { json: { context, values: WITNESSES[dimension] ?? [] } };
        }
        return { json: { context, values: ALLOWED[context] ?? [] } };
      },
    },
  ];
}

function makeApp(): App {
  document.body.innerHTML = "";
  const root = document.createElement("div");
  document.body.appendChild(root);
  return new App(root, new ApiClient(""), { autoPoll: false });
}

async function createSession(app: App): Promise<void> {
  const input = app.root.querySelector<HTMLInputElement>(".puzzle-input");
  input!.value = EMPTY_PUZZLE;
  buttonLabeled(app.root, "new session").click();
  await app.settle();
}

async function openedExclusion(world: World, app: App): Promise<void> {
  world.session = baseSession({ open_analysis: exclusionAnalysis() });
  await createSession(app);
  await vi.waitFor(() => {
    expect(optionValues(choiceSelect(app.exclusion.root, "via"))).toEqual(
      ALLOWED.via.map(String)
    );
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("grid rendering", () => {
  it("renders exactly the session grid the service returned", async () => {
    const world: World = {
      session: baseSession(),
      ledger: LEDGER_HEADERS,
      report: emptyReport(),
    };
    world.session.grid.cells[2] = {
      cell: "R1C3",
      status: "Solved",
      value: 4,
      pair: null,
      candidates: null,
    };
    installFetch(standardRoutes(world));
    const app = makeApp();
    await createSession(app);
    expect(app.root.querySelectorAll(".cell").length).toBe(81);
    const solved = app.board.cellElement("R1C3")!;
    expect(solved.classList.contains("status-solved")).toBe(true);
    expect(solved.querySelector(".cell-body")!.textContent).toBe("4");
    const open = app.board.cellElement("R5C5")!;
    expect(open.classList.contains("status-unresolved")).toBe(true);
  });

  it("badges cells named by review-flagged records", async () => {
    const world: World = {
      session: baseSession(),
      ledger: LEDGER_HEADERS,
      report: {
        ...emptyReport(),
        total: 1,
        flagged: [
          {
            seq: 1,
            kind: "ExclusionAssert",
            witness: "R3C3",
            reason: "witness R3C3 is Unresolved, not 2",
            payload: { target: "R1C3" },
          },
        ],
      },
    };
    installFetch(standardRoutes(world));
    const app = makeApp();
    await createSession(app);
    const flagged = app.board.cellElement("R1C3")!;
    expect(flagged.classList.contains("review-flagged")).toBe(true);
    expect(flagged.querySelector(".review-badge")!.textContent).toBe("review");
  });
});

describe("restricted inputs", () => {
  it("populates every drop-down exclusively from allowed-inputs", async () => {
    const world: World = {
      session: baseSession(),
      ledger: LEDGER_HEADERS,
      report: emptyReport(),
    };
    const calls = installFetch(standardRoutes(world));
    const app = makeApp();
    await openedExclusion(world, app);

    await vi.waitFor(() => {
      expect(optionValues(choiceSelect(app.exclusion.root, "target"))).toEqual(
        ALLOWED.cell.map(String)
      );
      expect(optionValues(choiceSelect(app.exclusion.root, "identity"))).toEqual(
        ALLOWED.identity.map(String)
      );
    });

    pick(choiceSelect(app.exclusion.root, "via"), "C3");
    await vi.waitFor(() => {
      expect(optionValues(choiceSelect(app.exclusion.root, "witness"))).toEqual(
        WITNESSES.C3
      );
    });

    const contexts = calls
      .filter((c) => c.path.includes("/allowed-inputs"))
      .map((c) => c.path.split("context=")[1]);
    expect(contexts).toContain("cell");
    expect(contexts).toContain("via");
    expect(contexts).toContain("witness&dimension=C3");
  });
});

describe("outcome rendering", () => {
  it("shows each validation outcome verbatim with its flags and reason", async () => {
    const world: World = {
      session: baseSession(),
      ledger: LEDGER_HEADERS,
      report: emptyReport(),
    };
    const replies = [
      {
        status: 200,
        json: moveResponse(
          "ExclusionAssert",
          outcome("Valid", ""),
          baseSession({ open_analysis: exclusionAnalysis(), seq: 1 })
        ),
      },
      {
        status: 200,
        json: moveResponse(
          "ExclusionAssert",
          outcome("IncorrectButRecorded", "witness R3C3 is Unresolved, not 2", [
            "review",
          ]),
          baseSession({ open_analysis: exclusionAnalysis(), seq: 2 })
        ),
      },
      {
        status: 422,
        json: moveResponse(
          "ExclusionAssert",
          outcome("IntegrityError", "the witness R1C3 must differ from the target"),
          baseSession({ open_analysis: exclusionAnalysis(), seq: 3 })
        ),
      },
    ];
    installFetch(
      standardRoutes(world, [
        {
          method: "POST",
          path: /\/moves$/,
          reply: () => replies.shift()!,
        },
      ])
    );
    const app = makeApp();
    await openedExclusion(world, app);

    pick(choiceSelect(app.exclusion.root, "identity"), "2");
    pick(choiceSelect(app.exclusion.root, "via"), "C3");
    await vi.waitFor(() => {
      expect(optionValues(choiceSelect(app.exclusion.root, "witness"))).toContain(
        "R3C3"
      );
    });
    pick(choiceSelect(app.exclusion.root, "witness"), "R3C3");

    const assertButton = buttonLabeled(app.exclusion.root, "assert exclusion");

    assertButton.click();
    await app.settle();
    const valid = app.exclusion.root.querySelector(".outcome-valid")!;
    expect(valid.querySelector(".outcome-kind")!.textContent).toBe("Valid");

    assertButton.click();
    await app.settle();
    const amber = app.exclusion.root.querySelector(".outcome-incorrectbutrecorded")!;
    expect(amber.querySelector(".outcome-kind")!.textContent).toBe(
      "IncorrectButRecorded"
    );
    expect(amber.querySelector(".flag-review")!.textContent).toBe("review");
    expect(amber.querySelector(".outcome-reason")!.textContent).toBe(
      "witness R3C3 is Unresolved, not 2"
    );

    assertButton.click();
    await app.settle();
    const red = app.exclusion.root.querySelector(".outcome-integrityerror")!;
    expect(red.querySelector(".outcome-kind")!.textContent).toBe("IntegrityError");
    const banner = app.root.querySelector(".banner")!;
    expect(banner.classList.contains("visible")).toBe(true);
    expect(banner.textContent).toBe(
      "IntegrityError: the witness R1C3 must differ from the target"
    );
  });

  it("raises the literal #Error banner when a conclusion says so", async () => {
    const world: World = {
      session: baseSession({
        open_analysis: exclusionAnalysis({ populated: false, prior: null }),
      }),
      ledger: LEDGER_HEADERS,
      report: emptyReport(),
    };
    installFetch(
      standardRoutes(world, [
        {
          method: "POST",
          path: /\/conclude$/,
          reply: () => ({
            status: 200,
            json: moveResponse(
              "CellConclude",
              outcome("Valid"),
              baseSession({ seq: 1 }),
              { result: "#Error" }
            ),
          }),
        },
      ])
    );
    const app = makeApp();
    await createSession(app);
    buttonLabeled(app.exclusion.root, "conclude").click();
    await app.settle();
    const banner = app.root.querySelector(".banner")!;
    expect(banner.textContent).toBe("#Error");
    expect(banner.classList.contains("banner-sentinel")).toBe(true);
    const result = app.exclusion.root.querySelector(".result-value")!;
    expect(result.textContent).toBe("#Error");
    expect(result.classList.contains("result-error")).toBe(true);
  });
});

describe("single in-flight mutation", () => {
  it("ignores further submissions until the response lands", async () => {
    const world: World = {
      session: baseSession(),
      ledger: LEDGER_HEADERS,
      report: emptyReport(),
    };
    let release!: () => void;
    const gate = new Promise<void>((resolve) => (release = resolve));
    const calls = installFetch(
      standardRoutes(world, [
        {
          method: "POST",
          path: /\/moves$/,
          reply: async () => {
            await gate;
            return {
              status: 200,
              json: moveResponse(
                "ExclusionAssert",
                outcome("Valid"),
                baseSession({ open_analysis: exclusionAnalysis(), seq: 1 })
              ),
            };
          },
        },
      ])
    );
    const app = makeApp();
    await openedExclusion(world, app);

    pick(choiceSelect(app.exclusion.root, "identity"), "2");
    pick(choiceSelect(app.exclusion.root, "via"), "C3");
    await vi.waitFor(() => {
      expect(optionValues(choiceSelect(app.exclusion.root, "witness"))).toContain(
        "R3C3"
      );
    });
    pick(choiceSelect(app.exclusion.root, "witness"), "R3C3");

    const assertButton = buttonLabeled(app.exclusion.root, "assert exclusion");
    assertButton.click();
    expect(assertButton.disabled).toBe(true);
    assertButton.click();
    assertButton.click();
    release();
    await app.settle();
    expect(assertButton.disabled).toBe(false);
    expect(calls.filter((c) => c.method === "POST" && c.path.endsWith("/moves")).length).toBe(1);
  });
});

describe("audit panel", () => {
  it("shows the ledger tail verbatim and spotlights a clicked record", async () => {
    const lines = [
      "1|ExclusionAssert|target=R1C3|excluded=8|witness=R3C3|via=C3|Valid|" + "a".repeat(64),
      "2|CellConclude|target=R1C3|populated=yes|result=4|Valid|" + "b".repeat(64),
    ];
    const world: World = {
      session: baseSession(),
      ledger: LEDGER_HEADERS + lines.join("\n") + "\n",
      report: emptyReport(),
    };
    installFetch(standardRoutes(world));
    const app = makeApp();
    await createSession(app);
    const shown = [...app.audit.root.querySelectorAll(".ledger-line")].map(
      (el) => el.textContent
    );
    expect(shown).toEqual([LEDGER_HEADERS.trimEnd().split("\n"), lines].flat().slice(-10));
    (app.audit.root.querySelectorAll(".ledger-line")[3] as HTMLElement).click();
    expect(app.board.cellElement("R1C3")!.classList.contains("spotlit")).toBe(true);
    expect(app.board.cellElement("R3C3")!.classList.contains("spotlit")).toBe(true);
    expect(app.board.cellElement("R5C5")!.classList.contains("spotlit")).toBe(false);
  });
});
