import { beforeEach, describe, expect, it } from "vitest";

import { configure } from "../src/client";
import { freshSession, noteScenarioUpload } from "../src/session";
import { startWizard, wizardBack, wizardStep } from "../src/wizard";
import type { ScenarioDoc, SelectionResult } from "../src/types";
import { fixtureJson, installServiceStub } from "./helpers";

const dpHarm = () => fixtureJson<ScenarioDoc>("scenario-dpharm.json");

async function sessionOnDpHarm() {
  const state = noteScenarioUpload(freshSession(), dpHarm());
  return startWizard(state);
}

describe("wizard", () => {
  beforeEach(() => {
    installServiceStub();
    configure("http://service.test");
  });

  it("walks the boost-policy path to demographic_parity with the verdict attached", async () => {
    let { state, view } = await sessionOnDpHarm();
    expect(view).toMatchObject({ kind: "question", node: "boost_policy" });

    ({ state, view } = await wizardStep(state, "yes"));
    expect(view).toMatchObject({ kind: "question", node: "representation" });

    ({ state, view } = await wizardStep(state, "proportional"));
    if (view.kind !== "leaf") throw new Error(`expected leaf, got ${view.kind}`);
    expect(view.metric).toBe("demographic_parity");

    // the verdict is structurally required, and here it is a live warning:
    // the selector disagrees and quantifies the worst-off welfare cost
    if (view.verdict.kind !== "cross_check") {
      throw new Error("expected a cross-check verdict");
    }
    expect(view.verdict.check.verdict).toBe("discordant");
    expect(view.verdict.check.worstOffWelfareDelta).toBeCloseTo(0.32, 9);
    expect(view.verdict.warning).toContain("-0.32");
    expect(view.verdict.warning).toContain("demographic_parity");
    expect(view.verdict.selection.chosenMetric).toBe("equal_opportunity");
  });

  it("walks the recall/false-positive path to predictive_equality", async () => {
    let { state, view } = await sessionOnDpHarm();
    for (const token of ["no", "available", "succeeded", "recall", "false_positive"]) {
      ({ state, view } = await wizardStep(state, token));
    }
    if (view.kind !== "leaf") throw new Error(`expected leaf, got ${view.kind}`);
    expect(view.metric).toBe("predictive_equality");
    if (view.verdict.kind !== "cross_check") {
      throw new Error("expected a cross-check verdict");
    }
    // metric disagreement at zero welfare cost: still surfaced, softer text
    expect(view.verdict.check.verdict).toBe("discordant");
    expect(view.verdict.check.worstOffWelfareDelta).toBe(0);
    expect(view.verdict.warning).toContain("fares the same");
  });

  it("caches the persisted run report when a leaf triggers the selector", async () => {
    let { state, view } = await sessionOnDpHarm();
    ({ state, view } = await wizardStep(state, "yes"));
    ({ state, view } = await wizardStep(state, "proportional"));
    const ids = Object.keys(state.reports);
    expect(ids).toHaveLength(1);
    const report = state.reports[ids[0]!]!;
    expect(report.scenarioId).toBe("dp-harm");
    expect((report.selection as SelectionResult).chosenMetric).toBe("equal_opportunity");
  });

  it("refuses undeclared tokens with an inline message and keeps the state", async () => {
    const { state, view } = await sessionOnDpHarm();
    expect(view.kind).toBe("question");

    const bad = await wizardStep(state, "maybe");
    expect(bad.view).toMatchObject({ kind: "invalid" });
    if (bad.view.kind !== "invalid") throw new Error("unreachable");
    expect(bad.view.message).toContain("'maybe'");
    expect(bad.view.message).toContain("no, yes");
    expect(bad.state).toBe(state); // untouched, not merely equal

    // the same state still accepts a declared token afterwards
    const good = await wizardStep(state, "yes");
    expect(good.view).toMatchObject({ kind: "question", node: "representation" });
  });

  it("restores the prior question on back-navigation", async () => {
    let { state, view } = await sessionOnDpHarm();
    ({ state, view } = await wizardStep(state, "yes"));
    expect(view).toMatchObject({ kind: "question", node: "representation" });

    ({ state, view } = wizardBack(state));
    expect(view).toMatchObject({ kind: "question", node: "boost_policy" });
    expect(state.answers).toHaveLength(0);

    // back at the root, back again is a no-op
    const again = wizardBack(state);
    expect(again.view).toMatchObject({ kind: "question", node: "boost_policy" });
  });

  it("still pairs the leaf with a verdict when no scenario is loaded", async () => {
    let { state, view } = await startWizard(freshSession());
    ({ state, view } = await wizardStep(state, "yes"));
    ({ state, view } = await wizardStep(state, "proportional"));
    if (view.kind !== "leaf") throw new Error(`expected leaf, got ${view.kind}`);
    expect(view.metric).toBe("demographic_parity");
    expect(view.verdict.kind).toBe("infeasible");
    if (view.verdict.kind !== "infeasible") throw new Error("unreachable");
    expect(view.verdict.reason).toContain("no scenario");
  });
});
