import { describe, expect, it } from "vitest";

import {
  adoptPolicy,
  cacheFrontier,
  cacheReport,
  currentNode,
  freshSession,
  noteScenarioUpload,
  popAnswer,
  pushAnswer,
  setGroupTaus,
  setGroupThreshold,
  type SessionState,
} from "../src/session";
import type {
  FrontierPayload,
  RunReport,
  ScenarioDoc,
  TreePayload,
} from "../src/types";
import { fixtureJson } from "./helpers";

function loanSession(): SessionState {
  const state = noteScenarioUpload(
    freshSession(),
    fixtureJson<ScenarioDoc>("scenario-loan.json"),
  );
  return { ...state, tree: fixtureJson<TreePayload>("tree.json") };
}

describe("wizard answer invariant", () => {
  it("accepts only tokens the tree declares for the current node", () => {
    const state = loanSession();
    expect(currentNode(state)).toBe("boost_policy");

    const bad = pushAnswer(state, "definitely");
    expect(bad.ok).toBe(false);
    if (bad.ok) throw new Error("unreachable");
    expect(bad.message).toContain("no, yes");

    const good = pushAnswer(state, "no");
    expect(good.ok).toBe(true);
    if (!good.ok) throw new Error("unreachable");
    expect(good.state.answers).toEqual([{ node: "boost_policy", answer: "no" }]);
    expect(currentNode(good.state)).toBe("ground_truth");
  });

  it("treats a completed path as answer-closed", () => {
    let state = loanSession();
    for (const token of ["yes", "proportional"]) {
      const r = pushAnswer(state, token);
      if (!r.ok) throw new Error(r.message);
      state = r.state;
    }
    expect(currentNode(state)).toBeNull(); // leaf reached
    const extra = pushAnswer(state, "yes");
    expect(extra.ok).toBe(false);
    if (extra.ok) throw new Error("unreachable");
    expect(extra.message).toContain("complete");
  });

  it("pops answers in order and is a no-op at the root", () => {
    let state = loanSession();
    const r = pushAnswer(state, "yes");
    if (!r.ok) throw new Error(r.message);
    state = popAnswer(r.state);
    expect(state.answers).toHaveLength(0);
    expect(popAnswer(state).answers).toHaveLength(0);
  });
});

describe("what-if edit invariant", () => {
  it("keeps acceptance probabilities inside [0, 1]", () => {
    const state = loanSession();
    const group = state.scenario!.groups[0]!;
    const nBins = group.bins.length;

    const high = setGroupTaus(state, group.id, Array(nBins).fill(1.2));
    expect(high.ok).toBe(false);
    if (high.ok) throw new Error("unreachable");
    expect(high.message).toContain("outside [0, 1]");

    const low = setGroupTaus(state, group.id, Array(nBins).fill(-0.1));
    expect(low.ok).toBe(false);

    const boundary = setGroupTaus(state, group.id, [
      0,
      1,
      ...Array(nBins - 2).fill(0.5),
    ]);
    expect(boundary.ok).toBe(true);
    if (!boundary.ok) throw new Error("unreachable");
    expect(boundary.state.whatIf.perGroup[group.id]?.taus).toHaveLength(nBins);
  });

  it("checks the probability vector length against the scenario's bins", () => {
    const state = loanSession();
    const group = state.scenario!.groups[0]!;
    const short = setGroupTaus(state, group.id, [0.5]);
    expect(short.ok).toBe(false);
    if (short.ok) throw new Error("unreachable");
    expect(short.message).toContain(`${group.bins.length} bins`);
  });

  it("rejects non-finite thresholds", () => {
    const state = loanSession();
    expect(setGroupThreshold(state, "a", Number.NaN).ok).toBe(false);
    expect(setGroupThreshold(state, "a", Number.POSITIVE_INFINITY).ok).toBe(false);
    const ok = setGroupThreshold(state, "a", 0.6);
    expect(ok.ok).toBe(true);
    if (!ok.ok) throw new Error("unreachable");
    expect(ok.state.whatIf.perGroup.a).toEqual({ threshold: 0.6 });
  });

  it("adoptPolicy copies rules instead of aliasing them", () => {
    const state = loanSession();
    const source = { a: { taus: [0.5, 0.5, 0.5, 0.5] } };
    const adopted = adoptPolicy(state, source);
    source.a.taus[0] = 0.99;
    expect(adopted.whatIf.perGroup.a?.taus?.[0]).toBe(0.5);
  });
});

describe("scenario upload bookkeeping", () => {
  it("re-uploading the active scenario marks the frontier stale and keeps work", () => {
    let state = loanSession();
    state = cacheFrontier(state, fixtureJson<FrontierPayload>("frontier-loan-pe.json"));
    const answered = pushAnswer(state, "yes");
    if (!answered.ok) throw new Error(answered.message);
    state = answered.state;

    const edited = noteScenarioUpload(state, fixtureJson<ScenarioDoc>("scenario-loan.json"));
    expect(edited.frontier?.stale).toBe(true);
    expect(edited.answers).toHaveLength(1);
  });

  it("switching to a different scenario clears session work", () => {
    let state = loanSession();
    state = cacheFrontier(state, fixtureJson<FrontierPayload>("frontier-loan-pe.json"));
    const answered = pushAnswer(state, "yes");
    if (!answered.ok) throw new Error(answered.message);
    state = answered.state;
    const thresholded = setGroupThreshold(state, "a", 0.6);
    if (!thresholded.ok) throw new Error(thresholded.message);
    state = thresholded.state;

    const doc = { ...fixtureJson<ScenarioDoc>("scenario-loan.json"), id: "fresh" };
    const switched = noteScenarioUpload(state, doc);
    expect(switched.activeScenarioId).toBe("fresh");
    expect(switched.frontier).toBeNull();
    expect(switched.answers).toHaveLength(0);
    expect(switched.whatIf.perGroup).toEqual({});
  });

  it("caches fetched run reports by id", () => {
    const report = fixtureJson<RunReport>("report-loan.json");
    const state = cacheReport(loanSession(), report);
    expect(state.reports[report.id]?.scenarioId).toBe("loan");
  });
});
