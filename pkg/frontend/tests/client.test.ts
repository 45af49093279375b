import { beforeEach, describe, expect, it, vi } from "vitest";

import {
  ApiError,
  configure,
  fetchMetrics,
  getReport,
  getTree,
  runSelect,
  traverseTree,
} from "../src/client";
import { fmtCents, fmtNumber, fmtSignedDelta } from "../src/format";
import { isInfeasible } from "../src/types";
import { fixtureBytes, fixtureJson, installServiceStub } from "./helpers";

describe("service client", () => {
  beforeEach(() => {
    installServiceStub();
    configure("http://service.test/"); // trailing slash must not double up
  });

  it("fetches and parses the built-in questionnaire", async () => {
    const tree = await getTree();
    expect(tree.root).toBe("boost_policy");
    expect(tree.nodes).toHaveLength(6);
    const root = tree.nodes.find((n) => n.id === tree.root)!;
    expect(Object.keys(root.answers).sort()).toEqual(["no", "yes"]);
  });

  it("parses traversal payloads exactly as the service emits them", async () => {
    const done = await traverseTree({
      answers: { boost_policy: "yes", representation: "proportional" },
    });
    expect(done.leaf).toBe("demographic_parity");
    expect(done.remaining).toEqual([]);

    const open = await traverseTree({ answers: { boost_policy: "no" } });
    expect(open.leaf).toBeNull();
    expect(open.remaining.map((q) => q.node)).toEqual([
      "ground_truth",
      "label_annotation",
      "evaluation",
      "sensitive_error",
    ]);
  });

  it("surfaces the persisted report id from the response header", async () => {
    const { outcome, reportId } = await runSelect("loan", { minUtility: 0.0 });
    expect(isInfeasible(outcome)).toBe(false);
    expect(reportId).toBe(fixtureJson<{ id: string }>("report-loan.json").id);

    const report = await getReport(reportId!);
    expect(report.scenarioId).toBe("loan");
    expect(report.selection).toEqual(outcome);
  });

  it("returns infeasibility as a value, not an exception", async () => {
    const { outcome } = await runSelect("loan", { minUtility: 10.0 });
    expect(isInfeasible(outcome)).toBe(true);
    if (!isInfeasible(outcome)) throw new Error("unreachable");
    expect(outcome.reason).toContain("sustainability floor");
    expect(outcome.binding).toEqual({ minInstitutionUtilityCents: 1000 });
  });

  it("raises ApiError with the service's error text on a 400", async () => {
    installServiceStub([
      {
        method: "POST",
        path: "/scenarios/loan/metrics",
        match: (b) =>
          (b as { policy?: { perGroup?: { a?: { threshold?: number } } } })
            .policy?.perGroup?.a?.threshold === 2.5,
        fixture: "error-metrics.json",
        status: 400,
      },
    ]);
    configure("http://service.test");
    await expect(
      fetchMetrics("loan", { policy: { perGroup: { a: { threshold: 2.5 } } } }),
    ).rejects.toThrowError(
      expect.objectContaining({
        name: "ApiError",
        status: 400,
        message: "policy missing rule for group b",
      }),
    );
  });

  it("raises ApiError on unknown routes", async () => {
    await expect(getReport("no-such-report")).rejects.toBeInstanceOf(ApiError);
  });

  it("sends JSON bodies with the content-type header set", async () => {
    const log = installServiceStub();
    configure("http://service.test");
    const spy = vi.spyOn(globalThis, "fetch" as never);
    await traverseTree({ answers: {} });
    expect(log.at(-1)).toMatchObject({ method: "POST", path: "/tree/traverse" });
    const init = (spy.mock.calls[0] as unknown[])[1] as RequestInit;
    expect((init.headers as Record<string, string>)["content-type"]).toBe(
      "application/json",
    );
  });
});

describe("display formatting", () => {
  it("renders integer cents as grouped dollars", () => {
    expect(fmtCents(204676708000)).toBe("$2,046,767,080.00");
    expect(fmtCents(33)).toBe("$0.33");
    expect(fmtCents(-5)).toBe("-$0.05");
    expect(() => fmtCents(0.5)).toThrow("integer cents");
  });

  it("trims trailing zeros without re-rounding", () => {
    expect(fmtNumber(0.1975)).toBe("0.1975");
    expect(fmtNumber(0.5)).toBe("0.5");
    expect(fmtNumber(0.060386473)).toBe("0.060386");
  });

  it("signs deltas for warning text", () => {
    expect(fmtSignedDelta(0.32)).toBe("+0.32");
    expect(fmtSignedDelta(-0.32)).toBe("-0.32");
    expect(fmtSignedDelta(0)).toBe("+0");
  });
});

describe("fixture bytes are canonical", () => {
  it("fixtures parse and re-serialize stably", () => {
    // sanity net: the captures are valid JSON and non-trivial
    for (const name of [
      "tree.json",
      "select-loan.json",
      "frontier-loan-pe.json",
      "metrics-loan-05.json",
    ]) {
      const bytes = fixtureBytes(name);
      expect(bytes.length).toBeGreaterThan(50);
      expect(() => JSON.parse(bytes.toString("utf8"))).not.toThrow();
    }
  });
});
