/**
 * Fetch stub backed by byte captures of real service responses.
 *
 * Every fixture under tests/fixtures/ is the exact body the Python service
 * produced for the corresponding request, so the suite exercises the client
 * against real canonical JSON rather than hand-typed approximations.  The
 * stub matches method, path and (for POSTs) a body predicate, in order.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { vi } from "vitest";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixtureBytes(name: string): Buffer {
  return readFileSync(join(FIXTURES, name));
}

export function fixtureJson<T = unknown>(name: string): T {
  return JSON.parse(fixtureBytes(name).toString("utf8")) as T;
}

interface Route {
  method: string;
  path: string;
  match?: (body: unknown) => boolean;
  fixture: string;
  status?: number;
  headers?: Record<string, string>;
}

function sameAnswers(body: unknown, want: Record<string, string>): boolean {
  const answers = (body as { answers?: Record<string, string> }).answers ?? {};
  const keys = Object.keys(answers).sort();
  const wantKeys = Object.keys(want).sort();
  return (
    keys.length === wantKeys.length &&
    keys.every((k, i) => k === wantKeys[i] && answers[k] === want[k])
  );
}

const PATH1 = { boost_policy: "yes", representation: "proportional" };
const PATH2 = {
  boost_policy: "no",
  ground_truth: "available",
  label_annotation: "succeeded",
  evaluation: "recall",
  sensitive_error: "false_positive",
};

function reportId(fixture: string): string {
  return fixtureJson<{ id: string }>(fixture).id;
}

export function serviceRoutes(): Route[] {
  const sel = (field: string, value: unknown) => (body: unknown) =>
    (body as Record<string, unknown>)[field] === value;

  const routes: Route[] = [
    { method: "GET", path: "/tree", fixture: "tree.json" },
    {
      method: "POST",
      path: "/tree/traverse",
      match: (b) => sameAnswers(b, {}),
      fixture: "traverse-empty.json",
    },
    {
      method: "POST",
      path: "/tree/traverse",
      match: (b) => sameAnswers(b, { boost_policy: "yes" }),
      fixture: "traverse-yes.json",
    },
    {
      method: "POST",
      path: "/tree/traverse",
      match: (b) => sameAnswers(b, PATH1),
      fixture: "traverse-path1.json",
    },
    {
      method: "POST",
      path: "/tree/traverse",
      match: (b) => sameAnswers(b, { boost_policy: "no" }),
      fixture: "traverse-partial.json",
    },
    {
      method: "POST",
      path: "/tree/traverse",
      match: (b) =>
        sameAnswers(b, { boost_policy: "no", ground_truth: "available" }),
      fixture: "traverse-no-available.json",
    },
    {
      method: "POST",
      path: "/tree/traverse",
      match: (b) =>
        sameAnswers(b, {
          boost_policy: "no",
          ground_truth: "available",
          label_annotation: "succeeded",
        }),
      fixture: "traverse-no-av-succeeded.json",
    },
    {
      method: "POST",
      path: "/tree/traverse",
      match: (b) =>
        sameAnswers(b, {
          boost_policy: "no",
          ground_truth: "available",
          label_annotation: "succeeded",
          evaluation: "recall",
        }),
      fixture: "traverse-no-av-succ-recall.json",
    },
    {
      method: "POST",
      path: "/tree/traverse",
      match: (b) => sameAnswers(b, PATH2),
      fixture: "traverse-path2.json",
    },
    { method: "GET", path: "/scenarios/loan", fixture: "scenario-loan.json" },
    {
      method: "GET",
      path: "/scenarios/dp-harm",
      fixture: "scenario-dpharm.json",
    },
    {
      method: "POST",
      path: "/scenarios/dp-harm/select",
      match: sel("treeMetric", "demographic_parity"),
      fixture: "select-dpharm-tree.json",
      headers: { "x-report-id": reportId("report-dpharm-dp.json") },
    },
    {
      method: "POST",
      path: "/scenarios/dp-harm/select",
      match: sel("treeMetric", "predictive_equality"),
      fixture: "select-dpharm-tree-pe.json",
      headers: { "x-report-id": reportId("report-dpharm-pe.json") },
    },
    {
      method: "POST",
      path: "/scenarios/loan/select",
      match: sel("minUtility", 10.0),
      fixture: "select-infeasible.json",
    },
    {
      method: "POST",
      path: "/scenarios/loan/select",
      fixture: "select-loan.json",
      headers: { "x-report-id": reportId("report-loan.json") },
    },
    {
      method: "POST",
      path: "/scenarios/loan/frontier",
      fixture: "frontier-loan-pe.json",
    },
    {
      method: "POST",
      path: "/scenarios/loan/metrics",
      match: sel("threshold", 0.5),
      fixture: "metrics-loan-05.json",
    },
    {
      method: "POST",
      path: "/scenarios/loan/metrics",
      fixture: "metrics-loan-point.json",
    },
    {
      method: "POST",
      path: "/scenarios/loan/simulate",
      match: (b) => {
        const pg = (b as { policy?: { perGroup?: Record<string, { threshold?: number }> } })
          .policy?.perGroup;
        return pg?.a?.threshold === 0.4 && pg?.b?.threshold === 0.75;
      },
      fixture: "simulate-loan-recommended.json",
    },
    {
      method: "POST",
      path: "/scenarios/loan/simulate",
      fixture: "simulate-loan.json",
    },
    {
      method: "GET",
      path: `/reports/${reportId("report-loan.json")}`,
      fixture: "report-loan.json",
    },
    {
      method: "GET",
      path: `/reports/${reportId("report-dpharm-dp.json")}`,
      fixture: "report-dpharm-dp.json",
    },
    {
      method: "GET",
      path: `/reports/${reportId("report-dpharm-pe.json")}`,
      fixture: "report-dpharm-pe.json",
    },
  ];
  return routes;
}

export interface StubLog {
  method: string;
  path: string;
  body: unknown;
}

/**
 * Install the stub on globalThis.fetch.  Returns a log of requests made,
 * for asserting which endpoints a flow actually touched.
 */
export function installServiceStub(extra: Route[] = []): StubLog[] {
  const routes = [...extra, ...serviceRoutes()];
  const log: StubLog[] = [];

  vi.stubGlobal(
    "fetch",
    async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
      const url = String(input);
      const path = url.replace(/^https?:\/\/[^/]+/, "");
      const method = init?.method ?? "GET";
      const body =
        typeof init?.body === "string" ? JSON.parse(init.body) : undefined;
      log.push({ method, path, body });

      if (init?.signal?.aborted) {
        throw new DOMException("The operation was aborted.", "AbortError");
      }
      for (const route of routes) {
        if (route.method !== method || route.path !== path) continue;
        if (route.match && !route.match(body)) continue;
        return new Response(fixtureBytes(route.fixture), {
          status: route.status ?? 200,
          headers: { "content-type": "application/json", ...route.headers },
        });
      }
      return new Response(JSON.stringify({ error: `no stub for ${method} ${path}` }), {
        status: 404,
        headers: { "content-type": "application/json" },
      });
    },
  );
  return log;
}
