/**
 * Thin typed client for the navigator service.  One function per endpoint,
 * no state, no recomputation: every number the UI shows came out of one of
 * these calls.
 */

import type {
  FrontierPayload,
  FrontierRequest,
  MetricsPayload,
  MetricsRequest,
  RunReport,
  ScenarioDoc,
  SelectOutcome,
  SelectRequest,
  SimulatePayload,
  SimulateRequest,
  TraversalPayload,
  TraverseRequest,
  TreePayload,
} from "./types";

let baseUrl = "";

/** Point the client at a service root, e.g. "http://127.0.0.1:8000". */
export function configure(url: string): void {
  baseUrl = url.replace(/\/+$/, "");
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(
  path: string,
  init: RequestInit = {},
): Promise<{ data: T; headers: Headers }> {
  const resp = await fetch(baseUrl + path, {
    ...init,
    headers: { "content-type": "application/json", ...init.headers },
  });
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = (await resp.json()) as { error?: string };
      if (body && typeof body.error === "string") detail = body.error;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return { data: (await resp.json()) as T, headers: resp.headers };
}

const post = (body: unknown): RequestInit => ({
  method: "POST",
  body: JSON.stringify(body),
});

export async function uploadScenario(doc: ScenarioDoc): Promise<{ id: string }> {
  const { data } = await request<{ id: string }>("/scenarios", post(doc));
  return data;
}

export async function getScenario(id: string): Promise<ScenarioDoc> {
  const { data } = await request<ScenarioDoc>(`/scenarios/${id}`);
  return data;
}

export async function getTree(): Promise<TreePayload> {
  const { data } = await request<TreePayload>("/tree");
  return data;
}

export async function traverseTree(
  body: TraverseRequest,
): Promise<TraversalPayload> {
  const { data } = await request<TraversalPayload>("/tree/traverse", post(body));
  return data;
}

export async function fetchMetrics(
  scenarioId: string,
  body: MetricsRequest,
  signal?: AbortSignal,
): Promise<MetricsPayload> {
  const { data } = await request<MetricsPayload>(
    `/scenarios/${scenarioId}/metrics`,
    { ...post(body), signal },
  );
  return data;
}

export async function fetchFrontier(
  scenarioId: string,
  body: FrontierRequest,
): Promise<FrontierPayload> {
  const { data } = await request<FrontierPayload>(
    `/scenarios/${scenarioId}/frontier`,
    post(body),
  );
  return data;
}

export async function fetchSimulation(
  scenarioId: string,
  body: SimulateRequest,
  signal?: AbortSignal,
): Promise<SimulatePayload> {
  const { data } = await request<SimulatePayload>(
    `/scenarios/${scenarioId}/simulate`,
    { ...post(body), signal },
  );
  return data;
}

/**
 * Run the selector.  Infeasibility comes back as a 200 with a structured
 * body, not an HTTP error; callers branch on `isInfeasible`.  The service
 * persists a run report as a side effect and names it in a response header.
 */
export async function runSelect(
  scenarioId: string,
  body: SelectRequest,
): Promise<{ outcome: SelectOutcome; reportId: string | null }> {
  const { data, headers } = await request<SelectOutcome>(
    `/scenarios/${scenarioId}/select`,
    post(body),
  );
  return { outcome: data, reportId: headers.get("x-report-id") };
}

export async function getReport(id: string): Promise<RunReport> {
  const { data } = await request<RunReport>(`/reports/${id}`);
  return data;
}
