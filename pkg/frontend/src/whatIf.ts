/**
 * What-if panel controller.
 *
 * The analyst drags thresholds or acceptance probabilities and watches the
 * metric and welfare readouts move.  Rapid edits race; the controller
 * cancels the in-flight request pair whenever a newer edit arrives, so the
 * panel only ever renders numbers for the policy currently on screen.
 */

import { fetchMetrics, fetchSimulation } from "./client";
import type { WhatIfEdits } from "./session";
import type { MetricsPayload, PolicyDoc, SimulatePayload } from "./types";

export interface WhatIfReadout {
  metrics: MetricsPayload;
  simulation: SimulatePayload;
}

export type RecomputeResult =
  | { status: "done"; readout: WhatIfReadout }
  | { status: "superseded" };

export function editsToPolicy(edits: WhatIfEdits): PolicyDoc {
  return { perGroup: edits.perGroup };
}

export class WhatIfController {
  private inflight: AbortController | null = null;

  constructor(
    private readonly scenarioId: string,
    private readonly horizon = 5,
  ) {}

  /**
   * Recompute metrics and simulation for the current edits.  A call that
   * was overtaken by a newer one resolves with "superseded" instead of
   * rejecting, so callers can ignore it without try/catch noise.
   */
  async recompute(edits: WhatIfEdits): Promise<RecomputeResult> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;

    const policy = editsToPolicy(edits);
    try {
      const [metrics, simulation] = await Promise.all([
        fetchMetrics(this.scenarioId, { policy }, controller.signal),
        fetchSimulation(
          this.scenarioId,
          { policy, horizon: this.horizon },
          controller.signal,
        ),
      ]);
      if (controller.signal.aborted) return { status: "superseded" };
      return { status: "done", readout: { metrics, simulation } };
    } catch (err) {
      if (controller.signal.aborted) return { status: "superseded" };
      throw err;
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }

  cancel(): void {
    this.inflight?.abort();
    this.inflight = null;
  }
}
