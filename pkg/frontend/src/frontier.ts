/**
 * Pareto frontier explorer.
 *
 * The explorer shows the frontier for one disparity measure alongside the
 * selector's recommendation.  The recommended policy is matched against
 * the frontier by exact policy equality; under the difference principle it
 * often tolerates disparity and then sits off the displayed frontier, in
 * which case it is pinned as its own highlighted point rather than being
 * forced onto the curve.
 *
 * Selecting any point syncs the what-if panel's thresholds to that point's
 * policy, so the analyst's next experiment starts from what they just
 * inspected.
 */

import { fetchFrontier, fetchSimulation, runSelect } from "./client";
import {
  adoptPolicy,
  cacheFrontier,
  needsFrontierRefresh,
  type SessionState,
} from "./session";
import {
  isInfeasible,
  type FrontierPoint,
  type GroupRule,
  type MetricName,
  type PolicyDoc,
  type SelectionResult,
  type SelectRequest,
} from "./types";

function rulesEqual(a: GroupRule, b: GroupRule): boolean {
  if (a.threshold !== undefined || b.threshold !== undefined) {
    return a.threshold === b.threshold && a.taus === undefined && b.taus === undefined;
  }
  if (a.taus === undefined || b.taus === undefined) return a.taus === b.taus;
  return a.taus.length === b.taus.length && a.taus.every((t, i) => t === b.taus![i]);
}

export function policiesEqual(a: PolicyDoc, b: PolicyDoc): boolean {
  const aIds = Object.keys(a.perGroup).sort();
  const bIds = Object.keys(b.perGroup).sort();
  if (aIds.length !== bIds.length) return false;
  return aIds.every((gid, i) => {
    if (gid !== bIds[i]) return false;
    const ra = a.perGroup[gid];
    const rb = b.perGroup[gid];
    return ra !== undefined && rb !== undefined && rulesEqual(ra, rb);
  });
}

export interface ExplorerModel {
  metric: MetricName;
  points: FrontierPoint[];
  selection: SelectionResult | null;
  /** index of the frontier point the selector chose, or null when it sits off this frontier */
  recommendedIndex: number | null;
  /** present (and highlighted separately) when recommendedIndex is null */
  pinnedRecommendation: FrontierPoint | null;
  infeasibleReason: string | null;
}

export interface DetailPanel {
  utilityCents: number;
  disparity: number;
  worstOffWelfare: number;
  policy: PolicyDoc;
  recommended: boolean;
  /** filled by fetchPanelDeltas; never computed locally */
  perGroupDelta: Record<string, number> | null;
}

/**
 * Fetch the frontier and the selector's recommendation for a scenario.
 * Returns the updated session (frontier cached, stale flag cleared) and
 * the explorer model.
 */
export async function loadExplorer(
  state: SessionState,
  metric: MetricName,
  selectBody: SelectRequest = {},
): Promise<{ state: SessionState; model: ExplorerModel }> {
  if (state.activeScenarioId === null) {
    throw new Error("no active scenario");
  }
  const frontier = await fetchFrontier(state.activeScenarioId, { metric });
  const { outcome } = await runSelect(state.activeScenarioId, selectBody);

  let selection: SelectionResult | null = null;
  let infeasibleReason: string | null = null;
  if (isInfeasible(outcome)) {
    infeasibleReason = outcome.reason;
  } else {
    selection = outcome;
  }

  let recommendedIndex: number | null = null;
  if (selection) {
    const at = frontier.points.findIndex((p) =>
      policiesEqual(p.policy, selection!.chosenPolicy),
    );
    recommendedIndex = at >= 0 ? at : null;
  }

  return {
    state: cacheFrontier(state, frontier),
    model: {
      metric: frontier.metric,
      points: frontier.points,
      selection,
      recommendedIndex,
      pinnedRecommendation:
        selection && recommendedIndex === null ? selection.chosenPoint : null,
      infeasibleReason,
    },
  };
}

/** Re-fetch after the session flagged the cached frontier stale. */
export async function refreshExplorer(
  state: SessionState,
  model: ExplorerModel,
  selectBody: SelectRequest = {},
): Promise<{ state: SessionState; model: ExplorerModel }> {
  return loadExplorer(state, model.metric, selectBody);
}

/** The refresh prompt the UI must show before trusting cached points. */
export function refreshPrompt(state: SessionState): string | null {
  return needsFrontierRefresh(state)
    ? "The scenario changed since this frontier was computed. Refresh before reading numbers off it."
    : null;
}

/**
 * Select a frontier point (by index) or the pinned recommendation.  The
 * detail panel for the recommended point reproduces the selector's own
 * chosenPoint fields; the what-if edits are set to the selected policy.
 */
export function selectPoint(
  state: SessionState,
  model: ExplorerModel,
  which: number | "recommended",
): { state: SessionState; panel: DetailPanel } {
  let point: FrontierPoint;
  let recommended: boolean;
  if (which === "recommended") {
    if (model.recommendedIndex !== null) {
      const onFrontier = model.points[model.recommendedIndex];
      if (!onFrontier) throw new Error("recommended index out of range");
      point = onFrontier;
    } else if (model.pinnedRecommendation) {
      point = model.pinnedRecommendation;
    } else {
      throw new Error("no recommendation available (selection was infeasible)");
    }
    recommended = true;
  } else {
    const chosen = model.points[which];
    if (!chosen) throw new Error(`no frontier point at index ${which}`);
    point = chosen;
    recommended = which === model.recommendedIndex;
  }

  const nextState: SessionState = {
    ...adoptPolicy(state, point.policy.perGroup),
    selectedPoint: which,
  };
  return {
    state: nextState,
    panel: {
      utilityCents: point.utilityCents,
      disparity: point.disparity,
      worstOffWelfare: point.worstOffWelfare,
      policy: point.policy,
      recommended,
      perGroupDelta: null,
    },
  };
}

/** Fill the panel's per-group welfare deltas from the simulation endpoint. */
export async function fetchPanelDeltas(
  state: SessionState,
  panel: DetailPanel,
  signal?: AbortSignal,
): Promise<DetailPanel> {
  if (state.activeScenarioId === null) {
    throw new Error("no active scenario");
  }
  const sim = await fetchSimulation(
    state.activeScenarioId,
    { policy: panel.policy },
    signal,
  );
  return { ...panel, perGroupDelta: sim.welfare.perGroupDelta };
}
