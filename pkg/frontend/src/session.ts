/**
 * Single-user session state and the update rules that keep it coherent.
 *
 * Two invariants are enforced here rather than in the rendering layer,
 * because every caller must respect them:
 *
 *  - wizard answers only ever contain tokens the fetched tree declares for
 *    the node they answer;
 *  - what-if edits are validated before they enter the state: acceptance
 *    probabilities must sit in [0, 1], thresholds must be finite numbers.
 *
 * The frontier cache carries an explicit `stale` flag.  Re-uploading the
 * active scenario does not silently refetch; it marks the frontier stale so
 * the UI can show a refresh prompt instead of quietly swapping numbers
 * under the analyst.
 */

import type {
  FrontierPayload,
  GroupRule,
  PathHop,
  RunReport,
  ScenarioDoc,
  TreePayload,
} from "./types";

export interface WhatIfEdits {
  perGroup: Record<string, GroupRule>;
}

export interface FrontierCache {
  payload: FrontierPayload;
  stale: boolean;
}

export interface SessionState {
  activeScenarioId: string | null;
  scenario: ScenarioDoc | null;
  tree: TreePayload | null;
  /** ordered, so back-navigation can pop the most recent answer */
  answers: PathHop[];
  frontier: FrontierCache | null;
  /** index into frontier.payload.points, or "recommended" for the pinned selector choice */
  selectedPoint: number | "recommended" | null;
  whatIf: WhatIfEdits;
  reports: Record<string, RunReport>;
}

export function freshSession(): SessionState {
  return {
    activeScenarioId: null,
    scenario: null,
    tree: null,
    answers: [],
    frontier: null,
    selectedPoint: null,
    whatIf: { perGroup: {} },
    reports: {},
  };
}

/**
 * Record an uploaded or re-uploaded scenario.  Editing the scenario the
 * frontier was computed from invalidates that frontier; switching to a
 * different scenario drops it outright.
 */
export function noteScenarioUpload(
  state: SessionState,
  doc: ScenarioDoc,
): SessionState {
  const editingActive = state.activeScenarioId === doc.id;
  return {
    ...state,
    activeScenarioId: doc.id,
    scenario: doc,
    frontier:
      editingActive && state.frontier
        ? { ...state.frontier, stale: true }
        : null,
    selectedPoint: editingActive ? state.selectedPoint : null,
    whatIf: editingActive ? state.whatIf : { perGroup: {} },
    answers: editingActive ? state.answers : [],
  };
}

export function needsFrontierRefresh(state: SessionState): boolean {
  return state.frontier !== null && state.frontier.stale;
}

export function cacheFrontier(
  state: SessionState,
  payload: FrontierPayload,
): SessionState {
  return { ...state, frontier: { payload, stale: false }, selectedPoint: null };
}

export function cacheReport(
  state: SessionState,
  report: RunReport,
): SessionState {
  return { ...state, reports: { ...state.reports, [report.id]: report } };
}

// -- wizard answers --------------------------------------------------------

/** The id of the question an answer sequence has reached, or null on a leaf. */
export function currentNode(state: SessionState): string | null {
  if (!state.tree) return null;
  const byId = new Map(state.tree.nodes.map((n) => [n.id, n]));
  let at = state.tree.root;
  for (const hop of state.answers) {
    const node = byId.get(at);
    if (!node || hop.node !== node.id) return null;
    const target = node.answers[hop.answer];
    if (target === undefined) return null;
    if (!byId.has(target)) return null; // leaf reached
    at = target;
  }
  return byId.has(at) ? at : null;
}

export type AnswerResult =
  | { ok: true; state: SessionState }
  | { ok: false; message: string };

/**
 * Append one wizard answer.  Tokens the tree does not declare for the
 * current node are refused with a message and the state is left untouched.
 */
export function pushAnswer(state: SessionState, token: string): AnswerResult {
  if (!state.tree) return { ok: false, message: "no decision tree loaded" };
  const nodeId = currentNode(state);
  if (nodeId === null) {
    return { ok: false, message: "the questionnaire is already complete" };
  }
  const node = state.tree.nodes.find((n) => n.id === nodeId);
  if (!node || node.answers[token] === undefined) {
    const valid = node ? Object.keys(node.answers).sort().join(", ") : "";
    return {
      ok: false,
      message: `'${token}' is not an answer to this question (expected one of: ${valid})`,
    };
  }
  return {
    ok: true,
    state: { ...state, answers: [...state.answers, { node: nodeId, answer: token }] },
  };
}

/** Step back one answer; restores the prior question. No-op when at the root. */
export function popAnswer(state: SessionState): SessionState {
  if (state.answers.length === 0) return state;
  return { ...state, answers: state.answers.slice(0, -1) };
}

export function resetAnswers(state: SessionState): SessionState {
  return { ...state, answers: [] };
}

// -- what-if edits ---------------------------------------------------------

export type EditResult =
  | { ok: true; state: SessionState }
  | { ok: false; message: string };

export function setGroupThreshold(
  state: SessionState,
  groupId: string,
  threshold: number,
): EditResult {
  if (!Number.isFinite(threshold)) {
    return { ok: false, message: "threshold must be a finite number" };
  }
  const perGroup = { ...state.whatIf.perGroup, [groupId]: { threshold } };
  return { ok: true, state: { ...state, whatIf: { perGroup } } };
}

export function setGroupTaus(
  state: SessionState,
  groupId: string,
  taus: number[],
): EditResult {
  for (const tau of taus) {
    if (!Number.isFinite(tau) || tau < 0 || tau > 1) {
      return {
        ok: false,
        message: `acceptance probability ${tau} is outside [0, 1]`,
      };
    }
  }
  const group = state.scenario?.groups.find((g) => g.id === groupId);
  if (group && taus.length !== group.bins.length) {
    return {
      ok: false,
      message: `group '${groupId}' has ${group.bins.length} bins, got ${taus.length} probabilities`,
    };
  }
  const perGroup = { ...state.whatIf.perGroup, [groupId]: { taus: [...taus] } };
  return { ok: true, state: { ...state, whatIf: { perGroup } } };
}

/** Replace the what-if edits wholesale with a policy document's rules. */
export function adoptPolicy(
  state: SessionState,
  perGroup: Record<string, GroupRule>,
): SessionState {
  const copied: Record<string, GroupRule> = {};
  for (const [gid, rule] of Object.entries(perGroup)) {
    copied[gid] =
      rule.taus !== undefined ? { taus: [...rule.taus] } : { ...rule };
  }
  return { ...state, whatIf: { perGroup: copied } };
}
