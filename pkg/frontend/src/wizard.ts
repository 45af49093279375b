/**
 * Decision-tree wizard flow.
 *
 * The one design rule in here: a leaf is never surfaced on its own.  The
 * questionnaire can be walked with good intentions and still land on a
 * measure that hurts the group it was meant to protect, so the moment a
 * path reaches a leaf the wizard requests the selector's cross-check and
 * couples the two in a single view.  `LeafView.verdict` is a required
 * field; there is no constructor for a verdict-less leaf.
 */

import {
  getReport,
  getTree,
  runSelect,
  traverseTree,
} from "./client";
import {
  cacheReport,
  currentNode,
  popAnswer,
  pushAnswer,
  type SessionState,
} from "./session";
import { fmtSignedDelta } from "./format";
import {
  isInfeasible,
  type CrossCheck,
  type MetricName,
  type SelectionResult,
} from "./types";

export type WelfareVerdict =
  | {
      kind: "cross_check";
      check: CrossCheck;
      selection: SelectionResult;
      /** non-null exactly when the verdict is discordant */
      warning: string | null;
    }
  | { kind: "infeasible"; reason: string };

export type WizardView =
  | { kind: "question"; node: string; question: string; tokens: string[] }
  | { kind: "leaf"; metric: MetricName; verdict: WelfareVerdict }
  | { kind: "invalid"; message: string };

export interface WizardStep {
  state: SessionState;
  view: WizardView;
}

function questionView(state: SessionState): WizardView {
  const nodeId = currentNode(state);
  const node = state.tree?.nodes.find((n) => n.id === nodeId);
  if (!node) {
    return { kind: "invalid", message: "the questionnaire is already complete" };
  }
  return {
    kind: "question",
    node: node.id,
    question: node.question,
    tokens: Object.keys(node.answers).sort(),
  };
}

/** Fetch the questionnaire and present its first question. */
export async function startWizard(state: SessionState): Promise<WizardStep> {
  const tree = await getTree();
  const next = { ...state, tree, answers: [] };
  return { state: next, view: questionView(next) };
}

function answersRecord(state: SessionState): Record<string, string> {
  const record: Record<string, string> = {};
  for (const hop of state.answers) record[hop.node] = hop.answer;
  return record;
}

function discordanceWarning(check: CrossCheck): string | null {
  if (check.concordant) return null;
  if (check.worstOffWelfareDelta === 0) {
    return (
      `Note: the selector would pick '${check.selectorMetric}' rather than the ` +
      `questionnaire's '${check.treeMetric}', though the worst-off group fares ` +
      `the same under both here.`
    );
  }
  return (
    `Warning: following the questionnaire's '${check.treeMetric}' here leaves ` +
    `the worst-off group at welfare ${check.treeOptimumWorstOffWelfare}, ` +
    `${fmtSignedDelta(-check.worstOffWelfareDelta)} versus the selector's ` +
    `'${check.selectorMetric}'. Review before adopting.`
  );
}

/**
 * Answer the current question.  Invalid tokens produce an inline message
 * and leave the state untouched.  A leaf triggers the selector run (with
 * the leaf as the tree metric) so the returned view always carries the
 * welfare verdict; the run report the service persists is cached on the
 * session for the report browser.
 */
export async function wizardStep(
  state: SessionState,
  token: string,
): Promise<WizardStep> {
  const pushed = pushAnswer(state, token);
  if (!pushed.ok) {
    return { state, view: { kind: "invalid", message: pushed.message } };
  }
  let next = pushed.state;

  const traversal = await traverseTree({ answers: answersRecord(next) });
  if (traversal.leaf === null) {
    return { state: next, view: questionView(next) };
  }

  const leaf = traversal.leaf;
  if (next.activeScenarioId === null) {
    return {
      state: next,
      view: {
        kind: "leaf",
        metric: leaf,
        verdict: {
          kind: "infeasible",
          reason: "no scenario loaded; upload one to see the welfare verdict",
        },
      },
    };
  }

  const { outcome, reportId } = await runSelect(next.activeScenarioId, {
    treeMetric: leaf,
  });
  if (reportId !== null) {
    next = cacheReport(next, await getReport(reportId));
  }
  if (isInfeasible(outcome)) {
    return {
      state: next,
      view: {
        kind: "leaf",
        metric: leaf,
        verdict: { kind: "infeasible", reason: outcome.reason },
      },
    };
  }
  const check = outcome.crossCheck;
  if (!check) {
    throw new Error("selector response missing crossCheck despite treeMetric");
  }
  return {
    state: next,
    view: {
      kind: "leaf",
      metric: leaf,
      verdict: {
        kind: "cross_check",
        check,
        selection: outcome,
        warning: discordanceWarning(check),
      },
    },
  };
}

/** Step back to the previous question. */
export function wizardBack(state: SessionState): WizardStep {
  const next = popAnswer(state);
  return { state: next, view: questionView(next) };
}
