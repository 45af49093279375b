/**
 * Wire types for the navigator service.
 *
 * These mirror the service's canonical JSON payloads field for field; the
 * test fixtures under tests/fixtures/ are byte captures of real responses,
 * so any drift between these types and the service shows up as a failing
 * parse in the suite.  Nothing in here computes a fairness number.  The
 * client displays what the service sends, full stop.
 */

export type MetricName =
  | "demographic_parity"
  | "conditional_demographic_parity"
  | "equal_opportunity"
  | "predictive_equality"
  | "equalized_odds"
  | "predictive_parity"
  | "minmax_error";

/** A per-group decision rule: a cut-off, or one acceptance probability per bin. */
export interface GroupRule {
  threshold?: number;
  taus?: number[];
}

export interface PolicyDoc {
  perGroup: Record<string, GroupRule>;
}

// -- decision tree ---------------------------------------------------------

export interface TreeNode {
  id: string;
  question: string;
  /** answer token -> next node id or leaf metric name */
  answers: Record<string, string>;
}

export interface TreePayload {
  root: string;
  nodes: TreeNode[];
}

export interface PathHop {
  node: string;
  answer: string;
}

export interface OpenQuestion {
  node: string;
  question: string;
}

export interface TraversalPayload {
  leaf: MetricName | null;
  path: PathHop[];
  remaining: OpenQuestion[];
}

// -- metrics ---------------------------------------------------------------

export interface PerGroupReadout {
  acceptanceRate: number;
  errorRate: number;
  expectedAccepts: number;
  falseNegativeRate: number;
  falsePositiveRate: number;
  positivePredictiveValue: number;
  truePositiveRate: number;
}

export interface MetricsPayload {
  accuracy: number;
  utilityCents: number;
  /** conditional_demographic_parity is null when the scenario has no strata */
  disparities: Record<MetricName, number | null>;
  perGroup: Record<string, PerGroupReadout>;
}

// -- frontier --------------------------------------------------------------

export interface FrontierPoint {
  policy: PolicyDoc;
  utilityCents: number;
  disparity: number;
  worstOffWelfare: number;
}

export interface FrontierPayload {
  metric: MetricName;
  points: FrontierPoint[];
}

// -- simulation ------------------------------------------------------------

export interface WelfareReadout {
  institutionUtilityCents: number;
  perGroupDelta: Record<string, number>;
  worstOffGroup: string;
  worstOffWelfare: number;
}

export interface SimulatePayload {
  welfare: WelfareReadout;
  trajectory: {
    horizon: number;
    perGroupMeanScore: Record<string, number[]>;
  };
}

// -- selection -------------------------------------------------------------

export interface JustificationStep {
  rule: string;
  text: string;
  data: Record<string, unknown>;
}

export interface CrossCheck {
  treeMetric: MetricName;
  selectorMetric: MetricName;
  treeOptimumWorstOffWelfare: number;
  selectorOptimumWorstOffWelfare: number;
  worstOffWelfareDelta: number;
  concordant: boolean;
  verdict: "concordant" | "discordant";
}

export interface SelectionResult {
  chosenMetric: MetricName;
  chosenPolicy: PolicyDoc;
  chosenPoint: FrontierPoint;
  principle: string;
  worstOffGroup: string;
  worstOffWelfare: number;
  justification: JustificationStep[];
  crossCheck?: CrossCheck;
}

export interface InfeasibleResult {
  infeasible: true;
  reason: string;
  binding: Record<string, unknown>;
}

export type SelectOutcome = SelectionResult | InfeasibleResult;

export function isInfeasible(o: SelectOutcome): o is InfeasibleResult {
  return (o as InfeasibleResult).infeasible === true;
}

// -- run reports -----------------------------------------------------------

export interface RunReport {
  id: string;
  timestamp: string;
  scenarioId: string;
  selection: SelectOutcome;
  frontier: FrontierPayload;
  fairness: MetricsPayload;
  welfare: WelfareReadout;
}

// -- scenario documents (for upload and client-side edit validation) -------

export interface ScenarioBin {
  score: number;
  mass: number;
  positiveRate: number;
  stratum?: string;
}

export interface ScenarioGroup {
  id: string;
  bins: ScenarioBin[];
  [extra: string]: unknown;
}

export interface ScenarioDoc {
  id: string;
  contextClass: "opportunity" | "general";
  groups: ScenarioGroup[];
  [extra: string]: unknown;
}

// -- request bodies --------------------------------------------------------

export interface TraverseRequest {
  answers: Record<string, string>;
  tree?: TreePayload;
}

export interface MetricsRequest {
  threshold?: number;
  policy?: PolicyDoc;
  policyName?: string;
}

export interface FrontierRequest {
  metric: MetricName;
  grid?: Record<string, unknown>;
}

export interface SimulateRequest extends MetricsRequest {
  horizon?: number;
}

export interface SelectRequest {
  minUtility?: number;
  bound?: number;
  treeMetric?: MetricName;
  grid?: Record<string, unknown>;
  candidates?: MetricName[];
}
