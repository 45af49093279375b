"""Decision support for choosing fairness measures and operating points.

The package models classification settings as discrete score-bin scenarios,
computes the statistical fairness catalog exactly, enumerates the
fairness/utility Pareto frontier, simulates one-step and long-run welfare
impacts per group, demonstrates joint-satisfiability limits of parity
metrics by exhaustive search, and selects a measure and policy by welfare
reasoning with an auditable justification trace.  A CLI (``navigator``) and
an HTTP service expose the same operations with byte-identical canonical
JSON output.
"""

from .canonical import canonical_bytes, canonical_json, cents, dollars
from .scenario import (
    GroupProfile,
    GroupWeights,
    IngestError,
    Policy,
    Scenario,
    ScenarioError,
    ScenarioParseError,
    ScenarioValidationError,
    ScoreBin,
    SynthGroupSpec,
    SynthSpec,
    ThresholdRule,
    UtilityParams,
    VectorRule,
    WelfareParams,
    ingest_csv,
    load_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
    synth_scenario,
)
from .metrics import (
    ConfigurationError,
    ConfusionStats,
    FairnessReport,
    METRIC_CATALOG,
    MetricId,
    accuracy,
    confusion,
    disparity,
    fairness_report,
    utility,
)
from .grids import (
    ExplicitGrid,
    GridCapError,
    TauGrid,
    ThresholdGrid,
    enumerate_policies,
    parse_grid,
)
from .impossibility import FeasibilityReport, is_degenerate, joint_feasible
from .pareto import (
    Frontier,
    Infeasibility,
    ParetoPoint,
    constrained_optimum,
    pareto_frontier,
    score_policies,
    utility_maximizer,
)
from .welfare import (
    LedgerComparison,
    LedgerDelta,
    LedgerEntry,
    Trajectory,
    WelfareOutcome,
    compare_ledgers,
    identify_worst_off,
    ledger_from_dict,
    long_run_drift,
    one_step_welfare,
)
from .selector import (
    CrossCheck,
    MetricImpact,
    Principle,
    SelectionResult,
    SustainabilityConstraint,
    cross_check,
    rank_metrics_by_impact,
    replay,
    replays_identically,
    select,
)
from .tree import (
    DecisionNode,
    DecisionTree,
    TraversalResult,
    TreeError,
    builtin_tree,
    load_tree,
    traverse,
)
from .workspace import Workspace

__version__ = "0.1.0"
