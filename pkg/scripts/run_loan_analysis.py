"""End-to-end walkthrough on the loan fixture.

Prints the fairness report for the utility maximizer, the frontier for the
chosen metric, the selection with its justification, the questionnaire
cross-check, and the drift trajectories of the competing policies.
"""

from fairnav import (
    MetricId,
    cross_check,
    fairness_report,
    fixtures,
    long_run_drift,
    pareto_frontier,
    score_policies,
    select,
    utility_maximizer,
)


def main() -> None:
    scenario = fixtures.loan()
    print(f"scenario {scenario.id}: groups {scenario.group_ids}")
    for g in scenario.groups:
        print(f"  {g.id}: base rate {g.base_rate:.4f}, mean score {g.mean_score:.4f}")

    result = select(scenario)
    print(f"\nprinciple: {result.principle}")
    print("metric ranking (impact on worst-off welfare):")
    for entry in result.metric_ranking:
        impact = "infeasible" if entry.infeasible else f"{entry.impact:+.4f}"
        print(f"  {entry.metric}: {impact}")
    print(f"chosen metric: {result.chosen_metric}")
    print(f"chosen policy: {result.chosen_policy.encode()}")
    print(
        f"worst-off {result.worst_off_group!r} welfare {result.worst_off_welfare:.4f}, "
        f"utility {result.chosen_point.utility:.4f}"
    )

    report = fairness_report(scenario, result.chosen_policy)
    print("\ndisparities at the chosen policy:")
    for metric, value in report.disparities.items():
        shown = "n/a" if value is None else f"{value:.4f}"
        print(f"  {metric}: {shown}")

    frontier = pareto_frontier(
        score_policies(scenario, result.chosen_metric), result.chosen_metric
    )
    print(f"\nfrontier for {frontier.metric} ({len(frontier.points)} points):")
    for p in frontier.points:
        print(
            f"  utility {p.utility:+.4f}  disparity {p.disparity:.4f}  "
            f"worst-off {p.worst_off_welfare:+.4f}"
        )

    check = cross_check(scenario, MetricId.DEMOGRAPHIC_PARITY, result)
    print(f"\ncross-check vs questionnaire answer demographic_parity: {check.verdict}")
    if check.worst_off_welfare_delta is not None:
        print(
            f"  worst-off welfare delta (selector minus tree): "
            f"{check.worst_off_welfare_delta:+.4f}"
        )

    reference = utility_maximizer(scenario, result.chosen_metric)
    for label, policy in [
        ("chosen", result.chosen_policy),
        ("utility-max", reference.policy),
    ]:
        trajectory = long_run_drift(scenario, policy, horizon=5)
        print(f"\nmean-score drift under the {label} policy:")
        for gid, means in trajectory.per_group_mean_score.items():
            path = " -> ".join(f"{m:.4f}" for m in means)
            print(f"  {gid}: {path}")


if __name__ == "__main__":
    main()
