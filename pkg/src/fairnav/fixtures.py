"""Hand-built scenarios pinning down the regimes the engine must exhibit.

Each fixture is small enough that every number it produces can be checked by
hand, and each was tuned until one qualitative phenomenon shows up sharply:

* ``dp_harm``: equalizing acceptance rates forces extra lending to a group
  whose repayment odds are poor, so the parity-constrained optimum carries a
  strictly negative welfare delta for that group while the plain utility
  maximizer leaves it untouched.
* ``loan``: false positives are expensive for applicants (costly defaults),
  so tracking false-positive-rate parity is what moves worst-off welfare.
* ``healthcare_ranking``: missed diagnoses dominate the welfare weights, so
  true-positive-rate parity comes out on top instead.
* ``healthcare_two_policy``: two fixed screening policies, one slightly more
  accurate overall but near chance for the disadvantaged group; maximin
  prefers the balanced one.
* ``minmax_divergence``: the policy minimizing the worst group error level
  differs from the policy maximizing worst-off welfare; error floors and
  welfare floors are not the same idea.
* ``imposs_base``: base rates 0.3 vs 0.6; acceptance-rate, true-positive-rate
  and false-positive-rate parity are jointly satisfiable on the threshold
  grid only by accept-all/reject-all.
* ``imposs_symmetric``: identical groups, where every common threshold is a
  non-degenerate joint witness.

``mortgage_ledger_doc`` is not a scenario: it is a ledger comparison input
carrying published approval counts and average amounts for a baseline and a
fairness-aware mortgage model, plus the stated aggregate increase, which
does not match the product of its own figures.  The ledger flags that
mismatch; it does not resolve it.
"""

from __future__ import annotations

from .scenario import (
    GroupProfile,
    GroupWeights,
    Policy,
    Scenario,
    ScoreBin,
    UtilityParams,
    VectorRule,
    WelfareParams,
)

__all__ = [
    "dp_harm",
    "loan",
    "healthcare_ranking",
    "healthcare_two_policy",
    "minmax_divergence",
    "imposs_base",
    "imposs_symmetric",
    "mortgage_ledger_doc",
    "FIXTURES",
    "fixture",
    "fixture_names",
]


def _bins(scores, masses, rates) -> tuple[ScoreBin, ...]:
    return tuple(
        ScoreBin(score=s, mass=m, positive_rate=r)
        for s, m, r in zip(scores, masses, rates)
    )


def dp_harm() -> Scenario:
    """Acceptance-rate parity harms the low-base-rate group."""
    return Scenario(
        id="dp-harm",
        context_class="general",
        utility_params=UtilityParams(gain_tp=1.0, loss_fp=1.0),
        welfare_params=WelfareParams(
            weights=GroupWeights(w_tp=1.0, w_fp=-2.0, w_fn=0.0, w_tn=0.0),
            c_plus=0.2,
            c_minus=0.2,
            ses_override=True,
        ),
        groups=(
            GroupProfile(
                id="a",
                label="advantaged applicants",
                share=0.5,
                bins=_bins(
                    [0.1, 0.3, 0.5, 0.7, 0.9],
                    [0.2, 0.2, 0.2, 0.2, 0.2],
                    [0.15, 0.35, 0.6, 0.8, 0.95],
                ),
            ),
            GroupProfile(
                id="b",
                label="disadvantaged applicants",
                share=0.5,
                ses_tag=True,
                bins=_bins(
                    [0.05, 0.25, 0.45, 0.65, 0.85],
                    [0.2, 0.2, 0.2, 0.2, 0.2],
                    [0.05, 0.15, 0.25, 0.35, 0.45],
                ),
            ),
        ),
    )


def loan() -> Scenario:
    """Costly defaults: false-positive-rate parity carries the welfare impact."""
    return Scenario(
        id="loan",
        context_class="general",
        utility_params=UtilityParams(gain_tp=1.0, loss_fp=1.0),
        welfare_params=WelfareParams(
            weights=GroupWeights(w_tp=1.0, w_fp=-2.0, w_fn=0.0, w_tn=0.0),
            c_plus=0.2,
            c_minus=0.2,
            ses_override=True,
        ),
        groups=(
            GroupProfile(
                id="a",
                label="advantaged applicants",
                share=0.5,
                bins=_bins(
                    [0.2, 0.4, 0.6, 0.8],
                    [0.25, 0.25, 0.25, 0.25],
                    [0.2, 0.55, 0.8, 0.95],
                ),
            ),
            GroupProfile(
                id="b",
                label="disadvantaged applicants",
                share=0.5,
                ses_tag=True,
                bins=_bins(
                    [0.15, 0.35, 0.55, 0.75],
                    [0.25, 0.25, 0.25, 0.25],
                    [0.1, 0.3, 0.6, 0.93],
                ),
            ),
        ),
    )


def healthcare_ranking() -> Scenario:
    """Missed diagnoses dominate: true-positive-rate parity ranks first."""
    return Scenario(
        id="healthcare-ranking",
        context_class="general",
        utility_params=UtilityParams(gain_tp=1.0, loss_fp=1.0),
        welfare_params=WelfareParams(
            weights=GroupWeights(w_tp=1.0, w_fp=-0.2, w_fn=-2.0, w_tn=0.0),
            c_plus=0.2,
            c_minus=0.2,
            ses_override=True,
        ),
        groups=(
            GroupProfile(
                id="a",
                label="well-served patients",
                share=0.5,
                bins=_bins(
                    [0.2, 0.4, 0.6, 0.8],
                    [0.1, 0.2, 0.3, 0.4],
                    [0.2, 0.55, 0.8, 0.95],
                ),
            ),
            GroupProfile(
                id="b",
                label="under-served patients",
                share=0.5,
                ses_tag=True,
                bins=_bins(
                    [0.2, 0.4, 0.6, 0.8],
                    [0.4, 0.3, 0.2, 0.1],
                    [0.04, 0.06, 0.45, 0.65],
                ),
            ),
        ),
    )


def healthcare_two_policy() -> Scenario:
    """Two fixed screeners: 99%-vs-50% accuracy against 90%-vs-80%."""
    return Scenario(
        id="healthcare-two-policy",
        context_class="general",
        utility_params=UtilityParams(gain_tp=1.0, loss_fp=0.0),
        welfare_params=WelfareParams(
            weights=GroupWeights(w_tp=1.0, w_fp=0.0, w_fn=0.0, w_tn=1.0),
            ses_override=True,
        ),
        groups=(
            GroupProfile(
                id="w",
                label="well-off patients",
                share=0.8,
                bins=_bins([0.9], [1.0], [1.0]),
            ),
            GroupProfile(
                id="p",
                label="worst-off patients",
                share=0.2,
                ses_tag=True,
                bins=_bins([0.3], [1.0], [1.0]),
            ),
        ),
        policies={
            "highGap": Policy(
                rules={"w": VectorRule((0.99,)), "p": VectorRule((0.5,))}
            ),
            "balanced": Policy(
                rules={"w": VectorRule((0.9,)), "p": VectorRule((0.8,))}
            ),
        },
    )


def minmax_divergence() -> Scenario:
    """Worst error level and worst-off welfare disagree about the best policy."""
    return Scenario(
        id="minmax-divergence",
        context_class="general",
        utility_params=UtilityParams(gain_tp=1.0, loss_fp=0.0),
        welfare_params=WelfareParams(
            weights=GroupWeights(w_tp=1.0, w_fp=0.0, w_fn=0.0, w_tn=0.0),
            ses_override=True,
        ),
        groups=(
            GroupProfile(
                id="w",
                label="well-off",
                share=0.5,
                bins=_bins([0.9], [1.0], [1.0]),
            ),
            GroupProfile(
                id="p",
                label="worst-off",
                share=0.5,
                ses_tag=True,
                bins=_bins([0.2], [1.0], [1.0]),
            ),
        ),
        policies={
            "tilted": Policy(
                rules={"w": VectorRule((0.5,)), "p": VectorRule((0.75,))}
            ),
            "flat": Policy(
                rules={"w": VectorRule((0.9,)), "p": VectorRule((0.7,))}
            ),
        },
    )


def imposs_base() -> Scenario:
    """Base rates 0.3 vs 0.6: three-way parity only degenerately satisfiable."""
    return Scenario(
        id="imposs-base",
        context_class="general",
        utility_params=UtilityParams(gain_tp=1.0, loss_fp=1.0),
        welfare_params=WelfareParams(),
        groups=(
            GroupProfile(
                id="a",
                label="group a",
                share=0.5,
                bins=_bins([0.2, 0.8], [0.5, 0.5], [0.1, 0.5]),
            ),
            GroupProfile(
                id="b",
                label="group b",
                share=0.5,
                bins=_bins([0.2, 0.8], [0.5, 0.5], [0.4, 0.8]),
            ),
        ),
    )


def imposs_symmetric() -> Scenario:
    """Identical groups: every common threshold jointly satisfies the parities."""
    bins = _bins([0.2, 0.8], [0.5, 0.5], [0.2, 0.7])
    return Scenario(
        id="imposs-symmetric",
        context_class="general",
        utility_params=UtilityParams(gain_tp=1.0, loss_fp=1.0),
        welfare_params=WelfareParams(),
        groups=(
            GroupProfile(id="a", label="group a", share=0.5, bins=bins),
            GroupProfile(id="b", label="group b", share=0.5, bins=bins),
        ),
    )


def mortgage_ledger_doc() -> dict:
    """Ledger input with published mortgage approval figures.

    The stated aggregate increase for the affected group does not equal the
    difference of the two totals computed from the counts and averages in
    the same source; the comparison is expected to flag it.
    """
    return {
        "pairs": [
            {
                "label": "black applicants",
                "baseline": {
                    "label": "baseline model",
                    "approvedCount": 4722,
                    "averageAmountCents": 25_828_000,
                },
                "fairnessAware": {
                    "label": "fairness-aware model",
                    "approvedCount": 12_494,
                    "averageAmountCents": 16_382_000,
                },
                "statedDeltaCents": 127_300_000_000,
            }
        ]
    }


FIXTURES = {
    "dp-harm": dp_harm,
    "loan": loan,
    "healthcare-ranking": healthcare_ranking,
    "healthcare-two-policy": healthcare_two_policy,
    "minmax-divergence": minmax_divergence,
    "imposs-base": imposs_base,
    "imposs-symmetric": imposs_symmetric,
}


def fixture(name: str) -> Scenario:
    return FIXTURES[name]()


def fixture_names() -> tuple[str, ...]:
    return tuple(FIXTURES)
