"""Confusion statistics, disparity measures, the full fairness report.

Numeric expectations were frozen from an independent recomputation with plain
loops before these tests were written; tolerances are 1e-9 except where a sum
is exact in binary floating point.
"""

import pytest

from fairnav import (
    ConfigurationError,
    GroupProfile,
    METRIC_CATALOG,
    MetricId,
    Policy,
    Scenario,
    ScoreBin,
    ThresholdRule,
    UtilityParams,
    VectorRule,
    WelfareParams,
    accuracy,
    confusion,
    disparity,
    fairness_report,
    utility,
)

A_BINS = (ScoreBin(0.2, 0.5, 0.2), ScoreBin(0.8, 0.5, 0.9))
B_BINS = (ScoreBin(0.2, 0.5, 0.1), ScoreBin(0.8, 0.5, 0.5))


def one_group():
    return Scenario(
        id="one",
        context_class="general",
        utility_params=UtilityParams(1.0, 2.0),
        welfare_params=WelfareParams(),
        groups=(GroupProfile(id="a", label="A", share=1.0, bins=A_BINS),),
    )


def two_group():
    return Scenario(
        id="two",
        context_class="general",
        utility_params=UtilityParams(1.0, 2.0),
        welfare_params=WelfareParams(),
        groups=(
            GroupProfile(id="a", label="A", share=0.5, bins=A_BINS),
            GroupProfile(id="b", label="B", share=0.5, bins=B_BINS),
        ),
    )


MID = Policy(rules={"a": ThresholdRule(0.5)})
MID2 = Policy(rules={"a": ThresholdRule(0.5), "b": ThresholdRule(0.5)})


class TestConfusion:
    def test_acceptance_rate(self):
        st = confusion(one_group().group("a"), ThresholdRule(0.5))
        assert st.acceptance_rate == pytest.approx(0.5, abs=1e-12)

    def test_tpr(self):
        st = confusion(one_group().group("a"), ThresholdRule(0.5))
        assert st.true_positive_rate == pytest.approx(0.45 / 0.55, abs=1e-9)

    def test_fpr(self):
        st = confusion(one_group().group("a"), ThresholdRule(0.5))
        assert st.false_positive_rate == pytest.approx(0.05 / 0.45, abs=1e-9)

    def test_error_rate(self):
        st = confusion(one_group().group("a"), ThresholdRule(0.5))
        assert st.error_rate == pytest.approx(0.15, abs=1e-9)

    def test_fnr_complements_tpr_when_positives_exist(self):
        st = confusion(one_group().group("a"), ThresholdRule(0.5))
        assert st.false_negative_rate == pytest.approx(1 - st.true_positive_rate, abs=1e-12)

    def test_expected_accepts_scaled_by_share(self):
        st = confusion(two_group().group("a"), ThresholdRule(0.5))
        assert st.expected_accepts == pytest.approx(0.25, abs=1e-12)

    def test_zero_conventions_no_positives(self):
        g = GroupProfile(id="z", label="Z", share=1.0,
                         bins=(ScoreBin(0.5, 1.0, 0.0),))
        st = confusion(g, ThresholdRule(0.0))
        assert st.true_positive_rate == 0.0
        assert st.false_negative_rate == 0.0

    def test_zero_conventions_no_accepts(self):
        st = confusion(one_group().group("a"), ThresholdRule(2.0))
        assert st.acceptance_rate == 0.0
        assert st.positive_predictive_value == 0.0

    def test_vector_rule_supported(self):
        st = confusion(one_group().group("a"), VectorRule((0.5, 0.5)))
        assert st.acceptance_rate == pytest.approx(0.5, abs=1e-12)
        assert st.true_positive_rate == pytest.approx(0.5, abs=1e-12)


class TestDisparity:
    def test_dp_equal_acceptance(self):
        assert disparity(MetricId.DEMOGRAPHIC_PARITY, two_group(), MID2) == pytest.approx(0.0, abs=1e-12)

    def test_eo_gap(self):
        # TPR_a = 9/11, TPR_b = 5/6
        expect = 5 / 6 - 9 / 11
        assert disparity(MetricId.EQUAL_OPPORTUNITY, two_group(), MID2) == pytest.approx(expect, abs=1e-9)

    def test_equalized_odds_is_worse_of_the_two_gaps(self):
        sc = two_group()
        eo = disparity(MetricId.EQUAL_OPPORTUNITY, sc, MID2)
        pe = disparity(MetricId.PREDICTIVE_EQUALITY, sc, MID2)
        eodds = disparity(MetricId.EQUALIZED_ODDS, sc, MID2)
        assert eodds == pytest.approx(max(eo, pe), abs=1e-12)

    def test_minmax_is_a_level_not_a_gap(self):
        sc = two_group()
        # worst group error, not a between-group difference
        assert disparity(MetricId.MINMAX_ERROR, sc, MID2) == pytest.approx(0.3, abs=1e-9)

    def test_single_group_pairwise_disparity_is_zero(self):
        assert disparity(MetricId.EQUAL_OPPORTUNITY, one_group(), MID) == 0.0

    def test_conditional_dp_needs_strata(self):
        with pytest.raises(ConfigurationError, match="strata"):
            disparity(MetricId.CONDITIONAL_DEMOGRAPHIC_PARITY, two_group(), MID2)

    def test_conditional_dp_within_strata(self):
        bins_a = (ScoreBin(0.2, 0.5, 0.2, stratum="junior"),
                  ScoreBin(0.8, 0.5, 0.9, stratum="senior"))
        bins_b = (ScoreBin(0.2, 0.5, 0.1, stratum="junior"),
                  ScoreBin(0.8, 0.5, 0.5, stratum="senior"))
        sc = Scenario(
            id="strat", context_class="general",
            utility_params=UtilityParams(1.0, 1.0), welfare_params=WelfareParams(),
            groups=(GroupProfile(id="a", label="A", share=0.5, bins=bins_a),
                    GroupProfile(id="b", label="B", share=0.5, bins=bins_b)),
        )
        # same threshold accepts the senior stratum fully in both groups
        assert disparity(MetricId.CONDITIONAL_DEMOGRAPHIC_PARITY, sc, MID2) == pytest.approx(0.0, abs=1e-12)
        # accepting only a's seniors opens a within-stratum gap of 1
        lop = Policy(rules={"a": ThresholdRule(0.5), "b": ThresholdRule(2.0)})
        assert disparity(MetricId.CONDITIONAL_DEMOGRAPHIC_PARITY, sc, lop) == pytest.approx(1.0, abs=1e-12)


class TestUtilityAccuracy:
    def test_utility_frozen(self):
        assert utility(one_group(), MID) == pytest.approx(0.35, abs=1e-9)

    def test_accuracy_frozen(self):
        assert accuracy(one_group(), MID) == pytest.approx(0.85, abs=1e-9)

    def test_accuracy_is_one_minus_weighted_error(self):
        sc = two_group()
        errs = [confusion(g, MID2.rule_for(g.id)).error_rate for g in sc.groups]
        expect = 1 - sum(g.share * e for g, e in zip(sc.groups, errs))
        assert accuracy(sc, MID2) == pytest.approx(expect, abs=1e-12)


class TestFairnessReport:
    def test_every_catalog_metric_present(self):
        rep = fairness_report(two_group(), MID2)
        assert set(rep.disparities) == set(METRIC_CATALOG)

    def test_unstratified_conditional_dp_maps_to_none(self):
        rep = fairness_report(two_group(), MID2)
        assert rep.disparities[MetricId.CONDITIONAL_DEMOGRAPHIC_PARITY] is None

    def test_per_group_keys(self):
        rep = fairness_report(two_group(), MID2)
        assert set(rep.per_group) == {"a", "b"}

    def test_as_dict_round_numbers(self):
        doc = fairness_report(two_group(), MID2).as_dict()
        assert doc["disparities"]["demographic_parity"] == pytest.approx(0.0, abs=1e-12)
        assert isinstance(doc["utilityCents"], int)

    def test_policy_must_cover_all_groups(self):
        with pytest.raises(Exception):
            fairness_report(two_group(), MID)  # missing a rule for b
