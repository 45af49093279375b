"""Policy grids: enumeration, sizes, caps, spec parsing."""

import pytest

from fairnav import (
    ExplicitGrid,
    GridCapError,
    Policy,
    TauGrid,
    ThresholdGrid,
    ThresholdRule,
    enumerate_policies,
    parse_grid,
)
from fairnav.fixtures import fixture
from fairnav.grids import GridSpecError


class TestThresholdGrid:
    def test_size_counts_scores_plus_reject_all(self):
        sc = fixture("loan")  # 4 bins per group -> 5 candidates each
        assert ThresholdGrid().size(sc) == 25

    def test_policies_cover_accept_all_and_reject_all(self):
        sc = fixture("imposs-base")
        encs = {p.encode() for p in enumerate_policies(sc, ThresholdGrid())}
        assert "a:>=0.2|b:>=0.2" in encs          # accept everyone
        assert "a:>=1.8|b:>=1.8" in encs          # sentinel clears the top score

    def test_fixed_threshold_list(self):
        sc = fixture("loan")
        grid = ThresholdGrid(thresholds=(0.4, 0.6))
        pols = enumerate_policies(sc, grid)
        assert len(pols) == 4
        assert all(isinstance(p.rule_for("a"), ThresholdRule) for p in pols)

    def test_deterministic_order(self):
        sc = fixture("loan")
        a = [p.encode() for p in enumerate_policies(sc, ThresholdGrid())]
        b = [p.encode() for p in enumerate_policies(sc, ThresholdGrid())]
        assert a == b


class TestTauGrid:
    def test_step_must_divide_one(self):
        with pytest.raises(GridSpecError):
            TauGrid(step=0.3)

    def test_size_is_levels_to_the_bins(self):
        sc = fixture("imposs-base")  # 2 groups x 2 bins
        assert TauGrid(step=0.5).size(sc) == 3 ** 4

    def test_cap_enforced_with_advice(self):
        sc = fixture("loan")  # 8 bins total; 11^8 blows the cap
        with pytest.raises(GridCapError, match="coarser"):
            enumerate_policies(sc, TauGrid(step=0.1))


class TestExplicitGrid:
    def test_named_policies_resolve(self):
        sc = fixture("healthcare-two-policy")
        pols = enumerate_policies(sc, ExplicitGrid(names=("balanced", "highGap")))
        assert len(pols) == 2

    def test_unknown_name_rejected(self):
        sc = fixture("healthcare-two-policy")
        with pytest.raises(GridSpecError, match="nope"):
            enumerate_policies(sc, ExplicitGrid(names=("nope",)))

    def test_default_uses_all_named_policies(self):
        sc = fixture("healthcare-two-policy")
        pols = enumerate_policies(sc, ExplicitGrid())
        assert len(pols) == 2


class TestParseGrid:
    def test_none_means_threshold(self):
        assert isinstance(parse_grid(None), ThresholdGrid)

    def test_threshold_doc(self):
        g = parse_grid({"kind": "threshold", "thresholds": [0.4, 0.6]})
        assert isinstance(g, ThresholdGrid)
        assert g.thresholds == (0.4, 0.6)

    def test_tau_doc(self):
        g = parse_grid({"kind": "tau", "step": 0.5})
        assert isinstance(g, TauGrid)

    def test_named_doc(self):
        g = parse_grid({"kind": "named", "names": ["balanced"]})
        assert isinstance(g, ExplicitGrid)

    def test_unknown_kind_rejected(self):
        with pytest.raises(GridSpecError):
            parse_grid({"kind": "mystery"})

    def test_roundtrip_through_as_dict(self):
        for doc in [{"kind": "threshold"}, {"kind": "tau", "step": 0.25},
                    {"kind": "named", "names": ["balanced"]}]:
            assert parse_grid(parse_grid(doc).as_dict()).as_dict() == parse_grid(doc).as_dict()
