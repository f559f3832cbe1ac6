"""Config loading: strict schema, inheritance, round-trips."""

import pytest

from edgebench.config import (
    MissingProfile,
    ParseError,
    ScenarioConfig,
    UnknownKey,
    list_fixtures,
    load_config,
    load_fixture,
    load_rate_card,
    load_usage,
    parse_distribution,
)
from edgebench.core import constant, uniform

MINIMAL_EDGE = """
pipeline: edge
platform_profile: test
seed: 1
workload:
  kind: custom
  items: 3
hub:
  mode: immediate
"""


def write_config(tmp_path, text, name="scenario.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestFixtures:
    def test_shipped_fixture_loads(self):
        config = load_fixture("scenarios/greengrass-image")
        assert config.platform_profile == "greengrass"
        assert config.pipeline == "edge"
        assert config.workload.items == 500
        assert config.hub.mode == "immediate"

    def test_all_shipped_fixtures_load(self):
        names = list_fixtures("scenarios")
        assert len(names) >= 12
        for name in names:
            load_fixture(name)

    def test_missing_fixture(self):
        with pytest.raises(MissingProfile):
            load_fixture("scenarios/no-such-thing")


class TestStrictSchema:
    def test_typo_is_named(self, tmp_path):
        path = write_config(tmp_path, MINIMAL_EDGE + "\nlink:\n  windw_s: 30\n")
        with pytest.raises(UnknownKey, match="windw_s"):
            load_config(path)

    def test_top_level_typo(self, tmp_path):
        path = write_config(tmp_path, MINIMAL_EDGE + "\npipelin: edge\n")
        with pytest.raises(UnknownKey, match="pipelin"):
            load_config(path)

    def test_platform_faithful_window_minimum(self, tmp_path):
        path = write_config(tmp_path, """
pipeline: edge
platform_profile: test
seed: 1
workload: {kind: custom, items: 1}
hub:
  mode: batched
  window_s: 30
  platform_faithful: true
""")
        with pytest.raises(ParseError, match="60"):
            load_config(path)

    def test_seed_required_in_virtual_mode(self, tmp_path):
        path = write_config(tmp_path, """
pipeline: edge
platform_profile: test
workload: {kind: custom, items: 1}
hub: {mode: immediate}
""")
        with pytest.raises(ParseError, match="seed"):
            load_config(path)

    def test_pipeline_required(self, tmp_path):
        path = write_config(tmp_path, "seed: 1\nworkload: {kind: custom, items: 1}\n")
        with pytest.raises(ParseError, match="pipeline"):
            load_config(path)

    def test_edge_needs_hub(self, tmp_path):
        path = write_config(tmp_path, """
pipeline: edge
seed: 1
workload: {kind: custom, items: 1}
""")
        with pytest.raises(ParseError, match="hub"):
            load_config(path)

    def test_cloud_needs_function(self, tmp_path):
        path = write_config(tmp_path, """
pipeline: cloud
seed: 1
workload: {kind: custom, items: 1}
""")
        with pytest.raises(ParseError, match="cloud_function"):
            load_config(path)

    def test_items_required(self, tmp_path):
        path = write_config(tmp_path, """
pipeline: edge
seed: 1
workload: {kind: custom}
hub: {mode: immediate}
""")
        with pytest.raises(ParseError, match="items"):
            load_config(path)

    def test_yaml_error_reported(self, tmp_path):
        path = write_config(tmp_path, "pipeline: [unclosed\n")
        with pytest.raises(ParseError):
            load_config(path)


class TestDistributionsInConfig:
    def test_shorthand_number(self):
        assert parse_distribution(5, "x") == constant(5)

    def test_mapping_forms(self):
        assert parse_distribution({"constant": 7}, "x") == constant(7)
        assert parse_distribution({"uniform": [1, 3]}, "x") == uniform(1, 3)

    def test_unknown_kind(self):
        with pytest.raises(UnknownKey, match="pareto"):
            parse_distribution({"pareto": [1, 2]}, "x")

    def test_bad_params(self):
        with pytest.raises(ParseError):
            parse_distribution({"uniform": [1]}, "x")

    def test_garbage(self):
        with pytest.raises(ParseError):
            parse_distribution("fast", "x")


class TestInheritance:
    def test_relative_extends(self, tmp_path):
        write_config(tmp_path, MINIMAL_EDGE, name="base.yaml")
        child = write_config(tmp_path, """
extends: base
seed: 99
workload:
  items: 7
""", name="child.yaml")
        config = load_config(child)
        assert config.seed == 99
        assert config.workload.items == 7  # overridden
        assert config.workload.kind == "custom"  # inherited

    def test_fixture_extends(self, tmp_path):
        child = write_config(tmp_path, """
extends: scenarios/greengrass-audio
seed: 123
""")
        config = load_config(child)
        assert config.seed == 123
        assert config.workload.compute_ms == constant(4770)

    def test_missing_parent(self, tmp_path):
        child = write_config(tmp_path, "extends: nowhere/nothing\npipeline: edge\n")
        with pytest.raises(MissingProfile):
            load_config(child)

    def test_cycle_detected(self, tmp_path):
        write_config(tmp_path, "extends: b\n", name="a.yaml")
        write_config(tmp_path, "extends: a\n", name="b.yaml")
        with pytest.raises(ParseError, match="cycle"):
            load_config(tmp_path / "a.yaml")


class TestRoundTrip:
    @pytest.mark.parametrize("name", [
        "scenarios/greengrass-audio",
        "scenarios/azureedge-scalar",
        "scenarios/aws-cloud-image",
        "scenarios/acceptance-10k",
    ])
    def test_config_dict_round_trip(self, name):
        config = load_fixture(name)
        assert ScenarioConfig.from_dict(config.to_dict()) == config


class TestRateCardsAndUsage:
    def test_rate_card_loads(self):
        from decimal import Decimal

        card = load_rate_card("us-east-2018")
        assert card.storage_usd_per_gb_month == Decimal("0.023")

    def test_usage_loads(self):
        usage = load_usage("traffic-camera")
        assert usage.messages_per_month == 259200

    def test_unknown_rate_card_key(self, tmp_path):
        path = tmp_path / "card.yaml"
        path.write_text("storage_usd_per_gb_monht: 1\n")
        with pytest.raises(UnknownKey):
            load_rate_card(path)

    def test_unknown_usage_key(self, tmp_path):
        path = tmp_path / "usage.yaml"
        path.write_text("msgs: 5\n")
        with pytest.raises(UnknownKey):
            load_usage(path)
