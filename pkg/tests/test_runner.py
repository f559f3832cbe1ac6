"""End-to-end virtual runs: determinism, conservation, fixture calibration."""

import json

import pytest

from edgebench.config import ScenarioConfig, load_fixture
from edgebench.metrics import report_to_json, rows_to_csv
from edgebench.runner import run_scenario, write_artifacts


def run_fixture(name, **overrides):
    config = load_fixture(f"scenarios/{name}")
    for key, value in overrides.items():
        setattr(config, key, value)
    return run_scenario(config)


class TestDeterminism:
    def test_identical_seed_identical_bytes(self):
        a = run_fixture("greengrass-image")
        b = run_fixture("greengrass-image")
        assert rows_to_csv(a.rows) == rows_to_csv(b.rows)
        assert report_to_json(a.report) == report_to_json(b.report)

    def test_scalar_fixture_deterministic(self):
        a = run_fixture("greengrass-scalar")
        b = run_fixture("greengrass-scalar")
        assert rows_to_csv(a.rows) == rows_to_csv(b.rows)

    def test_different_seed_differs(self):
        a = run_fixture("acceptance-10k")
        b = run_fixture("acceptance-10k", seed=4321)
        assert rows_to_csv(a.rows) != rows_to_csv(b.rows)


class TestConservation:
    @pytest.mark.parametrize("name", ["greengrass-audio", "azureedge-audio", "acceptance-10k"])
    def test_every_message_in_exactly_one_blob(self, name):
        result = run_fixture(name)
        emitted = sorted(result.records.keys())
        stored = sorted(result.store.all_message_ids())
        assert stored == emitted

    def test_immediate_mode_blob_count_equals_messages(self):
        result = run_fixture("greengrass-image")
        assert result.report.blob_count == result.report.message_count == 500

    def test_chunk_only_route_flushes_tail_batch(self):
        # without a window, the last partial batch must still reach storage
        doc = {
            "pipeline": "edge",
            "platform_profile": "chunk-only",
            "seed": 3,
            "workload": {"kind": "custom", "items": 5,
                         "result_payload_bytes": {"constant": 100},
                         "inter_item_gap_ms": {"constant": 1000}},
            "link": {"propagation_ms": {"constant": 10}},
            "hub": {"mode": "batched", "chunk_bytes": 300},
        }
        result = run_scenario(ScenarioConfig.from_dict(doc))
        assert sorted(result.store.all_message_ids()) == [0, 1, 2, 3, 4]
        assert result.report.blob_count == 2  # one chunk flush + the tail

    def test_drops_reduce_delivery_but_not_emission(self):
        config = load_fixture("scenarios/greengrass-image")
        doc = config.to_dict()
        doc["link"]["drop_probability"] = 0.2
        config = ScenarioConfig.from_dict(doc)
        result = run_scenario(config)
        assert result.report.dropped_count > 0
        assert result.report.message_count + result.report.dropped_count == 500
        assert len(result.store.all_message_ids()) == result.report.message_count


class TestTimestampOrdering:
    @pytest.mark.parametrize("name", ["greengrass-audio", "azureedge-image",
                                      "aws-cloud-audio", "acceptance-10k"])
    def test_t1_t2_t3_ordered_at_zero_skew(self, name):
        result = run_fixture(name)
        for row in result.rows:
            assert row.t1 <= row.t2 <= row.t3


class TestSkewNeutrality:
    def test_skew_shifts_t1_only(self):
        base = run_fixture("greengrass-audio")
        config = load_fixture("scenarios/greengrass-audio")
        config.skew_edge_ms = 50
        skewed = run_scenario(config)
        for mid in base.records:
            assert skewed.records[mid].t1 == base.records[mid].t1 + 50
            assert skewed.records[mid].t2 == base.records[mid].t2
            assert skewed.records[mid].t3 == base.records[mid].t3
        assert skewed.report.ledger == base.report.ledger
        assert [r.id for r in skewed.rows] == [r.id for r in base.rows]


class TestCalibration:
    @pytest.mark.parametrize("name,e2e_s", [
        ("greengrass-audio", 5.36),
        ("greengrass-image", 1.1),
        ("greengrass-scalar", 0.66),
        ("aws-cloud-audio", 1.79),
        ("aws-cloud-image", 0.87),
        ("aws-cloud-scalar", 0.936),
    ])
    def test_mean_e2e(self, name, e2e_s):
        result = run_fixture(name)
        assert result.report.aggregates["e2e_ms"]["mean"] == pytest.approx(e2e_s * 1000, abs=1)

    @pytest.mark.parametrize("edge,cloud,ratio,tol", [
        ("greengrass-audio", "aws-cloud-audio", 36, 4),
        ("greengrass-image", "aws-cloud-image", 81, 8),
        ("azureedge-image", "azure-cloud-image", 77, 8),
        ("azureedge-audio", "azure-cloud-audio", 36, 4),
    ])
    def test_transmitted_byte_ratios(self, edge, cloud, ratio, tol):
        edge_bytes = run_fixture(edge).report.ledger["total"]["transmitted_bytes"]
        cloud_bytes = run_fixture(cloud).report.ledger["total"]["transmitted_bytes"]
        assert abs(cloud_bytes / edge_bytes - ratio) <= tol

    def test_batched_platform_latency_dominates(self):
        azure = run_fixture("azureedge-audio").report.aggregates["e2e_ms"]["mean"]
        aws = run_fixture("greengrass-audio").report.aggregates["e2e_ms"]["mean"]
        assert azure > aws

    def test_batch_window_60_residence(self):
        result = run_fixture("batch-window-60")
        mean = result.report.aggregates["residence_ms"]["mean"]
        assert abs(mean - 90_000) <= 2_000

    def test_batch_window_90_residence(self):
        result = run_fixture("batch-window-90")
        mean = result.report.aggregates["residence_ms"]["mean"]
        assert abs(mean - (45_000 + 60_000)) <= 2_000

    def test_cloud_decomposition(self):
        result = run_fixture("aws-cloud-audio")
        for row in result.rows:
            assert row.e2e_ms == row.flight_ms + row.residence_ms  # c_edge = 0
            assert row.c_edge_ms == 0

    def test_cloud_uploads_paced(self):
        result = run_fixture("aws-cloud-audio")
        t1s = sorted(r.t1 for r in result.rows)
        gaps = [b - a for a, b in zip(t1s, t1s[1:])]
        assert min(gaps) >= 10_000  # at least the lower pacing bound


class TestReports:
    def test_resources_replayed_and_labeled(self):
        result = run_fixture("greengrass-audio")
        assert result.report.resources["mode"] == "modeled"
        assert result.report.resources["cpu_pct_mean"] == pytest.approx(35)
        assert result.report.resources["ram_mb_mean"] == pytest.approx(145)

    def test_azure_ram_delta_applied(self):
        result = run_fixture("azureedge-audio")
        assert result.report.resources["ram_mb_mean"] == pytest.approx(145 + 42)

    def test_report_embeds_resolved_config(self):
        result = run_fixture("greengrass-audio")
        rebuilt = ScenarioConfig.from_dict(result.report.config)
        assert rebuilt == load_fixture("scenarios/greengrass-audio")

    def test_write_artifacts(self, tmp_path):
        result = run_fixture("greengrass-scalar")
        paths = write_artifacts(result, tmp_path)
        assert paths["csv"].read_bytes().startswith(b"id,c_edge_ms")
        doc = json.loads(paths["json"].read_text())
        assert doc["schema"] == 1
        assert (tmp_path / "charts" / "e2e_ms.svg").exists()

    def test_persist_blobs(self, tmp_path):
        config = load_fixture("scenarios/greengrass-scalar")
        run_scenario(config, persist_blobs=tmp_path)
        files = list((tmp_path / "results").glob("*.json"))
        assert len(files) == 200
        doc = json.loads(files[0].read_text())
        assert set(doc) == {"name", "created_at", "messages"}
        assert set(doc["messages"][0]) == {"id", "t1", "t2", "body"}
