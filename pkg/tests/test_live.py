"""Live-mode smoke tests: wall-clock runs with tiny workloads.

Live timings are approximate by design, so assertions here are
structural (conservation, decomposition bounds), not exact.
"""

import pytest

from edgebench.config import ScenarioConfig
from edgebench.runner import run_scenario


def live_edge_config(items=3, hub=None):
    doc = {
        "pipeline": "edge",
        "platform_profile": "live-test",
        "mode": "live",
        "seed": 11,
        "workload": {
            "kind": "custom",
            "items": items,
            "compute_ms": {"constant": 20},
            "inter_item_gap_ms": {"constant": 10},
            "result_payload_bytes": {"constant": 64},
        },
        "link": {"propagation_ms": {"constant": 5}},
        "hub": hub or {"mode": "immediate", "write_latency_ms": {"constant": 5}},
    }
    return ScenarioConfig.from_dict(doc)


class TestLiveEdge:
    def test_immediate_pipeline_completes(self):
        result = run_scenario(live_edge_config())
        assert result.report.message_count == 3
        assert result.report.blob_count == 3
        assert sorted(result.store.all_message_ids()) == [0, 1, 2]

    def test_compute_time_is_busy_worked(self):
        result = run_scenario(live_edge_config())
        for row in result.rows:
            assert row.c_edge_ms >= 18  # 20 ms target, allow scheduler slop
            assert row.e2e_ms >= row.c_edge_ms

    def test_timestamps_ordered(self):
        result = run_scenario(live_edge_config())
        for row in result.rows:
            assert row.t1 <= row.t2 <= row.t3

    def test_batched_small_window(self):
        hub = {"mode": "batched", "window_s": 0.3, "holdback_s": 0.1}
        result = run_scenario(live_edge_config(items=4, hub=hub))
        assert result.report.message_count == 4
        assert sorted(result.store.all_message_ids()) == [0, 1, 2, 3]
        # every message waited for a boundary plus hold-back
        for row in result.rows:
            assert row.residence_ms >= 90


class TestLiveCloud:
    def test_cloud_pipeline_completes(self):
        doc = {
            "pipeline": "cloud",
            "platform_profile": "live-test",
            "mode": "live",
            "seed": 11,
            "workload": {
                "kind": "custom",
                "items": 2,
                "input_bytes_per_item": {"constant": 1000},
                "result_payload_bytes": {"constant": 32},
            },
            "link": {"propagation_ms": {"constant": 5}},
            "cloud_function": {
                "trigger_overhead_ms": {"constant": 10},
                "exec_ms": {"constant": 25},
                "memory_mb": 256,
                "inter_upload_gap_s": {"constant": 0.05},
            },
        }
        result = run_scenario(ScenarioConfig.from_dict(doc))
        assert result.report.message_count == 2
        assert result.report.blob_count == 2
        for row in result.rows:
            assert row.c_edge_ms == 0
            assert row.residence_ms >= 30  # trigger + exec at least
