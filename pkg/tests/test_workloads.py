"""Workload driver behavior: scalar batching, per-item runs, totals."""

import json

import pytest

from edgebench.core import Clock, SeededRng, constant, uniform
from edgebench.workloads import (
    ExhaustedWorkload,
    InvalidRate,
    WorkloadSpec,
    generate_scalar_batch,
    run_item,
    workload_totals,
)


def make_clock(skew=0):
    return Clock("virtual", skew_edge_ms=skew)


class TestScalarBatch:
    def test_ten_values_at_ten_hz(self):
        msg = generate_scalar_batch(10, 1, SeededRng(0))
        assert len(json.loads(msg.body)) == 10

    def test_subunit_rate_gives_empty_batch(self):
        msg = generate_scalar_batch(0.5, 1, SeededRng(0))
        assert json.loads(msg.body) == []
        assert msg.payload_bytes == len(b"[]")

    def test_payload_matches_serialized_length(self):
        msg = generate_scalar_batch(12, 1, SeededRng(1))
        assert msg.payload_bytes == len(msg.body.encode("utf-8"))

    def test_calibrated_payload_near_234_bytes(self):
        rng = SeededRng(42)
        sizes = [generate_scalar_batch(12, 1, rng).payload_bytes for _ in range(500)]
        assert abs(sum(sizes) / len(sizes) - 234) < 12

    def test_invalid_rate(self):
        with pytest.raises(InvalidRate):
            generate_scalar_batch(0, 1, SeededRng(0))
        with pytest.raises(InvalidRate):
            generate_scalar_batch(1, -2, SeededRng(0))


class TestRunItem:
    def audio_spec(self, compute):
        return WorkloadSpec(kind="audio", items=104, compute_ms=constant(compute),
                            result_payload_bytes=constant(162))

    def test_audio_profile_compute(self):
        record, _ = run_item(self.audio_spec(4770), 0, make_clock(), SeededRng(0))
        assert record.c_edge_ms == 4770

    def test_container_platform_compute(self):
        record, _ = run_item(self.audio_spec(6000), 0, make_clock(), SeededRng(0))
        assert record.c_edge_ms == 6000

    def test_image_payload(self):
        spec = WorkloadSpec(kind="image", items=500, result_payload_bytes=constant(752))
        record, msg = run_item(spec, 0, make_clock(), SeededRng(0))
        assert record.payload_bytes == 752
        assert msg.payload_bytes == 752
        assert len(msg.body.encode()) == 752

    def test_t1_is_now_plus_compute_plus_skew(self):
        clock = make_clock(skew=25)
        clock.advance(1000)
        spec = self.audio_spec(4770)
        _, msg = run_item(spec, 0, clock, SeededRng(0))
        assert msg.t1 == 1000 + 4770 + 25

    def test_exhausted(self):
        spec = self.audio_spec(10)
        with pytest.raises(ExhaustedWorkload):
            run_item(spec, 104, make_clock(), SeededRng(0))

    def test_sequential_contract(self):
        # message k's t1 >= message (k-1)'s t1 + c_edge(k): no overlap
        spec = WorkloadSpec(kind="custom", items=50, compute_ms=uniform(0, 100),
                            inter_item_gap_ms=uniform(0, 30),
                            result_payload_bytes=constant(10))
        clock = make_clock()
        rng = SeededRng(5)
        prev_t1 = None
        now = 0
        for idx in range(spec.items):
            clock.advance(now)
            record, msg = run_item(spec, idx, clock, rng)
            if prev_t1 is not None:
                assert msg.t1 >= prev_t1 + record.c_edge_ms
            prev_t1 = msg.t1
            now = now + record.c_edge_ms + spec.gap_ms(rng)

    def test_scalar_cadence_follows_interval(self):
        spec = WorkloadSpec(kind="scalar", items=5, scalar_freq_hz=4, scalar_interval_s=2.5)
        assert spec.gap_ms(SeededRng(0)) == 2500


class TestWorkloadTotals:
    def test_audio_input_total(self):
        spec = WorkloadSpec(kind="audio", items=104,
                            input_bytes_per_item=constant(84904),
                            result_payload_bytes=constant(162))
        total_input, total_payload = workload_totals(spec)
        assert total_input == 104 * 84904  # 8.83 MB
        assert abs(total_input - 8.83e6) < 0.01e6
        assert total_payload == 104 * 162

    def test_image_payload_total(self):
        spec = WorkloadSpec(kind="image", items=500, result_payload_bytes=constant(752))
        _, total_payload = workload_totals(spec)
        assert total_payload == 376000  # 0.38 MB
        assert abs(total_payload - 0.38e6) < 0.01e6

    def test_zero_items(self):
        spec = WorkloadSpec(kind="custom", items=0)
        assert workload_totals(spec) == (0.0, 0.0)

    def test_invariants(self):
        with pytest.raises(ValueError):
            WorkloadSpec(kind="custom", items=-1)
        with pytest.raises(InvalidRate):
            WorkloadSpec(kind="scalar", items=1, scalar_freq_hz=0)
        with pytest.raises(ValueError):
            WorkloadSpec(kind="custom", items=1, warmup_delay_s=-1)
