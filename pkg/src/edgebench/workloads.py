"""Benchmark workload drivers.

The audio/image/scalar pipelines are driven by calibrated compute-time
and payload-size profiles instead of real decoders or classifiers; an
optional per-item hook lets live mode plug in real work.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .core import Distribution, Message, SeededRng, SimulationError, constant

WORKLOAD_KINDS = ("scalar", "image", "audio", "custom")


class InvalidRate(SimulationError, ValueError):
    """Raised for a non-positive scalar emission rate or interval."""


class ExhaustedWorkload(SimulationError):
    """Raised when an item index is past the end of the workload."""


@dataclass
class WorkloadSpec:
    """A benchmark driver definition.

    ``items`` is the number of messages a run emits (for scalar, the
    number of batch messages). ``warmup_delay_s`` delays the first item
    so startup network noise is excluded from byte accounting.
    """

    kind: str = "custom"
    items: int = 1
    input_bytes_per_item: Distribution = constant(0)
    compute_ms: Distribution = constant(0)
    result_payload_bytes: Distribution = constant(0)
    inter_item_gap_ms: Distribution = constant(0)
    scalar_freq_hz: float = 1.0
    scalar_interval_s: float = 1.0
    warmup_delay_s: float = 0.0
    item_hook: Callable[[int], str] | None = None

    def __post_init__(self):
        if self.kind not in WORKLOAD_KINDS:
            raise ValueError(f"unknown workload kind: {self.kind!r}")
        if self.items < 0:
            raise ValueError("items must be >= 0")
        if self.warmup_delay_s < 0:
            raise ValueError("warmup_delay_s must be >= 0")
        if self.kind == "scalar":
            if self.scalar_freq_hz <= 0:
                raise InvalidRate(f"scalar_freq_hz must be > 0, got {self.scalar_freq_hz}")
            if self.scalar_interval_s <= 0:
                raise InvalidRate(f"scalar_interval_s must be > 0, got {self.scalar_interval_s}")

    def gap_ms(self, rng: SeededRng) -> int:
        """Gap before the next item; scalar cadence follows its interval."""
        if self.kind == "scalar":
            return round(self.scalar_interval_s * 1000)
        return self.inter_item_gap_ms.sample_ms(rng)


@dataclass
class ComputeRecord:
    """Per-item edge compute outcome, one per emitted message."""

    item_index: int
    c_edge_ms: int
    payload_bytes: int
    input_bytes: int


@dataclass
class ResourceProfile:
    """Device CPU/RAM usage replayed into reports in virtual mode."""

    cpu_pct: Distribution = constant(0)
    ram_mb: Distribution = constant(0)
    platform_ram_delta_mb: float = 0.0
    cores: int = 4

    def sample(self, rng: SeededRng) -> tuple[float, float]:
        cpu = min(max(self.cpu_pct.sample(rng), 0.0), 100.0 * self.cores)
        ram = max(self.ram_mb.sample(rng), 0.0) + self.platform_ram_delta_mb
        return cpu, ram


def scalar_batch_body(freq_hz: float, interval_s: float, rng: SeededRng) -> str:
    """UTF-8 JSON array of floor(freq*interval) sensor readings."""
    if freq_hz <= 0:
        raise InvalidRate(f"freq_hz must be > 0, got {freq_hz}")
    if interval_s <= 0:
        raise InvalidRate(f"interval_s must be > 0, got {interval_s}")
    count = int(freq_hz * interval_s)
    values = [rng.random() for _ in range(count)]
    return json.dumps(values, separators=(",", ":"))


def generate_scalar_batch(
    freq_hz: float,
    interval_s: float,
    rng: SeededRng,
    *,
    source: str = "device-0",
    msg_id: int = 0,
    overhead_bytes: int = 0,
) -> Message:
    """Build one scalar batch message; empty batches are still emitted."""
    body = scalar_batch_body(freq_hz, interval_s, rng)
    return Message(
        id=msg_id,
        source=source,
        payload_bytes=len(body.encode("utf-8")),
        overhead_bytes=overhead_bytes,
        body=body,
    )


def synthesize_body(source: str, msg_id: int, payload_bytes: int) -> str:
    """Deterministic placeholder result text of exactly payload_bytes bytes."""
    stem = f"result {source}/{msg_id} "
    if payload_bytes <= len(stem):
        return stem[:payload_bytes]
    filler = "0123456789abcdef"
    pad = filler * ((payload_bytes - len(stem)) // len(filler) + 1)
    return stem + pad[: payload_bytes - len(stem)]


def run_item(
    spec: WorkloadSpec,
    idx: int,
    clock,
    rng: SeededRng,
    *,
    source: str = "device-0",
) -> tuple[ComputeRecord, Message]:
    """Process one workload item at the current clock time.

    Items run sequentially: the returned message carries
    t1 = clock.now + c_edge + skew, the instant the edge finishes
    computing and stamps the send timestamp.
    """
    if idx >= spec.items:
        raise ExhaustedWorkload(f"item {idx} out of range (items={spec.items})")
    c_edge = spec.compute_ms.sample_ms(rng)
    input_bytes = spec.input_bytes_per_item.sample_int(rng)
    if spec.kind == "scalar":
        body = scalar_batch_body(spec.scalar_freq_hz, spec.scalar_interval_s, rng)
        payload = len(body.encode("utf-8"))
    else:
        payload = spec.result_payload_bytes.sample_int(rng)
        body = synthesize_body(source, idx, payload)
    msg = Message(id=idx, source=source, payload_bytes=payload, overhead_bytes=0, body=body)
    msg.stamp_t1(clock.edge_stamp(clock.now + c_edge))
    record = ComputeRecord(idx, c_edge, payload, input_bytes)
    return record, msg


def workload_totals(spec: WorkloadSpec) -> tuple[float, float]:
    """(total input bytes, total result payload bytes) as expectations.

    Exact for constant distributions; scalar workloads use their
    calibrated result_payload_bytes estimate because serialized batch
    length varies per message.
    """
    if spec.items == 0:
        return (0.0, 0.0)
    total_input = spec.items * spec.input_bytes_per_item.mean()
    total_payload = spec.items * spec.result_payload_bytes.mean()
    return (total_input, total_payload)
