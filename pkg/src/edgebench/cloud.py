"""Cloud-only pipeline model: upload raw input, trigger a function, write results.

The device uploads each raw item over the link; the upload triggers a
cloud function (lumped trigger/load overhead, then execution) whose
result blob creation stamps T3. Edge compute is zero by definition, so
end-to-end latency degenerates to T3 - T1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Distribution, SeededRng, TimestampRecord, constant
from .network import LinkModel
from .workloads import WorkloadSpec


@dataclass(frozen=True)
class CloudFunctionProfile:
    """Timing profile of the triggered cloud function.

    ``trigger_overhead_ms`` lumps runtime/library load and trigger
    latency (cold start is not separated out). ``inter_upload_gap_s``
    paces uploads so invocations never overlap or reorder.
    """

    trigger_overhead_ms: Distribution = constant(0)
    exec_ms: Distribution = constant(0)
    memory_mb: int = 128
    inter_upload_gap_s: Distribution = constant(0)
    result_write_ms: Distribution = constant(0)

    def __post_init__(self):
        if self.memory_mb <= 0:
            raise ValueError("memory_mb must be positive")


@dataclass
class CloudItemTiming:
    """Virtual-time decomposition of one cloud item; all fields ms."""

    upload_start: int
    upload_ms: int
    trigger_ms: int
    exec_ms: int
    write_ms: int

    @property
    def t2(self) -> int:
        """Upload completion = trigger instant."""
        return self.upload_start + self.upload_ms

    @property
    def t3(self) -> int:
        return self.t2 + self.trigger_ms + self.exec_ms + self.write_ms

    @property
    def e2e_ms(self) -> int:
        return self.t3 - self.upload_start


def time_cloud_item(
    spec: WorkloadSpec,
    profile: CloudFunctionProfile,
    link: LinkModel,
    upload_start: int,
    input_bytes: int,
    rng: SeededRng,
) -> CloudItemTiming:
    """Draw one item's upload/trigger/exec/write decomposition."""
    upload = link.propagation_ms.sample_ms(rng)
    upload += link.serialization_ms(input_bytes + link.per_message_overhead_bytes)
    return CloudItemTiming(
        upload_start=upload_start,
        upload_ms=upload,
        trigger_ms=profile.trigger_overhead_ms.sample_ms(rng),
        exec_ms=profile.exec_ms.sample_ms(rng),
        write_ms=profile.result_write_ms.sample_ms(rng),
    )


def run_cloud_item(
    spec: WorkloadSpec,
    profile: CloudFunctionProfile,
    link: LinkModel,
    clock,
    rng: SeededRng,
) -> TimestampRecord:
    """One cloud item starting at the current clock time.

    t1 is the upload start (edge clock, skew included), t2 the upload
    completion that triggers the function, t3 the result blob creation.
    Edge compute is zero, so e2e degenerates to t3 - t1.
    """
    input_bytes = spec.input_bytes_per_item.sample_int(rng)
    timing = time_cloud_item(spec, profile, link, clock.now, input_bytes, rng)
    return TimestampRecord(
        t1=clock.edge_stamp(timing.upload_start),
        t2=timing.t2,
        t3=timing.t3,
        c_edge=0,
    )


def cloud_bandwidth(spec: WorkloadSpec, link: LinkModel) -> float:
    """Expected transmitted bytes for a cloud run of ``spec`` over ``link``.

    Uploads carry input plus per-message overhead; the function's result
    writes add the result payload. Exact for constant distributions and
    equal to the run ledger total in that case.
    """
    uploads = spec.items * (spec.input_bytes_per_item.mean() + link.per_message_overhead_bytes)
    results = spec.items * spec.result_payload_bytes.mean()
    return uploads + results
