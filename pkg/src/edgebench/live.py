"""Live-mode runner: wall clock, real threads, spin busy-work for compute.

One device worker and one cloud-side worker, joined before reporting.
Compute time is burned with a deadline spin loop (approximate, a few
percent per item); link delays are modeled, not transmitted. Resource
usage is sampled from the real process at 1 s cadence, so live reports
carry measured CPU/RSS instead of replayed profiles. Live runs are
excluded from the exact-determinism guarantees of virtual mode.
"""

from __future__ import annotations

import heapq
import threading
import time
from pathlib import Path

from .config import ScenarioConfig
from .core import Message, SeededRng, TimestampRecord, to_ms
from .hub import Hub
from .metrics import aggregate, finalize_row
from .network import DROPPED, ByteLedger, Link, ledger_report
from .runner import CLOUD_FUNCTION_SOURCE, DEVICE, RunResult
from .storage import BlobStore
from .workloads import scalar_batch_body, synthesize_body


class _WallClock:
    def __init__(self):
        self._base = time.monotonic_ns()

    @property
    def now(self) -> int:
        return (time.monotonic_ns() - self._base) // 1_000_000

    def edge_stamp(self, true_time_ms: int, skew: int) -> int:
        return true_time_ms + skew

    def sleep_until(self, at_ms: int) -> None:
        delta = at_ms - self.now
        if delta > 0:
            time.sleep(delta / 1000)


def _busy_ms(clock: _WallClock, duration_ms: int) -> int:
    """Burn CPU until the deadline; returns actual elapsed ms."""
    start = clock.now
    deadline = start + duration_ms
    acc = 0
    while clock.now < deadline:
        acc += 1  # keep the core busy rather than sleeping
    return clock.now - start


class _WallLoop:
    """Due-time callback queue processed by the cloud-side worker."""

    def __init__(self, clock: _WallClock):
        self.clock = clock
        self._heap: list = []
        self._cond = threading.Condition()
        self._seq = 0
        self.producer_done = threading.Event()

    def schedule(self, at_ms: int, fn, priority: int = 0) -> None:
        with self._cond:
            heapq.heappush(self._heap, (at_ms, priority, self._seq, fn))
            self._seq += 1
            self._cond.notify()

    def drain(self) -> None:
        while True:
            with self._cond:
                if not self._heap:
                    if self.producer_done.is_set():
                        return
                    self._cond.wait(0.02)
                    continue
                due = self._heap[0][0]
                now = self.clock.now
                if due > now:
                    self._cond.wait(min((due - now) / 1000, 0.05))
                    continue
                _, _, _, fn = heapq.heappop(self._heap)
            fn()


class _ResourceSampler(threading.Thread):
    def __init__(self):
        super().__init__(daemon=True)
        self.stop = threading.Event()
        self.cpu: list[float] = []
        self.ram: list[float] = []
        try:
            import psutil

            self._proc = psutil.Process()
            self._proc.cpu_percent(None)  # prime the counter
        except ImportError:
            self._proc = None

    def run(self):
        if self._proc is None:
            return
        while not self.stop.wait(1.0):
            self.cpu.append(self._proc.cpu_percent(None))
            self.ram.append(self._proc.memory_info().rss / (1024 * 1024))

    def summary(self) -> dict | None:
        if self._proc is None or not self.cpu:
            return None
        return {
            "mode": "measured",
            "cpu_pct_mean": sum(self.cpu) / len(self.cpu),
            "ram_mb_mean": sum(self.ram) / len(self.ram),
            "samples": len(self.cpu),
        }


def run_live(config: ScenarioConfig, persist_blobs: str | Path | None = None) -> RunResult:
    """Execute one scenario against the wall clock."""
    clock = _WallClock()
    loop = _WallLoop(clock)
    root = SeededRng(config.seed if config.seed is not None else time.time_ns() & (2**63 - 1))
    ledger = ByteLedger()
    link = Link(config.link, ledger, root.substream("link"))
    store = BlobStore(envelope_bytes=config.blob_envelope_bytes, persist_dir=persist_blobs)
    records: dict[int, TimestampRecord] = {}
    payloads: dict[int, int] = {}
    dropped: set[int] = set()
    skew = config.skew_edge_ms

    sampler = _ResourceSampler()
    sampler.start()

    if config.pipeline == "edge":
        hub = _attach_hub(config, loop, root, store, records)
        target = _edge_device
        args = (config, clock, loop, root, link, hub, records, payloads, dropped, skew)
    else:
        hub = None
        target = _cloud_device
        args = (config, clock, loop, root, link, store, records, payloads, skew)

    failures: list[BaseException] = []

    def guarded_device():
        try:
            target(*args)
        except BaseException as exc:  # unblock drain() instead of hanging
            failures.append(exc)
        finally:
            loop.producer_done.set()

    device = threading.Thread(target=guarded_device)
    device.start()
    loop.drain()
    device.join()
    if hub is not None and hub.flush_open(clock.now):
        loop.drain()  # chunk-only routes: write the tail batch
    sampler.stop.set()
    sampler.join(timeout=2)
    if failures:
        raise failures[0]

    duration_ms = clock.now
    rows = [
        finalize_row(ts, payloads[mid], mid)
        for mid, ts in sorted(records.items())
        if mid not in dropped and ts.complete()
    ]
    report = aggregate(
        rows,
        label=config.label,
        pipeline=config.pipeline,
        seed=config.seed if config.seed is not None else 0,
        config=config.to_dict(),
        ledger=ledger_report(ledger),
        resources=sampler.summary(),
        blob_count=len(store),
        dropped_count=len(dropped),
        duration_ms=duration_ms,
    )
    return RunResult(report=report, rows=rows, store=store, records=records)


def _attach_hub(config, loop, root, store, records) -> Hub:
    def on_blob(messages, created_at):
        t2_by_id = {m.id: records[m.id].t2 for m in messages}
        name = store.next_name(config.route, messages)
        store.create_blob(name, messages, created_at, t2_by_id)
        for m in messages:
            records[m.id].t3 = created_at

    return Hub(config.hub, loop, root.substream("hub"), on_blob)


def _edge_device(config, clock, loop, root, link, hub, records, payloads, dropped, skew):
    spec = config.workload
    rng = root.substream("workload")
    clock.sleep_until(round(spec.warmup_delay_s * 1000))
    for idx in range(spec.items):
        target_c = spec.compute_ms.sample_ms(rng)
        if spec.item_hook is not None:
            start = clock.now
            body = spec.item_hook(idx)
            c_edge = clock.now - start
            payload = len(body.encode("utf-8"))
        else:
            c_edge = _busy_ms(clock, target_c)
            if spec.kind == "scalar":
                body = scalar_batch_body(spec.scalar_freq_hz, spec.scalar_interval_s, rng)
                payload = len(body.encode("utf-8"))
            else:
                payload = spec.result_payload_bytes.sample_int(rng)
                body = synthesize_body(DEVICE, idx, payload)
        msg = Message(id=idx, source=DEVICE, payload_bytes=payload, overhead_bytes=0, body=body)
        send_time = clock.now
        msg.stamp_t1(send_time + skew)
        records[idx] = TimestampRecord(t1=msg.t1, c_edge=c_edge)
        payloads[idx] = payload
        arrival = link.deliver(DEVICE, payload, send_time)
        if arrival is DROPPED:
            dropped.add(idx)
        else:
            loop.schedule(arrival, _ingest_fn(hub, records, msg), priority=0)
        if idx + 1 < spec.items:
            clock.sleep_until(send_time + spec.gap_ms(rng))


def _ingest_fn(hub, records, msg):
    def ingest():
        arrival = hub.loop.clock.now
        records[msg.id].t2 = arrival
        hub.ingest(msg, arrival)

    return ingest


def _cloud_device(config, clock, loop, root, link, store, records, payloads, skew):
    spec = config.workload
    profile = config.cloud_function
    wl_rng = root.substream("workload")
    cloud_rng = root.substream("cloud")
    clock.sleep_until(round(spec.warmup_delay_s * 1000))
    for idx in range(spec.items):
        input_bytes = spec.input_bytes_per_item.sample_int(wl_rng)
        result_bytes = spec.result_payload_bytes.sample_int(wl_rng)
        upload_start = clock.now
        records[idx] = TimestampRecord(t1=upload_start + skew, c_edge=0)
        payloads[idx] = result_bytes
        upload_ms = config.link.propagation_ms.sample_ms(cloud_rng)
        upload_ms += config.link.serialization_ms(
            input_bytes + config.link.per_message_overhead_bytes
        )
        clock.sleep_until(upload_start + upload_ms)
        link.ledger.record(DEVICE, input_bytes, config.link.per_message_overhead_bytes)
        records[idx].t2 = clock.now
        fn_ms = (profile.trigger_overhead_ms.sample_ms(cloud_rng)
                 + profile.exec_ms.sample_ms(cloud_rng)
                 + profile.result_write_ms.sample_ms(cloud_rng))
        loop.schedule(clock.now, _cloud_fn(config, clock, link, store, records, idx,
                                           result_bytes, fn_ms), priority=0)
        if idx + 1 < spec.items:
            gap_ms = to_ms(profile.inter_upload_gap_s.sample(cloud_rng) * 1000)
            clock.sleep_until(clock.now + gap_ms)


def _cloud_fn(config, clock, link, store, records, idx, result_bytes, fn_ms):
    def invoke():
        clock.sleep_until(clock.now + fn_ms)  # one in-flight invocation at a time
        link.ledger.record(CLOUD_FUNCTION_SOURCE, result_bytes, 0)
        msg = Message(id=idx, source=DEVICE, payload_bytes=result_bytes, overhead_bytes=0,
                      body=synthesize_body(DEVICE, idx, result_bytes))
        msg.stamp_t1(records[idx].t1)
        name = store.next_name(config.route, [msg])
        store.create_blob(name, [msg], clock.now, {idx: records[idx].t2})
        records[idx].t3 = clock.now

    return invoke
