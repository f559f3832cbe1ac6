"""Edge-to-cloud link model: flight time and exact byte accounting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import Distribution, SeededRng, constant

DROPPED = object()  # sentinel returned by deliver() for a lost message


@dataclass(frozen=True)
class LinkModel:
    """Propagation delay plus serialization over bounded bandwidth.

    ``bandwidth_bytes_per_s`` of ``None`` means unlimited (serialization
    term vanishes). ``per_message_overhead_bytes`` is the framing/header
    cost added to every message for both delay and byte accounting.
    """

    propagation_ms: Distribution = constant(0)
    bandwidth_bytes_per_s: float | None = None
    per_message_overhead_bytes: int = 0
    drop_probability: float = 0.0

    def __post_init__(self):
        if self.bandwidth_bytes_per_s is not None and self.bandwidth_bytes_per_s <= 0:
            raise ValueError("bounded bandwidth must be positive")
        if self.per_message_overhead_bytes < 0:
            raise ValueError("per-message overhead must be non-negative")
        if not 0.0 <= self.drop_probability <= 1.0:
            raise ValueError("drop probability must be in [0, 1]")

    def serialization_ms(self, total_bytes: int) -> int:
        """Whole-ms time to push ``total_bytes`` through the link.

        Ceiling keeps the integer clock; the <=1 ms error is far below
        the tens-of-ms flight times being modeled.
        """
        if self.bandwidth_bytes_per_s is None:
            return 0
        return math.ceil(total_bytes * 1000 / self.bandwidth_bytes_per_s)


@dataclass
class SourceTotals:
    payload_bytes: int = 0
    overhead_bytes: int = 0

    @property
    def transmitted_bytes(self) -> int:
        return self.payload_bytes + self.overhead_bytes


@dataclass
class ByteLedger:
    """Per-source running byte totals, updated on every delivery."""

    sources: dict = field(default_factory=dict)

    def record(self, source: str, payload_bytes: int, overhead_bytes: int) -> None:
        totals = self.sources.setdefault(source, SourceTotals())
        totals.payload_bytes += payload_bytes
        totals.overhead_bytes += overhead_bytes

    def total(self) -> SourceTotals:
        grand = SourceTotals()
        for totals in self.sources.values():
            grand.payload_bytes += totals.payload_bytes
            grand.overhead_bytes += totals.overhead_bytes
        return grand


class Link:
    """A LinkModel bound to its ledger and per-source FIFO state."""

    def __init__(self, model: LinkModel, ledger: ByteLedger, rng: SeededRng):
        self.model = model
        self.ledger = ledger
        self._rng = rng
        self._last_arrival: dict[str, int] = {}

    def deliver(self, source: str, payload_bytes: int, send_time: int):
        """Compute the arrival time of a message sent at ``send_time``.

        Returns the arrival timestamp (ms) or DROPPED. The ledger is
        updated only for delivered messages. Delivery is FIFO per
        source: a message never overtakes an earlier one from the same
        device, matching ordered MQTT-style sessions.
        """
        if self.model.drop_probability > 0 and self._rng.random() < self.model.drop_probability:
            return DROPPED
        total = payload_bytes + self.model.per_message_overhead_bytes
        flight = self.model.propagation_ms.sample_ms(self._rng)
        flight += self.model.serialization_ms(total)
        arrival = send_time + flight
        arrival = max(arrival, self._last_arrival.get(source, 0))
        self._last_arrival[source] = arrival
        self.ledger.record(source, payload_bytes, self.model.per_message_overhead_bytes)
        return arrival


def ledger_report(ledger: ByteLedger) -> dict:
    """Per-source and grand byte totals; transmitted = payload + overhead."""
    report = {
        name: {
            "payload_bytes": totals.payload_bytes,
            "overhead_bytes": totals.overhead_bytes,
            "transmitted_bytes": totals.transmitted_bytes,
        }
        for name, totals in sorted(ledger.sources.items())
    }
    grand = ledger.total()
    return {
        "sources": report,
        "total": {
            "payload_bytes": grand.payload_bytes,
            "overhead_bytes": grand.overhead_bytes,
            "transmitted_bytes": grand.transmitted_bytes,
        },
    }
