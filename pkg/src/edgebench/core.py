"""Shared domain types: virtual/wall clock, seeded RNG, distributions, messages.

All durations and timestamps are integer milliseconds. Sub-millisecond
quantities are rounded half-to-even before entering the event queue.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

import numpy as np

MS_PER_S = 1000


class SimulationError(Exception):
    """Base class for simulator errors."""


class TimeRegression(SimulationError):
    """Raised when the virtual clock is asked to move backwards."""


class InvalidDistribution(SimulationError, ValueError):
    """Raised for malformed distribution parameters."""


def to_ms(value: float) -> int:
    """Round a millisecond quantity half-to-even and clamp at zero."""
    return max(0, round(value))


class Clock:
    """Pipeline clock, virtual or wall.

    In virtual mode time advances only through :meth:`advance` and never
    decreases. ``skew_edge_ms`` models imperfect clock sync: it offsets
    timestamps written by edge-side components (T1) and nothing else, so
    event ordering and byte accounting are skew-invariant.
    """

    def __init__(self, mode: str = "virtual", skew_edge_ms: int = 0):
        if mode not in ("virtual", "wall"):
            raise ValueError(f"unknown clock mode: {mode!r}")
        self.mode = mode
        self.skew_edge_ms = int(skew_edge_ms)
        self._now = 0
        self._wall_base_ns = time.monotonic_ns()

    @property
    def now(self) -> int:
        if self.mode == "wall":
            return (time.monotonic_ns() - self._wall_base_ns) // 1_000_000
        return self._now

    def advance(self, event_time: int) -> None:
        """Move virtual time forward to ``event_time``."""
        if self.mode != "virtual":
            raise SimulationError("advance() is only valid in virtual mode")
        if event_time < self._now:
            raise TimeRegression(
                f"event at {event_time} ms is before current time {self._now} ms"
            )
        self._now = event_time

    def edge_stamp(self, true_time_ms: int) -> int:
        """Timestamp as written by an edge device (true instant plus skew)."""
        return true_time_ms + self.skew_edge_ms


class SeededRng:
    """Deterministic random source (PCG64 behind numpy's Generator).

    Identical seeds yield identical draw sequences across runs and
    platforms. ``substream(name)`` derives an independent child stream
    from the root seed and the component name, so adding a component
    never perturbs the draws of existing ones. The splitting rule is:
    child entropy = (root_seed, utf-8 bytes of the name).
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = self._make_generator((self._unsigned(),))

    def _unsigned(self) -> int:
        return self.seed & (2**64 - 1)  # SeedSequence wants non-negative entropy

    @staticmethod
    def _make_generator(entropy: tuple) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))

    def substream(self, name: str) -> "SeededRng":
        child = SeededRng.__new__(SeededRng)
        child.seed = self.seed
        child._gen = self._make_generator((self._unsigned(),) + tuple(name.encode("utf-8")))
        return child

    def random(self) -> float:
        return float(self._gen.random())

    def uniform(self, a: float, b: float) -> float:
        return float(self._gen.uniform(a, b))

    def normal(self, mu: float, sigma: float) -> float:
        return float(self._gen.normal(mu, sigma))

    def pick(self, values: list):
        return values[int(self._gen.integers(0, len(values)))]


@dataclass(frozen=True)
class Distribution:
    """A one-dimensional sampling distribution.

    Kinds: ``constant(c)``, ``uniform(a, b)``, ``normal(mu, sigma)``
    (clamped at zero), ``empirical(values)``.
    """

    kind: str
    params: tuple

    def sample(self, rng: SeededRng) -> float:
        if self.kind == "constant":
            return self.params[0]
        if self.kind == "uniform":
            return rng.uniform(self.params[0], self.params[1])
        if self.kind == "normal":
            return max(0.0, rng.normal(self.params[0], self.params[1]))
        if self.kind == "empirical":
            return rng.pick(list(self.params[0]))
        raise InvalidDistribution(f"unknown distribution kind: {self.kind!r}")

    def sample_int(self, rng: SeededRng) -> int:
        """Integer sample, rounded half-to-even and clamped at zero."""
        return to_ms(self.sample(rng))

    # millisecond draws share the integer rounding rule
    sample_ms = sample_int

    def mean(self) -> float:
        """Expected value (normal ignores the zero clamp)."""
        if self.kind == "constant":
            return float(self.params[0])
        if self.kind == "uniform":
            return (self.params[0] + self.params[1]) / 2.0
        if self.kind == "normal":
            return float(self.params[0])
        if self.kind == "empirical":
            values = list(self.params[0])
            return sum(values) / len(values)
        raise InvalidDistribution(f"unknown distribution kind: {self.kind!r}")

    def to_spec(self):
        if self.kind == "constant":
            return {"constant": self.params[0]}
        if self.kind == "empirical":
            return {"empirical": list(self.params[0])}
        return {self.kind: list(self.params)}


def constant(c: float) -> Distribution:
    return Distribution("constant", (c,))


def uniform(a: float, b: float) -> Distribution:
    if a > b:
        raise InvalidDistribution(f"uniform bounds out of order: a={a} > b={b}")
    return Distribution("uniform", (a, b))


def normal(mu: float, sigma: float) -> Distribution:
    if sigma < 0:
        raise InvalidDistribution(f"normal sigma must be >= 0, got {sigma}")
    return Distribution("normal", (mu, sigma))


def empirical(values) -> Distribution:
    values = tuple(values)
    if not values:
        raise InvalidDistribution("empirical distribution needs at least one value")
    return Distribution("empirical", (values,))


@dataclass
class Message:
    """One edge-to-cloud result message.

    ``t1`` is stamped exactly once, before network delivery, with the
    edge clock (skew included). ``payload_bytes`` excludes framing;
    framing lives in the link's per-message overhead.
    """

    id: int
    source: str
    payload_bytes: int
    overhead_bytes: int
    body: str
    t1: int | None = None

    def __post_init__(self):
        if self.payload_bytes < 0 or self.overhead_bytes < 0:
            raise ValueError("byte counts must be non-negative")

    def stamp_t1(self, t1: int) -> None:
        if self.t1 is not None:
            raise SimulationError(f"message {self.id}: t1 already set")
        self.t1 = t1


@dataclass
class TimestampRecord:
    """The three pipeline timestamps plus edge compute time for one message.

    t1: edge send, t2: hub enqueue, t3: blob creation (all ms).
    """

    t1: int | None = None
    t2: int | None = None
    t3: int | None = None
    c_edge: int = 0

    def complete(self) -> bool:
        return self.t1 is not None and self.t2 is not None and self.t3 is not None


@dataclass
class EventLoop:
    """Minimal discrete-event loop over a virtual clock.

    Events at equal timestamps run in (priority, insertion) order;
    arrivals are given a lower priority number than batch flushes so a
    message landing exactly on a window boundary joins the closing batch.
    """

    clock: Clock
    _heap: list = field(default_factory=list)
    _seq: int = 0

    def schedule(self, at_ms: int, fn, priority: int = 0) -> None:
        if at_ms < self.clock.now:
            raise TimeRegression(f"cannot schedule event at {at_ms} ms in the past")
        heapq.heappush(self._heap, (at_ms, priority, self._seq, fn))
        self._seq += 1

    def run(self) -> int:
        """Process events until the queue drains; returns final time."""
        while self._heap:
            at_ms, _prio, _seq, fn = heapq.heappop(self._heap)
            self.clock.advance(at_ms)
            fn()
        return self.clock.now
