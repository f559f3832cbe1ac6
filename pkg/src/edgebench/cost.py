"""Monthly infrastructure cost model for edge vs. cloud pipelines.

Currency arithmetic runs in integer micro-dollars with half-even
rounding; display rounds half-even to 4 decimals. Sizes use binary
units (KB = 1024 B, GB = 2^30 B), which is how the reference subtotals
were computed. Free-tier allowances are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal

KIB = 1024
MIB = 1024 * 1024
GIB = 1024 * 1024 * 1024
MICRO = Decimal(1_000_000)


def _dec(x) -> Decimal:
    return x if isinstance(x, Decimal) else Decimal(str(x))


def _micro(usd: Decimal) -> int:
    """Quantize a dollar amount to integer micro-dollars, half-even."""
    return int((usd * MICRO).quantize(Decimal(1), rounding=ROUND_HALF_EVEN))


def format_usd(micro_usd: int) -> str:
    """Dollar string rounded half-even to 4 decimals."""
    usd = Decimal(micro_usd) / MICRO
    return str(usd.quantize(Decimal("0.0001"), rounding=ROUND_HALF_EVEN))


@dataclass(frozen=True)
class RateCard:
    """Unit prices driving the cost model; all values USD, all >= 0."""

    edge_runtime_usd_per_device_month: Decimal = Decimal(0)
    storage_usd_per_gb_month: Decimal = Decimal(0)
    put_usd_per_1k: Decimal = Decimal(0)
    get_usd_per_1k: Decimal = Decimal(0)
    function_usd_per_gb_s: Decimal = Decimal(0)
    function_usd_per_invocation: Decimal = Decimal(0)

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            value = _dec(getattr(self, name))
            if value < 0:
                raise ValueError(f"{name} must be >= 0")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class UsageScenario:
    """A month of traffic: message volume, sizes, and function usage.

    ``avg_message_kb`` is the edge result message with headers;
    ``avg_input_kb`` the raw input item. Both in KB = 1024 bytes.
    """

    messages_per_month: int = 0
    avg_message_kb: Decimal = Decimal(0)
    avg_input_kb: Decimal = Decimal(0)
    function_exec_ms: Decimal = Decimal(0)
    function_mem_gb: Decimal = Decimal(0)
    devices: int = 1

    def __post_init__(self):
        object.__setattr__(self, "avg_message_kb", _dec(self.avg_message_kb))
        object.__setattr__(self, "avg_input_kb", _dec(self.avg_input_kb))
        object.__setattr__(self, "function_exec_ms", _dec(self.function_exec_ms))
        object.__setattr__(self, "function_mem_gb", _dec(self.function_mem_gb))
        for name in ("messages_per_month", "avg_message_kb", "avg_input_kb",
                     "function_exec_ms", "function_mem_gb", "devices"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def result_bytes(self) -> Decimal:
        return self.messages_per_month * self.avg_message_kb * KIB

    @property
    def input_bytes(self) -> Decimal:
        return self.messages_per_month * self.avg_input_kb * KIB


@dataclass(frozen=True)
class CostBreakdown:
    """Component micro-dollar amounts plus their total."""

    components: tuple[tuple[str, int], ...]

    @property
    def total_micro_usd(self) -> int:
        return sum(amount for _, amount in self.components)

    def formatted(self) -> str:
        """Additive form, e.g. ``0.2627 + 0.0057 + 1.2900 = $1.5584``."""
        parts = " + ".join(format_usd(amount) for _, amount in self.components)
        return f"{parts} = ${format_usd(self.total_micro_usd)}"


def edge_monthly_cost(card: RateCard, usage: UsageScenario) -> CostBreakdown:
    """Edge pipeline: runtime fee + result storage + put requests."""
    runtime = _micro(usage.devices * card.edge_runtime_usd_per_device_month)
    storage = _micro(usage.result_bytes / GIB * card.storage_usd_per_gb_month)
    puts = _micro(Decimal(usage.messages_per_month) / 1000 * card.put_usd_per_1k)
    return CostBreakdown(components=(
        ("edge runtime", runtime),
        ("result storage", storage),
        ("put requests", puts),
    ))


def cloud_monthly_cost(card: RateCard, usage: UsageScenario) -> CostBreakdown:
    """Cloud pipeline: raw + result storage, get + 2x put requests, function time."""
    raw_storage = _micro(usage.input_bytes / GIB * card.storage_usd_per_gb_month)
    result_storage = _micro(usage.result_bytes / GIB * card.storage_usd_per_gb_month)
    per_1k = Decimal(usage.messages_per_month) / 1000
    requests = _micro(per_1k * (card.get_usd_per_1k + 2 * card.put_usd_per_1k))
    gb_s = usage.function_mem_gb * usage.function_exec_ms / 1000 * usage.messages_per_month
    function = _micro(gb_s * card.function_usd_per_gb_s
                      + usage.messages_per_month * card.function_usd_per_invocation)
    return CostBreakdown(components=(
        ("raw storage", raw_storage),
        ("result storage", result_storage),
        ("requests", requests),
        ("function execution", function),
    ))


def monthly_bandwidth(usage: UsageScenario, mode: str) -> Decimal:
    """Bytes over the device's network per month for the given pipeline."""
    if mode == "edge":
        return usage.result_bytes
    if mode == "cloud":
        # uploads only: the function's result write is cloud-internal
        return usage.input_bytes
    raise ValueError(f"mode must be 'edge' or 'cloud', got {mode!r}")


def cost_ratio(cloud: CostBreakdown, edge: CostBreakdown) -> Decimal:
    return Decimal(cloud.total_micro_usd) / Decimal(edge.total_micro_usd)


def format_bytes_binary(n: Decimal) -> str:
    """Human-readable size in binary MB/GB (the unit the totals use)."""
    n = _dec(n)
    if n >= GIB:
        return f"{(n / GIB).quantize(Decimal('0.01'))} GB"
    if n >= MIB:
        return f"{(n / MIB).quantize(Decimal('0.001')).normalize()} MB"
    if n >= KIB:
        return f"{(n / KIB).quantize(Decimal('0.01'))} KB"
    return f"{n.quantize(Decimal('1'))} B"
