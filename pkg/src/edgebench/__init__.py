"""edgebench: a deterministic simulator and benchmark harness for
serverless edge-to-cloud pipelines.

The library models the full message path (edge compute, network flight,
hub write policies, blob storage) plus a cloud-only alternative, and
reports latency decomposition, byte accounting, and monthly cost.
"""

from .charts import emit_charts
from .cloud import CloudFunctionProfile, cloud_bandwidth, run_cloud_item, time_cloud_item
from .config import (
    ScenarioConfig,
    list_fixtures,
    load_config,
    load_fixture,
    load_rate_card,
    load_usage,
)
from .core import (
    Clock,
    Distribution,
    EventLoop,
    InvalidDistribution,
    Message,
    SeededRng,
    SimulationError,
    TimeRegression,
    TimestampRecord,
    constant,
    empirical,
    normal,
    uniform,
)
from .cost import (
    CostBreakdown,
    RateCard,
    UsageScenario,
    cloud_monthly_cost,
    cost_ratio,
    edge_monthly_cost,
    monthly_bandwidth,
)
from .hub import Hub, HubPolicy, HubRecord
from .metrics import (
    EmptyRun,
    IncompleteRecord,
    MetricRow,
    RunReport,
    UnsupportedFormat,
    aggregate,
    export,
    finalize_row,
    report_from_json,
    report_to_json,
    rows_to_csv,
)
from .network import ByteLedger, Link, LinkModel, ledger_report
from .runner import RunResult, run_scenario, write_artifacts
from .storage import BlobRecord, BlobStore, DuplicateBlobName
from .workloads import (
    ComputeRecord,
    ExhaustedWorkload,
    InvalidRate,
    ResourceProfile,
    WorkloadSpec,
    generate_scalar_batch,
    run_item,
    workload_totals,
)

__version__ = "0.1.0"

__all__ = [
    "BlobRecord",
    "BlobStore",
    "ByteLedger",
    "Clock",
    "CloudFunctionProfile",
    "ComputeRecord",
    "CostBreakdown",
    "Distribution",
    "DuplicateBlobName",
    "EmptyRun",
    "EventLoop",
    "ExhaustedWorkload",
    "Hub",
    "HubPolicy",
    "HubRecord",
    "IncompleteRecord",
    "InvalidDistribution",
    "InvalidRate",
    "Link",
    "LinkModel",
    "Message",
    "MetricRow",
    "RateCard",
    "ResourceProfile",
    "RunReport",
    "RunResult",
    "ScenarioConfig",
    "SeededRng",
    "SimulationError",
    "TimeRegression",
    "TimestampRecord",
    "UnsupportedFormat",
    "UsageScenario",
    "WorkloadSpec",
    "aggregate",
    "cloud_bandwidth",
    "cloud_monthly_cost",
    "constant",
    "cost_ratio",
    "edge_monthly_cost",
    "emit_charts",
    "empirical",
    "export",
    "finalize_row",
    "generate_scalar_batch",
    "ledger_report",
    "list_fixtures",
    "load_config",
    "load_fixture",
    "load_rate_card",
    "load_usage",
    "monthly_bandwidth",
    "normal",
    "report_from_json",
    "report_to_json",
    "rows_to_csv",
    "run_cloud_item",
    "run_item",
    "run_scenario",
    "time_cloud_item",
    "uniform",
    "workload_totals",
    "write_artifacts",
]
