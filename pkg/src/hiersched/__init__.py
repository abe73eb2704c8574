"""Tier placement and multi-job scheduling for cloud/edge/device hierarchies.

Two problems, one model. First: given a single AI inference workload and a
three-tier topology, estimate per-tier response time (transmission plus
processing) and pick the fastest tier. Second: given many released,
prioritized jobs with per-machine integer costs, assign and dispatch them
to minimize total (weighted) response time, using a greedy construction
refined by neighborhood search, with fixed baselines and an exhaustive
oracle for comparison.
"""

from .dispatch import (
    DEFAULT_POLICY,
    DispatchPolicy,
    Violation,
    format_timeline,
    simulate,
    timeline_records,
    validate,
)
from .heuristic import (
    BRUTE_FORCE_LIMIT,
    BaselineStrategy,
    SearchConfig,
    baseline,
    brute_force,
    greedy_initial,
    neighborhood_search,
    solve,
)
from .jobs import (
    Assignment,
    Job,
    LowerBound,
    ObjectiveMode,
    Schedule,
    ScheduledJob,
    ScheduleMetrics,
    lower_bound,
    objective,
    random_jobs,
)
from .latency import (
    AppCalibration,
    CalibrationConstants,
    CalibrationError,
    LatencyEstimate,
    calibrate_from_anchor,
    estimate,
    processing_time,
    round_half_up,
    transmission_time,
)
from .model import (
    SHARED_TIERS,
    ConvLayer,
    DenseLayer,
    DeviceSpec,
    ModelLayerSpec,
    NetworkLink,
    Tier,
    Topology,
    TopologyWarning,
    WorkloadSpec,
    device_flops,
    flops_of_layer,
    flops_of_model,
)
from .placement import PlacementDecision, choose_layer
from .report import ReproductionReport, reproduce_tables
from .scenario import (
    CalibrationAnchor,
    Scenario,
    ScenarioError,
    bundled_scenario_path,
    load_bundled_scenario,
    load_scenario,
    parse_scenario,
    save_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "AppCalibration",
    "Assignment",
    "BaselineStrategy",
    "BRUTE_FORCE_LIMIT",
    "CalibrationAnchor",
    "CalibrationConstants",
    "CalibrationError",
    "ConvLayer",
    "DEFAULT_POLICY",
    "DenseLayer",
    "DeviceSpec",
    "DispatchPolicy",
    "Job",
    "LatencyEstimate",
    "LowerBound",
    "ModelLayerSpec",
    "NetworkLink",
    "ObjectiveMode",
    "PlacementDecision",
    "ReproductionReport",
    "Scenario",
    "ScenarioError",
    "Schedule",
    "ScheduledJob",
    "ScheduleMetrics",
    "SearchConfig",
    "SHARED_TIERS",
    "Tier",
    "Topology",
    "TopologyWarning",
    "Violation",
    "WorkloadSpec",
    "baseline",
    "brute_force",
    "bundled_scenario_path",
    "calibrate_from_anchor",
    "choose_layer",
    "device_flops",
    "estimate",
    "flops_of_layer",
    "flops_of_model",
    "format_timeline",
    "greedy_initial",
    "load_bundled_scenario",
    "load_scenario",
    "lower_bound",
    "neighborhood_search",
    "objective",
    "parse_scenario",
    "processing_time",
    "random_jobs",
    "reproduce_tables",
    "round_half_up",
    "save_scenario",
    "simulate",
    "solve",
    "timeline_records",
    "transmission_time",
    "validate",
]
