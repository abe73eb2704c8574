"""Scenario files: one YAML document bundling a topology, calibration,
workloads, and a multi-job instance.

Field names follow the symbols used throughout the package: `s` for data
size in record units, `comp` for model FLOPs, `w` for priority weight,
`latency`/`bandwidth` for links, `cores`/`frequency`/`ops_per_cycle` for
machine capability. Jobs carry their per-machine costs as flat columns
(cloud_processing, cloud_transmission, ...).

Calibration can be given two ways: `anchors` (one measured per-tier total
at a reference size; unit costs are fitted at load) or explicit
`overrides` (the unit costs themselves).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

import yaml

from .jobs import Job
from .latency import AppCalibration, CalibrationConstants, CalibrationError, calibrate_from_anchor
from .model import DeviceSpec, NetworkLink, Topology, WorkloadSpec

__all__ = [
    "ScenarioError",
    "CalibrationAnchor",
    "Scenario",
    "parse_scenario",
    "load_scenario",
    "save_scenario",
    "scenario_to_dict",
    "bundled_scenario_path",
    "load_bundled_scenario",
    "BUNDLED_SCENARIO",
]

BUNDLED_SCENARIO = "icu_paper.scn"


class ScenarioError(Exception):
    """Malformed scenario file; message carries the offending field path."""


@dataclass(frozen=True)
class CalibrationAnchor:
    """One measured (device, edge, cloud) total at a reference data size.

    Unit transmission and processing costs for the application are fitted
    from this single row; every other size follows by linearity.
    """

    application: str
    s: int
    device_total: float
    edge_total: float
    cloud_total: float

    def __post_init__(self) -> None:
        if self.s <= 0:
            raise ValueError("anchor s must be positive")
        for name in ("device_total", "edge_total", "cloud_total"):
            if getattr(self, name) <= 0:
                raise ValueError(f"anchor {name} must be positive")


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    topology: Topology
    calibration: CalibrationConstants
    anchors: tuple[CalibrationAnchor, ...] = ()
    workloads: tuple[WorkloadSpec, ...] = ()
    jobs: tuple[Job, ...] = ()

    def __post_init__(self) -> None:
        ids = [w.id for w in self.workloads]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate workload ids")
        job_ids = [j.id for j in self.jobs]
        if len(set(job_ids)) != len(job_ids):
            raise ValueError("duplicate job ids")
        apps = {w.application for w in self.workloads}
        for app in self.calibration.per_app_overrides:
            if app not in apps:
                raise ValueError(
                    f"calibration override for {app!r} has no matching workload application"
                )

    def workload(self, workload_id: str) -> WorkloadSpec:
        for w in self.workloads:
            if w.id == workload_id:
                return w
        raise KeyError(workload_id)


def _expect_map(value: Any, path: str) -> Mapping[str, Any]:
    if not isinstance(value, dict):
        raise ScenarioError(f"{path}: expected a mapping, got {type(value).__name__}")
    return value


def _expect_list(value: Any, path: str) -> Sequence[Any]:
    if not isinstance(value, list):
        raise ScenarioError(f"{path}: expected a list, got {type(value).__name__}")
    return value


def _get(mapping: Mapping[str, Any], key: str, path: str) -> Any:
    if key not in mapping:
        raise ScenarioError(f"{path}: missing required field {key!r}")
    return mapping[key]


def _num(mapping: Mapping[str, Any], key: str, path: str) -> float:
    value = _get(mapping, key, path)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ScenarioError(f"{path}.{key}: expected a number, got {value!r}")
    return float(value)


def _int(mapping: Mapping[str, Any], key: str, path: str) -> int:
    value = _get(mapping, key, path)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ScenarioError(f"{path}.{key}: expected an integer, got {value!r}")
    return value


def _str(mapping: Mapping[str, Any], key: str, path: str) -> str:
    value = _get(mapping, key, path)
    if not isinstance(value, str):
        raise ScenarioError(f"{path}.{key}: expected a string, got {value!r}")
    return value


def _device_spec(raw: Any, path: str) -> DeviceSpec:
    mapping = _expect_map(raw, path)
    try:
        return DeviceSpec(
            cores=_int(mapping, "cores", path),
            frequency=_num(mapping, "frequency", path),
            ops_per_cycle=_int(mapping, "ops_per_cycle", path),
        )
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def _link(raw: Any, path: str) -> NetworkLink:
    mapping = _expect_map(raw, path)
    try:
        return NetworkLink(
            latency=_num(mapping, "latency", path),
            bandwidth=_num(mapping, "bandwidth", path),
        )
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def _topology(raw: Any) -> Topology:
    mapping = _expect_map(raw, "topology")
    links: dict[str, NetworkLink | None] = {"cloud_device_link": None, "edge_device_link": None}
    for key in links:
        if key in mapping and mapping[key] is not None:
            links[key] = _link(mapping[key], f"topology.{key}")
    return Topology(
        cloud=_device_spec(_get(mapping, "cloud", "topology"), "topology.cloud"),
        edge=_device_spec(_get(mapping, "edge", "topology"), "topology.edge"),
        device=_device_spec(_get(mapping, "device", "topology"), "topology.device"),
        edge_device_link=links["edge_device_link"],
        cloud_device_link=links["cloud_device_link"],
    )


def _workload(raw: Any, path: str) -> WorkloadSpec:
    mapping = _expect_map(raw, path)
    try:
        return WorkloadSpec(
            id=_str(mapping, "id", path),
            application=_str(mapping, "application", path),
            data_size_units=_int(mapping, "s", path),
            data_size_bytes=_int(mapping, "size_bytes", path),
            model_flops=_int(mapping, "comp", path),
            priority_weight=_int(mapping, "w", path),
        )
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def _job(raw: Any, path: str) -> Job:
    mapping = _expect_map(raw, path)
    try:
        return Job(
            id=_str(mapping, "id", path),
            release=_int(mapping, "release", path),
            weight=_int(mapping, "weight", path),
            cloud_processing=_int(mapping, "cloud_processing", path),
            cloud_transmission=_int(mapping, "cloud_transmission", path),
            edge_processing=_int(mapping, "edge_processing", path),
            edge_transmission=_int(mapping, "edge_transmission", path),
            device_processing=_int(mapping, "device_processing", path),
        )
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def _anchor(raw: Any, path: str) -> CalibrationAnchor:
    mapping = _expect_map(raw, path)
    try:
        return CalibrationAnchor(
            application=_str(mapping, "application", path),
            s=_int(mapping, "s", path),
            device_total=_num(mapping, "device_total", path),
            edge_total=_num(mapping, "edge_total", path),
            cloud_total=_num(mapping, "cloud_total", path),
        )
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def _override(raw: Any, path: str) -> AppCalibration:
    mapping = _expect_map(raw, path)
    try:
        return AppCalibration(
            unit_proc_device=_num(mapping, "unit_proc_device", path),
            unit_tx_edge=_num(mapping, "unit_tx_edge", path),
            unit_tx_cloud=_num(mapping, "unit_tx_cloud", path),
        )
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def _calibration(
    raw: Any, topology: Topology
) -> tuple[CalibrationConstants, tuple[CalibrationAnchor, ...]]:
    if raw is None:
        return CalibrationConstants(), ()
    mapping = _expect_map(raw, "calibration")
    lambda1 = _num(mapping, "lambda1", "calibration") if "lambda1" in mapping else 1.0
    lambda2 = _num(mapping, "lambda2", "calibration") if "lambda2" in mapping else 1.0

    overrides: dict[str, AppCalibration] = {}
    for app, raw_override in _expect_map(
        mapping.get("overrides", {}) or {}, "calibration.overrides"
    ).items():
        overrides[app] = _override(raw_override, f"calibration.overrides.{app}")

    anchors = tuple(
        _anchor(raw_anchor, f"calibration.anchors[{i}]")
        for i, raw_anchor in enumerate(_expect_list(mapping.get("anchors", []) or [], "calibration.anchors"))
    )
    for i, anchor in enumerate(anchors):
        if anchor.application in overrides:
            raise ScenarioError(
                f"calibration.anchors[{i}]: {anchor.application!r} already has an explicit override"
            )
        try:
            overrides[anchor.application] = calibrate_from_anchor(
                anchor.application,
                anchor.s,
                anchor.device_total,
                anchor.edge_total,
                anchor.cloud_total,
                topology,
            )
        except CalibrationError as exc:
            raise ScenarioError(f"calibration.anchors[{i}]: {exc}") from exc

    try:
        constants = CalibrationConstants(
            lambda1=lambda1, lambda2=lambda2, per_app_overrides=overrides
        )
    except ValueError as exc:
        raise ScenarioError(f"calibration: {exc}") from exc
    return constants, anchors


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    """Parse and fully validate one scenario document."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{source}:{mark.line + 1}" if mark is not None else source
        raise ScenarioError(f"{where}: not valid YAML: {exc}") from exc
    if raw is None:
        raise ScenarioError(f"{source}: empty document")
    mapping = _expect_map(raw, "scenario")

    topology = _topology(_get(mapping, "topology", "scenario"))
    calibration, anchors = _calibration(mapping.get("calibration"), topology)
    workloads = tuple(
        _workload(raw_wl, f"workloads[{i}]")
        for i, raw_wl in enumerate(_expect_list(mapping.get("workloads", []) or [], "workloads"))
    )
    jobs = tuple(
        _job(raw_job, f"jobs[{i}]")
        for i, raw_job in enumerate(_expect_list(mapping.get("jobs", []) or [], "jobs"))
    )
    try:
        return Scenario(
            name=str(mapping.get("name", Path(source).stem)),
            description=str(mapping.get("description", "")),
            topology=topology,
            calibration=calibration,
            anchors=anchors,
            workloads=workloads,
            jobs=jobs,
        )
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc}") from exc
    return parse_scenario(text, source=str(path))


def _spec_dict(spec: DeviceSpec) -> dict:
    return {"cores": spec.cores, "frequency": spec.frequency, "ops_per_cycle": spec.ops_per_cycle}


def scenario_to_dict(scenario: Scenario) -> dict:
    """Plain-data form of a scenario, matching the file schema."""
    topology: dict[str, Any] = {
        "cloud": _spec_dict(scenario.topology.cloud),
        "edge": _spec_dict(scenario.topology.edge),
        "device": _spec_dict(scenario.topology.device),
    }
    for key in ("cloud_device_link", "edge_device_link"):
        link = getattr(scenario.topology, key)
        if link is not None:
            topology[key] = {"latency": link.latency, "bandwidth": link.bandwidth}

    anchored = {anchor.application for anchor in scenario.anchors}
    calibration: dict[str, Any] = {
        "lambda1": scenario.calibration.lambda1,
        "lambda2": scenario.calibration.lambda2,
    }
    if scenario.anchors:
        calibration["anchors"] = [
            {
                "application": a.application,
                "s": a.s,
                "device_total": a.device_total,
                "edge_total": a.edge_total,
                "cloud_total": a.cloud_total,
            }
            for a in scenario.anchors
        ]
    explicit = {
        app: {
            "unit_proc_device": cal.unit_proc_device,
            "unit_tx_edge": cal.unit_tx_edge,
            "unit_tx_cloud": cal.unit_tx_cloud,
        }
        for app, cal in scenario.calibration.per_app_overrides.items()
        if app not in anchored
    }
    if explicit:
        calibration["overrides"] = explicit

    return {
        "name": scenario.name,
        "description": scenario.description,
        "topology": topology,
        "calibration": calibration,
        "workloads": [
            {
                "id": w.id,
                "application": w.application,
                "s": w.data_size_units,
                "size_bytes": w.data_size_bytes,
                "comp": w.model_flops,
                "w": w.priority_weight,
            }
            for w in scenario.workloads
        ],
        "jobs": [
            {
                "id": j.id,
                "release": j.release,
                "weight": j.weight,
                "cloud_processing": j.cloud_processing,
                "cloud_transmission": j.cloud_transmission,
                "edge_processing": j.edge_processing,
                "edge_transmission": j.edge_transmission,
                "device_processing": j.device_processing,
            }
            for j in scenario.jobs
        ],
    }


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    Path(path).write_text(yaml.safe_dump(scenario_to_dict(scenario), sort_keys=False))


def bundled_scenario_path() -> Path:
    """Filesystem path of the packaged reference scenario."""
    from importlib import resources

    return Path(str(resources.files("hiersched").joinpath("data", BUNDLED_SCENARIO)))


def load_bundled_scenario() -> Scenario:
    return load_scenario(bundled_scenario_path())
