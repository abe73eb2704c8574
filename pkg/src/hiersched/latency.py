"""Per-workload response-time estimation across the three tiers.

Both cost components are linear in the workload's data size. Each can be
parameterized two ways:

* physical mode: transmission cost comes from the topology's network links
  (latency + bytes/bandwidth per data unit) and processing cost from the
  model's operation count over the tier's FLOPS, each scaled by a global
  weight (lambda1, lambda2);
* fitted mode: per-application unit costs are fitted from one measured row
  with `calibrate_from_anchor` and override the physical derivation
  entirely (the fitted constants already absorb the weights).

Running on the device never transmits, so its transmission time is zero.
The return trip of the (small) inference result is ignored throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .model import Tier, Topology, WorkloadSpec

__all__ = [
    "AppCalibration",
    "CalibrationConstants",
    "CalibrationError",
    "LatencyEstimate",
    "transmission_time",
    "processing_time",
    "estimate",
    "calibrate_from_anchor",
    "round_half_up",
]


class CalibrationError(ValueError):
    """Calibration inputs are inconsistent or insufficient."""


@dataclass(frozen=True)
class AppCalibration:
    """Fitted unit costs for one application, per data-size unit.

    `unit_proc_device` is the device-side processing time of one unit;
    other tiers scale it by the device/tier FLOPS ratio. `unit_tx_edge`
    and `unit_tx_cloud` are the transmission times of one unit to each
    shared tier.
    """

    unit_proc_device: float
    unit_tx_edge: float
    unit_tx_cloud: float

    def __post_init__(self) -> None:
        for name in ("unit_proc_device", "unit_tx_edge", "unit_tx_cloud"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    def unit_tx(self, tier: Tier) -> float:
        if tier is Tier.EDGE:
            return self.unit_tx_edge
        if tier is Tier.CLOUD:
            return self.unit_tx_cloud
        return 0.0


@dataclass(frozen=True)
class CalibrationConstants:
    """Free constants of the time model.

    lambda1 weighs transmission and lambda2 weighs processing in physical
    mode. `per_app_overrides` maps an application name to its fitted unit
    costs; when an application is present there, the override wins.
    """

    lambda1: float = 1.0
    lambda2: float = 1.0
    per_app_overrides: Mapping[str, AppCalibration] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.lambda1 <= 0:
            raise ValueError(f"lambda1 must be positive, got {self.lambda1}")
        if self.lambda2 <= 0:
            raise ValueError(f"lambda2 must be positive, got {self.lambda2}")

    def override_for(self, application: str) -> AppCalibration | None:
        return self.per_app_overrides.get(application)


@dataclass(frozen=True)
class LatencyEstimate:
    """Transmission/processing breakdown for all three candidate tiers."""

    transmission: Mapping[Tier, float]
    processing: Mapping[Tier, float]

    def __post_init__(self) -> None:
        for part, values in (("transmission", self.transmission), ("processing", self.processing)):
            if set(values) != set(Tier):
                raise ValueError(f"{part} must cover all tiers")
            for tier, value in values.items():
                if value < 0:
                    raise ValueError(f"{part}[{tier.label}] must be >= 0, got {value}")
        if self.transmission[Tier.DEVICE] != 0:
            raise ValueError("device-local execution has no transmission time")

    def total(self, tier: Tier) -> float:
        return self.transmission[tier] + self.processing[tier]

    @property
    def totals(self) -> dict[Tier, float]:
        return {tier: self.total(tier) for tier in Tier}


def transmission_time(
    workload: WorkloadSpec,
    tier: Tier,
    topology: Topology,
    calib: CalibrationConstants,
) -> float:
    """Time to move the workload's input data from the device to `tier`."""
    if tier is Tier.DEVICE:
        return 0.0
    override = calib.override_for(workload.application)
    if override is not None:
        return override.unit_tx(tier) * workload.data_size_units
    link = topology.link_for(tier)
    if link is None:
        raise CalibrationError(
            f"no calibration override for application {workload.application!r} "
            f"and the topology has no {tier.label.lower()}-device link"
        )
    unit_cost = link.latency + workload.unit_bytes / link.bandwidth
    return calib.lambda1 * workload.data_size_units * unit_cost


def processing_time(
    workload: WorkloadSpec,
    tier: Tier,
    topology: Topology,
    calib: CalibrationConstants,
) -> float:
    """Inference time of the workload on `tier`'s machine."""
    spec = topology.spec_for(tier)
    override = calib.override_for(workload.application)
    if override is not None:
        return (
            override.unit_proc_device
            * workload.data_size_units
            * (topology.device.flops / spec.flops)
        )
    return calib.lambda2 * workload.data_size_units * workload.model_flops / spec.flops


def estimate(
    workload: WorkloadSpec,
    topology: Topology,
    calib: CalibrationConstants,
) -> LatencyEstimate:
    """Response-time breakdown for every candidate tier.

    The three placements are mutually exclusive; the estimate reports all
    of them so a caller can pick the minimum.
    """
    return LatencyEstimate(
        transmission={t: transmission_time(workload, t, topology, calib) for t in Tier},
        processing={t: processing_time(workload, t, topology, calib) for t in Tier},
    )


def calibrate_from_anchor(
    app: str,
    s_anchor: int,
    device_total: float,
    edge_total: float,
    cloud_total: float,
    topology: Topology,
) -> AppCalibration:
    """Fit one application's unit costs from measured totals at one size.

    The device total is pure processing (nothing is transmitted), so it
    fixes the per-unit processing cost; scaling by the FLOPS ratio gives
    each shared tier's processing share, and the remainder of that tier's
    measured total is its transmission share. Linearity in the data size
    then reproduces every other size from this single anchor.
    """
    if s_anchor <= 0:
        raise CalibrationError(f"anchor data size must be positive, got {s_anchor}")
    if min(device_total, edge_total, cloud_total) <= 0:
        raise CalibrationError("measured totals must all be positive")
    unit_proc_device = device_total / s_anchor
    unit_tx: dict[Tier, float] = {}
    for tier, total in ((Tier.EDGE, edge_total), (Tier.CLOUD, cloud_total)):
        scaled_proc = device_total * (topology.device.flops / topology.spec_for(tier).flops)
        tx_at_anchor = total - scaled_proc
        if tx_at_anchor <= 0:
            raise CalibrationError(
                f"{app}: measured {tier.label.lower()} total {total} does not exceed "
                f"the scaled processing time {scaled_proc:.3f}; "
                "the implied transmission cost would be non-positive"
            )
        unit_tx[tier] = tx_at_anchor / s_anchor
    return AppCalibration(
        unit_proc_device=unit_proc_device,
        unit_tx_edge=unit_tx[Tier.EDGE],
        unit_tx_cloud=unit_tx[Tier.CLOUD],
    )


def round_half_up(value: float) -> int:
    """Round a non-negative time value to integer units, halves up.

    The scheduler works in integer time, so estimates are snapped to units
    at this boundary.
    """
    if value < 0:
        raise ValueError(f"time values must be >= 0, got {value}")
    return math.floor(value + 0.5)
