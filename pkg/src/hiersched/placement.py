"""Single-workload placement: run the tier on which the estimated response
time is smallest."""

from __future__ import annotations

from dataclasses import dataclass

from .latency import CalibrationConstants, LatencyEstimate, estimate
from .model import Tier, Topology, WorkloadSpec

__all__ = ["PlacementDecision", "choose_layer"]


@dataclass(frozen=True)
class PlacementDecision:
    """Chosen tier for one workload, with the estimate that justified it."""

    workload_id: str
    chosen_tier: Tier
    estimate: LatencyEstimate
    t_min: float


def choose_layer(
    workload: WorkloadSpec,
    topology: Topology,
    calib: CalibrationConstants,
) -> PlacementDecision:
    """Pick the tier with the minimum estimated response time.

    Ties go to the lowest tier (device before edge before cloud): at equal
    cost, keep the data where it was produced.
    """
    est = estimate(workload, topology, calib)
    chosen = min(Tier, key=lambda tier: (est.total(tier), tier.value))
    return PlacementDecision(
        workload_id=workload.id,
        chosen_tier=chosen,
        estimate=est,
        t_min=est.total(chosen),
    )
