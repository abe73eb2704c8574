"""Multi-job scheduling instances: jobs with per-tier costs, assignments,
timed schedules, the response-time objective and its contention-free lower
bound.

All times are integer units. A job's response time is its completion minus
its release; the weighted objective multiplies each response by the job's
priority weight.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

from .latency import LatencyEstimate, round_half_up
from .model import Tier, WorkloadSpec

__all__ = [
    "ObjectiveMode",
    "Job",
    "Assignment",
    "ScheduledJob",
    "Schedule",
    "ScheduleMetrics",
    "LowerBound",
    "objective",
    "lower_bound",
    "random_jobs",
]


class ObjectiveMode(Enum):
    WEIGHTED = "weighted"
    UNWEIGHTED = "unweighted"


def _check_time(name: str, value: int, minimum: int) -> None:
    # bool is an int subclass; reject it explicitly
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")


@dataclass(frozen=True)
class Job:
    """One job with integer release time, priority weight and per-tier costs.

    Processing and transmission mirror the instance tables: the cloud and
    edge servers each have a processing and a transmission cost, the end
    device only processes (its data is already local).
    """

    id: str
    release: int
    weight: int
    cloud_processing: int
    cloud_transmission: int
    edge_processing: int
    edge_transmission: int
    device_processing: int

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("job id must be non-empty")
        _check_time("release", self.release, 0)
        _check_time("weight", self.weight, 1)
        _check_time("cloud_processing", self.cloud_processing, 1)
        _check_time("edge_processing", self.edge_processing, 1)
        _check_time("device_processing", self.device_processing, 1)
        _check_time("cloud_transmission", self.cloud_transmission, 0)
        _check_time("edge_transmission", self.edge_transmission, 0)

    def processing(self, tier: Tier) -> int:
        if tier is Tier.CLOUD:
            return self.cloud_processing
        if tier is Tier.EDGE:
            return self.edge_processing
        return self.device_processing

    def transmission(self, tier: Tier) -> int:
        if tier is Tier.CLOUD:
            return self.cloud_transmission
        if tier is Tier.EDGE:
            return self.edge_transmission
        return 0

    def execution_cost(self, tier: Tier) -> int:
        """Contention-free cost of running on `tier`: transmission plus processing."""
        return self.transmission(tier) + self.processing(tier)

    def ready(self, tier: Tier) -> int:
        """Earliest possible start on `tier`: data must arrive first."""
        return self.release + self.transmission(tier)

    @classmethod
    def from_estimate(
        cls,
        workload: WorkloadSpec,
        release: int,
        est: LatencyEstimate,
    ) -> "Job":
        """Build a job from a workload's latency estimate.

        Times are rounded half-up to integer units; processing is clamped to
        at least one unit so the job occupies the machine.
        """
        proc = {t: max(1, round_half_up(est.processing[t])) for t in Tier}
        return cls(
            id=workload.id,
            release=release,
            weight=workload.priority_weight,
            cloud_processing=proc[Tier.CLOUD],
            cloud_transmission=round_half_up(est.transmission[Tier.CLOUD]),
            edge_processing=proc[Tier.EDGE],
            edge_transmission=round_half_up(est.transmission[Tier.EDGE]),
            device_processing=proc[Tier.DEVICE],
        )


#: Maps each job id to the tier that executes it. A job assigned to
#: Tier.DEVICE runs on its own private end device.
Assignment = Mapping[str, Tier]


@dataclass(frozen=True)
class ScheduledJob:
    """Timed placement of one job: transmission window then processing window."""

    job_id: str
    tier: Tier
    release: int
    transmission_end: int  # transmission occupies [release, transmission_end)
    start: int  # processing occupies [start, end)
    end: int

    @property
    def machine(self) -> str:
        """Human-readable machine identity; end devices are per-job."""
        if self.tier is Tier.DEVICE:
            return f"Device({self.job_id})"
        return self.tier.label


@dataclass(frozen=True)
class Schedule:
    """Immutable set of scheduled jobs, indexable by job id."""

    entries: tuple[ScheduledJob, ...]

    def __post_init__(self) -> None:
        ids = [e.job_id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValueError("schedule contains duplicate job ids")

    def __iter__(self) -> Iterator[ScheduledJob]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, job_id: str) -> ScheduledJob:
        for e in self.entries:
            if e.job_id == job_id:
                return e
        raise KeyError(job_id)

    def on_tier(self, tier: Tier) -> list[ScheduledJob]:
        return [e for e in self.entries if e.tier is tier]


@dataclass(frozen=True)
class ScheduleMetrics:
    """Aggregate outcome of a schedule."""

    weighted_total: int
    unweighted_total: int
    last_completion: int

    def value(self, mode: ObjectiveMode) -> int:
        if mode is ObjectiveMode.WEIGHTED:
            return self.weighted_total
        return self.unweighted_total


@dataclass(frozen=True)
class LowerBound:
    weighted: int
    unweighted: int

    def value(self, mode: ObjectiveMode) -> int:
        return self.weighted if mode is ObjectiveMode.WEIGHTED else self.unweighted


def objective(schedule: Schedule, jobs: Sequence[Job]) -> ScheduleMetrics:
    """Total response time of a schedule, weighted and unweighted, plus the
    completion time of the last job."""
    weighted = 0
    unweighted = 0
    last = 0
    for job in jobs:
        try:
            entry = schedule.entry(job.id)
        except KeyError:
            raise ValueError(f"schedule is missing job {job.id!r}") from None
        response = entry.end - job.release
        unweighted += response
        weighted += job.weight * response
        last = max(last, entry.end)
    return ScheduleMetrics(weighted_total=weighted, unweighted_total=unweighted, last_completion=last)


def lower_bound(jobs: Sequence[Job]) -> LowerBound:
    """Contention-free bound: each job takes its cheapest tier in isolation.

    No feasible schedule can beat this; queueing on the shared machines can
    only add waiting time.
    """
    if not jobs:
        raise ValueError("job list must be non-empty")
    weighted = 0
    unweighted = 0
    for job in jobs:
        best = min(job.execution_cost(tier) for tier in Tier)
        unweighted += best
        weighted += job.weight * best
    return LowerBound(weighted=weighted, unweighted=unweighted)


def random_jobs(
    rng: random.Random,
    count: int,
    cost_range: tuple[int, int] = (1, 100),
    release_range: tuple[int, int] = (0, 30),
    weights: Iterable[int] = (1, 2),
) -> list[Job]:
    """Random instance generator for fuzzing and oracle comparisons."""
    lo, hi = cost_range
    choices = tuple(weights)
    return [
        Job(
            id=f"J{i + 1}",
            release=rng.randint(*release_range),
            weight=rng.choice(choices),
            cloud_processing=rng.randint(lo, hi),
            cloud_transmission=rng.randint(lo, hi),
            edge_processing=rng.randint(lo, hi),
            edge_transmission=rng.randint(lo, hi),
            device_processing=rng.randint(lo, hi),
        )
        for i in range(count)
    ]
