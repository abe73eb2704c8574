"""Assignment search: greedy construction, tabu-guarded neighborhood
improvement, fixed baselines, and an exhaustive oracle.

The search treats the dispatch simulator as a black box: every candidate
move is costed by re-simulating the full instance, so the search inherits
whatever queue discipline the policy defines.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .dispatch import DEFAULT_POLICY, DispatchPolicy, simulate
from .jobs import Assignment, Job, ObjectiveMode, ScheduleMetrics, objective
from .model import Tier

__all__ = [
    "SearchConfig",
    "BaselineStrategy",
    "greedy_initial",
    "neighborhood_search",
    "solve",
    "baseline",
    "brute_force",
    "BRUTE_FORCE_LIMIT",
]

#: 3^n assignments; beyond this enumeration is pointless.
BRUTE_FORCE_LIMIT = 12

# Moves are probed cloud-first so that, mirroring the >= update rule, a tie
# resolves to the lowest tier probed last.
_MOVE_ORDER = (Tier.CLOUD, Tier.EDGE, Tier.DEVICE)


@dataclass(frozen=True)
class SearchConfig:
    """Neighborhood-search knobs.

    max_iterations bounds the number of improvement passes. seed is
    reserved for future randomized variants; the current search is fully
    deterministic and ignores it.
    """

    max_iterations: int = 50
    objective_mode: ObjectiveMode = ObjectiveMode.WEIGHTED
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


def greedy_initial(jobs: Sequence[Job], policy: DispatchPolicy = DEFAULT_POLICY) -> Assignment:
    """Assign jobs one by one in release order, each to the machine that
    completes it earliest given all earlier commitments.

    Each candidate machine is costed by simulating the partial instance, so
    queueing behind already-placed jobs is accounted for. Ties go to the
    lowest tier, keeping data local.
    """
    if not jobs:
        raise ValueError("job list must be non-empty")
    order = sorted(range(len(jobs)), key=lambda i: (jobs[i].release, i))
    assignment: dict[str, Tier] = {}
    placed: list[Job] = []
    for idx in order:
        job = jobs[idx]
        placed.append(job)
        best: tuple[int, int] | None = None
        best_tier = Tier.DEVICE
        for tier in Tier:
            assignment[job.id] = tier
            schedule = simulate(placed, assignment, policy)
            key = (schedule.entry(job.id).end, tier.value)
            if best is None or key < best:
                best = key
                best_tier = tier
        assignment[job.id] = best_tier
    return assignment


def neighborhood_search(
    initial: Assignment,
    jobs: Sequence[Job],
    config: SearchConfig = SearchConfig(),
    policy: DispatchPolicy = DEFAULT_POLICY,
    evaluation_log: list | None = None,
) -> tuple[Assignment, ScheduleMetrics]:
    """Improve an assignment by single-job moves until a pass finds none.

    Each pass visits every job once (earliest current completion first,
    ties by job index) and greedily commits the best strictly improving
    move for the visited job. A pass that commits nothing ends the search;
    max_iterations caps the number of passes either way.

    evaluation_log, when given, receives one (pass, job_id, tier) tuple per
    candidate move costed, in evaluation order.
    """
    assignment = dict(initial)
    current = objective(simulate(jobs, assignment, policy), jobs)
    mode = config.objective_mode

    for pass_index in range(config.max_iterations):
        tabu: set[str] = set()
        improved = False
        while len(tabu) < len(jobs):
            schedule = simulate(jobs, assignment, policy)
            _, _, job = min(
                (schedule.entry(j.id).end, idx, j)
                for idx, j in enumerate(jobs)
                if j.id not in tabu
            )
            tabu.add(job.id)

            best_gain = 0
            best_tier: Tier | None = None
            best_metrics: ScheduleMetrics | None = None
            for tier in _MOVE_ORDER:
                if tier is assignment[job.id]:
                    continue
                trial = dict(assignment)
                trial[job.id] = tier
                metrics = objective(simulate(jobs, trial, policy), jobs)
                if evaluation_log is not None:
                    evaluation_log.append((pass_index, job.id, tier))
                gain = current.value(mode) - metrics.value(mode)
                if gain >= best_gain:
                    best_gain = gain
                    best_tier = tier
                    best_metrics = metrics
            if best_gain > 0 and best_tier is not None and best_metrics is not None:
                assignment[job.id] = best_tier
                current = best_metrics
                improved = True
        if not improved:
            break

    return assignment, current


def solve(
    jobs: Sequence[Job],
    config: SearchConfig = SearchConfig(),
    policy: DispatchPolicy = DEFAULT_POLICY,
) -> tuple[Assignment, ScheduleMetrics]:
    """Greedy construction followed by neighborhood search."""
    return neighborhood_search(greedy_initial(jobs, policy), jobs, config, policy)


class BaselineStrategy(Enum):
    ALL_CLOUD = "all_cloud"
    ALL_EDGE = "all_edge"
    ALL_DEVICE = "all_device"
    PER_JOB_OPTIMAL = "per_job_optimal"


def baseline(
    strategy: BaselineStrategy,
    jobs: Sequence[Job],
    policy: DispatchPolicy = DEFAULT_POLICY,
) -> tuple[Assignment, ScheduleMetrics]:
    """Fixed reference strategies: one tier for everything, or each job's
    contention-blind best tier."""
    if strategy is BaselineStrategy.ALL_CLOUD:
        assignment: Assignment = {job.id: Tier.CLOUD for job in jobs}
    elif strategy is BaselineStrategy.ALL_EDGE:
        assignment = {job.id: Tier.EDGE for job in jobs}
    elif strategy is BaselineStrategy.ALL_DEVICE:
        assignment = {job.id: Tier.DEVICE for job in jobs}
    else:
        assignment = {
            job.id: min(Tier, key=lambda t: (job.execution_cost(t), t.value)) for job in jobs
        }
    metrics = objective(simulate(jobs, assignment, policy), jobs)
    return assignment, metrics


class _LeanEvaluator:
    """Objective evaluator for exhaustive enumeration.

    Pre-sorts each shared tier's queue once; evaluating one assignment is
    then a single pass over the jobs with no allocation of schedule
    objects. Must agree with objective(simulate(...)) exactly; a property
    test enforces that.
    """

    def __init__(self, jobs: Sequence[Job]):
        self.jobs = list(jobs)
        self.device_response = [job.device_processing for job in jobs]
        self.order: dict[Tier, list[int]] = {}
        self.ready: dict[Tier, list[int]] = {}
        self.proc: dict[Tier, list[int]] = {}
        for tier in (Tier.CLOUD, Tier.EDGE):
            self.order[tier] = sorted(
                range(len(jobs)), key=lambda i: (jobs[i].ready(tier), jobs[i].release, i)
            )
            self.ready[tier] = [job.ready(tier) for job in jobs]
            self.proc[tier] = [job.processing(tier) for job in jobs]

    def evaluate(self, tiers: Sequence[Tier]) -> tuple[int, int, int]:
        """(weighted, unweighted, last_completion) for one tier vector."""
        jobs = self.jobs
        weighted = 0
        unweighted = 0
        last = 0
        for i, job in enumerate(jobs):
            if tiers[i] is Tier.DEVICE:
                response = self.device_response[i]
                unweighted += response
                weighted += job.weight * response
                last = max(last, job.release + response)
        for tier in (Tier.CLOUD, Tier.EDGE):
            cursor = 0
            ready = self.ready[tier]
            proc = self.proc[tier]
            for i in self.order[tier]:
                if tiers[i] is not tier:
                    continue
                start = cursor if cursor > ready[i] else ready[i]
                cursor = start + proc[i]
                response = cursor - jobs[i].release
                unweighted += response
                weighted += jobs[i].weight * response
                last = max(last, cursor)
        return weighted, unweighted, last


def brute_force(
    jobs: Sequence[Job],
    policy: DispatchPolicy = DEFAULT_POLICY,
    objective_mode: ObjectiveMode = ObjectiveMode.WEIGHTED,
) -> tuple[Assignment, ScheduleMetrics]:
    """Exhaustive optimum over all 3^n assignments.

    Ties resolve to the lexicographically smallest tier vector (device <
    edge < cloud per job). The winner is re-simulated through the public
    path so the returned metrics carry all three figures.
    """
    if not jobs:
        raise ValueError("job list must be non-empty")
    if len(jobs) > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force is limited to {BRUTE_FORCE_LIMIT} jobs, got {len(jobs)}"
        )
    evaluator = _LeanEvaluator(jobs)
    weighted_mode = objective_mode is ObjectiveMode.WEIGHTED
    best_value: int | None = None
    best_tiers: tuple[Tier, ...] | None = None
    for tiers in itertools.product((Tier.DEVICE, Tier.EDGE, Tier.CLOUD), repeat=len(jobs)):
        weighted, unweighted, _ = evaluator.evaluate(tiers)
        value = weighted if weighted_mode else unweighted
        if best_value is None or value < best_value:
            best_value = value
            best_tiers = tiers
    assert best_tiers is not None
    assignment = {job.id: tier for job, tier in zip(jobs, best_tiers)}
    metrics = objective(simulate(jobs, assignment, policy), jobs)
    return assignment, metrics
