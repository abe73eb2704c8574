"""Deterministic dispatch simulator for a fixed job-to-tier assignment.

The cloud and edge servers each process one job at a time; end devices are
private to their job. Transmissions overlap freely (the uplink is not a
contended resource here), so a job becomes ready on a shared machine once
its data has arrived, and the machine serves ready jobs first-come
first-served.

`validate` re-checks a finished schedule against the hard constraints
independently of how it was produced, so simulator and checker can disagree
only if one of them is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .jobs import Assignment, Job, Schedule, ScheduledJob
from .model import SHARED_TIERS, Tier

__all__ = [
    "DispatchPolicy",
    "DEFAULT_POLICY",
    "Violation",
    "simulate",
    "validate",
    "timeline_records",
    "format_timeline",
]


@dataclass(frozen=True)
class DispatchPolicy:
    """How a shared machine orders its queue.

    Only first-come first-served by data-arrival time is implemented; the
    field exists so alternative disciplines slot in without touching
    callers.
    """

    queue_order: str = "fifo_ready"

    def __post_init__(self) -> None:
        if self.queue_order != "fifo_ready":
            raise ValueError(f"unknown queue order {self.queue_order!r}")


DEFAULT_POLICY = DispatchPolicy()


def _check_assignment(jobs: Sequence[Job], assignment: Assignment) -> None:
    seen = set()
    for job in jobs:
        if job.id in seen:
            raise ValueError(f"duplicate job id {job.id!r}")
        seen.add(job.id)
        if job.id not in assignment:
            raise ValueError(f"assignment is missing job {job.id!r}")


def simulate(
    jobs: Sequence[Job],
    assignment: Assignment,
    policy: DispatchPolicy = DEFAULT_POLICY,
) -> Schedule:
    """Run the given assignment to completion and return the timed schedule.

    Device jobs start the moment they are released. On each shared machine
    the queue is served in order of data arrival, breaking ties by release
    time and then by position in `jobs`; the machine never idles while a
    ready job is waiting.
    """
    _check_assignment(jobs, assignment)
    entries: dict[str, ScheduledJob] = {}

    for job in jobs:
        if assignment[job.id] is Tier.DEVICE:
            entries[job.id] = ScheduledJob(
                job_id=job.id,
                tier=Tier.DEVICE,
                release=job.release,
                transmission_end=job.release,
                start=job.release,
                end=job.release + job.device_processing,
            )

    for tier in SHARED_TIERS:
        queue = [
            (job.ready(tier), job.release, idx, job)
            for idx, job in enumerate(jobs)
            if assignment[job.id] is tier
        ]
        queue.sort(key=lambda item: item[:3])
        cursor = 0
        for ready, _, _, job in queue:
            start = max(cursor, ready)
            end = start + job.processing(tier)
            entries[job.id] = ScheduledJob(
                job_id=job.id,
                tier=tier,
                release=job.release,
                transmission_end=job.release + job.transmission(tier),
                start=start,
                end=end,
            )
            cursor = end

    return Schedule(entries=tuple(entries[job.id] for job in jobs))


@dataclass(frozen=True)
class Violation:
    """One broken scheduling constraint."""

    constraint: str
    message: str
    job_ids: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.constraint}: {self.message}"


def validate(schedule: Schedule, jobs: Sequence[Job]) -> list[Violation]:
    """Check a schedule against the hard constraints; empty list means valid.

    Checks: shared machines run one job at a time, every job runs
    contiguously for exactly its cost, all times are integers, and no job
    starts before its data arrives.
    """
    violations: list[Violation] = []
    by_id = {job.id: job for job in jobs}

    for entry in schedule:
        job = by_id.get(entry.job_id)
        if job is None:
            violations.append(
                Violation("unknown_job", f"{entry.job_id!r} is not in the job list", (entry.job_id,))
            )
            continue

        for name, value in (
            ("transmission_end", entry.transmission_end),
            ("start", entry.start),
            ("end", entry.end),
        ):
            if not isinstance(value, int) or isinstance(value, bool):
                violations.append(
                    Violation(
                        "integer_times",
                        f"{entry.job_id} has non-integer {name} {value!r}",
                        (entry.job_id,),
                    )
                )

        expected_tx_end = job.release + job.transmission(entry.tier)
        if entry.transmission_end != expected_tx_end:
            violations.append(
                Violation(
                    "contiguity",
                    f"{entry.job_id} transmission ends at {entry.transmission_end}, "
                    f"expected {expected_tx_end}",
                    (entry.job_id,),
                )
            )
        if entry.end - entry.start != job.processing(entry.tier):
            violations.append(
                Violation(
                    "contiguity",
                    f"{entry.job_id} occupies [{entry.start}, {entry.end}) but needs "
                    f"{job.processing(entry.tier)} units on {entry.tier.label}",
                    (entry.job_id,),
                )
            )
        if entry.start < job.release + job.transmission(entry.tier):
            violations.append(
                Violation(
                    "ready_time",
                    f"{entry.job_id} starts at {entry.start} before its data arrives at "
                    f"{job.release + job.transmission(entry.tier)}",
                    (entry.job_id,),
                )
            )

    for tier in SHARED_TIERS:
        running = sorted(schedule.on_tier(tier), key=lambda e: (e.start, e.end))
        for earlier, later in zip(running, running[1:]):
            if later.start < earlier.end:
                violations.append(
                    Violation(
                        "mutual_exclusion",
                        f"{earlier.job_id} [{earlier.start}, {earlier.end}) overlaps "
                        f"{later.job_id} [{later.start}, {later.end}) on {tier.label}",
                        (earlier.job_id, later.job_id),
                    )
                )

    return violations


def timeline_records(schedule: Schedule) -> list[dict]:
    """Flat per-job records (machine, windows, response) sorted by start time."""
    records = []
    for entry in sorted(schedule, key=lambda e: (e.start, e.end, e.job_id)):
        records.append(
            {
                "job": entry.job_id,
                "machine": entry.machine,
                "release": entry.release,
                "transmission": [entry.release, entry.transmission_end],
                "processing": [entry.start, entry.end],
                "response": entry.end - entry.release,
            }
        )
    return records


def format_timeline(schedule: Schedule) -> str:
    """Fixed-width text table of the schedule, one row per job."""
    records = timeline_records(schedule)
    header = f"{'job':<8}{'machine':<14}{'release':>8}{'tx':>12}{'run':>14}{'response':>10}"
    lines = [header, "-" * len(header)]
    for rec in records:
        tx = "-" if rec["transmission"][0] == rec["transmission"][1] else (
            f"{rec['transmission'][0]}..{rec['transmission'][1]}"
        )
        run = f"{rec['processing'][0]}..{rec['processing'][1]}"
        lines.append(
            f"{rec['job']:<8}{rec['machine']:<14}{rec['release']:>8}{tx:>12}{run:>14}{rec['response']:>10}"
        )
    return "\n".join(lines)
