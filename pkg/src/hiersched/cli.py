"""Command-line front end.

Subcommands:
  place      per-workload tier choice with the per-tier totals
  schedule   search result vs the fixed baselines on the job instance
  oracle     exhaustive optimum for small job instances
  timeline   per-job transmission/processing windows for one strategy
  reproduce  recompute the reference tables and diff against the goldens
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .dispatch import format_timeline, simulate, timeline_records
from .heuristic import BaselineStrategy, SearchConfig, baseline, brute_force, solve
from .jobs import Assignment, Job, ObjectiveMode, ScheduleMetrics, objective
from .latency import round_half_up
from .model import Tier
from .placement import choose_layer
from .report import reproduce_tables
from .scenario import Scenario, ScenarioError, bundled_scenario_path, load_scenario

__all__ = ["main"]


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--scenario",
        default=None,
        metavar="PATH",
        help="scenario file (default: the bundled reference scenario)",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (default: text)",
    )


def _add_objective(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--objective",
        choices=tuple(mode.value for mode in ObjectiveMode),
        default=ObjectiveMode.WEIGHTED.value,
        help="objective optimized by the search (default: weighted)",
    )


def _load(args: argparse.Namespace) -> Scenario:
    path = args.scenario if args.scenario is not None else bundled_scenario_path()
    return load_scenario(path)


def _require_jobs(scenario: Scenario) -> list[Job]:
    if not scenario.jobs:
        raise ScenarioError(f"scenario {scenario.name!r} has no jobs")
    return list(scenario.jobs)


def _assignment_records(assignment: Assignment, jobs: Sequence[Job]) -> dict[str, str]:
    return {job.id: assignment[job.id].label for job in jobs}


def _metrics_records(metrics: ScheduleMetrics) -> dict[str, int]:
    return {
        "weighted_total": metrics.weighted_total,
        "unweighted_total": metrics.unweighted_total,
        "last_completion": metrics.last_completion,
    }


def _cmd_place(args: argparse.Namespace) -> int:
    scenario = _load(args)
    rows = []
    for workload in scenario.workloads:
        decision = choose_layer(workload, scenario.topology, scenario.calibration)
        rows.append(
            {
                "workload": workload.id,
                "layer": decision.chosen_tier.label,
                "t_min": round_half_up(decision.t_min),
                "cloud": round_half_up(decision.estimate.total(Tier.CLOUD)),
                "edge": round_half_up(decision.estimate.total(Tier.EDGE)),
                "device": round_half_up(decision.estimate.total(Tier.DEVICE)),
            }
        )
    if args.format == "json":
        print(json.dumps({"scenario": scenario.name, "placements": rows}, indent=2))
        return 0
    header = f"{'workload':<10}{'layer':<10}{'cloud':>10}{'edge':>10}{'device':>10}{'t_min':>10}"
    print(header)
    print("-" * len(header))
    for row in rows:
        print(
            f"{row['workload']:<10}{row['layer']:<10}"
            f"{row['cloud']:>10}{row['edge']:>10}{row['device']:>10}{row['t_min']:>10}"
        )
    return 0


def _cmd_schedule(args: argparse.Namespace) -> int:
    scenario = _load(args)
    jobs = _require_jobs(scenario)
    config = SearchConfig(
        max_iterations=args.max_iterations,
        objective_mode=ObjectiveMode(args.objective),
    )
    rows: list[dict] = []
    assignment, metrics = solve(jobs, config)
    rows.append({"strategy": "heuristic", **_metrics_records(metrics)})
    for strategy in BaselineStrategy:
        _, metrics = baseline(strategy, jobs)
        rows.append({"strategy": strategy.value, **_metrics_records(metrics)})
    if args.format == "json":
        print(
            json.dumps(
                {
                    "scenario": scenario.name,
                    "objective": args.objective,
                    "strategies": rows,
                    "heuristic_assignment": _assignment_records(assignment, jobs),
                },
                indent=2,
            )
        )
        return 0
    header = f"{'strategy':<18}{'weighted':>10}{'unweighted':>12}{'last':>8}"
    print(header)
    print("-" * len(header))
    for row in rows:
        print(
            f"{row['strategy']:<18}{row['weighted_total']:>10}"
            f"{row['unweighted_total']:>12}{row['last_completion']:>8}"
        )
    print()
    placed = _assignment_records(assignment, jobs)
    print("heuristic assignment: " + ", ".join(f"{j}->{m}" for j, m in placed.items()))
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    scenario = _load(args)
    jobs = _require_jobs(scenario)
    assignment, metrics = brute_force(jobs, objective_mode=ObjectiveMode(args.objective))
    if args.format == "json":
        print(
            json.dumps(
                {
                    "scenario": scenario.name,
                    "objective": args.objective,
                    "assignment": _assignment_records(assignment, jobs),
                    "metrics": _metrics_records(metrics),
                },
                indent=2,
            )
        )
        return 0
    print(f"optimal {args.objective} total: {metrics.value(ObjectiveMode(args.objective))}")
    print(
        f"weighted {metrics.weighted_total}, unweighted {metrics.unweighted_total}, "
        f"last completion {metrics.last_completion}"
    )
    for job in jobs:
        print(f"  {job.id} -> {assignment[job.id].label}")
    return 0


_TIMELINE_STRATEGIES = tuple(s.value for s in BaselineStrategy) + ("heuristic", "oracle")


def _cmd_timeline(args: argparse.Namespace) -> int:
    scenario = _load(args)
    jobs = _require_jobs(scenario)
    mode = ObjectiveMode(args.objective)
    if args.strategy == "heuristic":
        assignment, _ = solve(jobs, SearchConfig(objective_mode=mode))
    elif args.strategy == "oracle":
        assignment, _ = brute_force(jobs, objective_mode=mode)
    else:
        assignment, _ = baseline(BaselineStrategy(args.strategy), jobs)
    schedule = simulate(jobs, assignment)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "scenario": scenario.name,
                    "strategy": args.strategy,
                    "timeline": timeline_records(schedule),
                    "metrics": _metrics_records(objective(schedule, jobs)),
                },
                indent=2,
            )
        )
        return 0
    print(format_timeline(schedule))
    metrics = objective(schedule, jobs)
    print()
    print(
        f"weighted {metrics.weighted_total}, unweighted {metrics.unweighted_total}, "
        f"last completion {metrics.last_completion}"
    )
    return 0


def _cmd_reproduce(args: argparse.Namespace) -> int:
    scenario = _load(args)
    report = reproduce_tables(scenario, max_iterations=args.max_iterations)
    if args.format == "json":
        print(json.dumps(report.to_records(), indent=2))
    else:
        print(report.to_text())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hiersched",
        description="Tier placement and multi-job scheduling for cloud/edge/device hierarchies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    place = sub.add_parser("place", help="per-workload tier choice")
    _add_common(place)
    place.set_defaults(func=_cmd_place)

    schedule = sub.add_parser("schedule", help="search vs baseline strategies")
    _add_common(schedule)
    _add_objective(schedule)
    schedule.add_argument("--max-iterations", type=int, default=50, metavar="N")
    schedule.set_defaults(func=_cmd_schedule)

    oracle = sub.add_parser("oracle", help="exhaustive optimum (small instances)")
    _add_common(oracle)
    _add_objective(oracle)
    oracle.set_defaults(func=_cmd_oracle)

    timeline = sub.add_parser("timeline", help="per-job execution windows")
    _add_common(timeline)
    _add_objective(timeline)
    timeline.add_argument(
        "--strategy",
        choices=_TIMELINE_STRATEGIES,
        default="heuristic",
        help="assignment to simulate (default: heuristic)",
    )
    timeline.set_defaults(func=_cmd_timeline)

    reproduce = sub.add_parser("reproduce", help="diff recomputed tables against goldens")
    _add_common(reproduce)
    reproduce.add_argument("--max-iterations", type=int, default=50, metavar="N")
    reproduce.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
