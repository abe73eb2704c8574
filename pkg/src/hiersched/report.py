"""Golden-table reproduction for the bundled reference scenario.

The embedded tables are the published reference figures the bundled
scenario is expected to reproduce: 18 per-workload placement rows (chosen
layer plus the three per-tier totals) and 5 scheduling-strategy rows
(unweighted whole response time plus last completion). reproduce_tables
recomputes everything from the scenario and diffs cell by cell.

Tolerances encode how each figure was obtained. Placement totals allow
±1 unit of rounding. Fixed-tier strategy totals are exact; their last
completions allow ±2 because the reference traces contain two idle units
our dispatch rule does not reproduce. The contention-blind baseline gets
±15% on both figures, and the search result is gated one-sidedly (it may
be better than the reference, never more than the band worse).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .heuristic import BaselineStrategy, SearchConfig, baseline, solve
from .jobs import ObjectiveMode
from .latency import round_half_up
from .model import Tier
from .placement import choose_layer
from .scenario import Scenario

__all__ = [
    "PlacementRow",
    "StrategyRow",
    "ReproductionReport",
    "reproduce_tables",
    "PLACEMENT_GOLDEN",
    "STRATEGY_GOLDEN",
]

# (workload id, expected layer, expected totals for cloud/edge/device)
PLACEMENT_GOLDEN: tuple[tuple[str, Tier, int, int, int], ...] = (
    ("WL1-1", Tier.EDGE, 2091, 1279, 1394),
    ("WL1-2", Tier.EDGE, 4182, 2558, 2788),
    ("WL1-3", Tier.EDGE, 8364, 5116, 5576),
    ("WL1-4", Tier.EDGE, 16728, 10232, 11152),
    ("WL1-5", Tier.EDGE, 33456, 20464, 22304),
    ("WL1-6", Tier.EDGE, 66912, 40928, 44608),
    ("WL2-1", Tier.DEVICE, 212, 109, 79),
    ("WL2-2", Tier.DEVICE, 424, 218, 158),
    ("WL2-3", Tier.DEVICE, 848, 436, 316),
    ("WL2-4", Tier.DEVICE, 1696, 872, 632),
    ("WL2-5", Tier.DEVICE, 3392, 1744, 1264),
    ("WL2-6", Tier.DEVICE, 6784, 3488, 2528),
    ("WL3-1", Tier.EDGE, 3115, 2931, 3618),
    ("WL3-2", Tier.EDGE, 6230, 5862, 7236),
    ("WL3-3", Tier.EDGE, 12460, 11724, 14472),
    ("WL3-4", Tier.EDGE, 24920, 23448, 28944),
    ("WL3-5", Tier.EDGE, 49840, 46896, 57888),
    ("WL3-6", Tier.EDGE, 99680, 93792, 115776),
)

PLACEMENT_TOTAL_TOLERANCE = 1


@dataclass(frozen=True)
class StrategyGolden:
    label: str
    total: int
    last: int
    total_bounds: tuple[int, int]
    last_bounds: tuple[int, int]


def _band(value: int, pct: float) -> tuple[int, int]:
    return (math.floor(value * (1 - pct)), math.ceil(value * (1 + pct)))


STRATEGY_GOLDEN: tuple[StrategyGolden, ...] = (
    StrategyGolden("heuristic", 150, 43, (0, 160), (0, 50)),
    StrategyGolden("per_job_optimal", 227, 67, _band(227, 0.15), _band(67, 0.15)),
    StrategyGolden("all_edge", 291, 74, (291, 291), (72, 76)),
    StrategyGolden("all_cloud", 416, 100, (416, 416), (98, 102)),
    StrategyGolden("all_device", 366, 94, (366, 366), (94, 94)),
)

# The search must beat the worst strategy by at least this margin.
IMPROVEMENT_FLOOR = 0.33


@dataclass(frozen=True)
class PlacementRow:
    workload_id: str
    expected_layer: Tier
    chosen_layer: Tier | None
    expected: tuple[int, int, int]  # cloud, edge, device
    computed: tuple[int, int, int] | None
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class StrategyRow:
    label: str
    reference_total: int
    reference_last: int
    total: int | None
    last: int | None
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ReproductionReport:
    scenario_name: str
    placement_rows: tuple[PlacementRow, ...]
    strategy_rows: tuple[StrategyRow, ...]
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return (
            all(row.ok for row in self.placement_rows)
            and all(row.ok for row in self.strategy_rows)
            and all(passed for _, passed, _ in self.checks)
        )

    def to_records(self) -> dict:
        return {
            "scenario": self.scenario_name,
            "ok": self.ok,
            "placement": [
                {
                    "workload": row.workload_id,
                    "expected_layer": row.expected_layer.label,
                    "chosen_layer": row.chosen_layer.label if row.chosen_layer else None,
                    "expected_totals": {
                        "cloud": row.expected[0],
                        "edge": row.expected[1],
                        "device": row.expected[2],
                    },
                    "computed_totals": None
                    if row.computed is None
                    else {
                        "cloud": row.computed[0],
                        "edge": row.computed[1],
                        "device": row.computed[2],
                    },
                    "ok": row.ok,
                    "detail": row.detail,
                }
                for row in self.placement_rows
            ],
            "strategies": [
                {
                    "strategy": row.label,
                    "reference": {"total": row.reference_total, "last": row.reference_last},
                    "computed": {"total": row.total, "last": row.last},
                    "ok": row.ok,
                    "detail": row.detail,
                }
                for row in self.strategy_rows
            ],
            "checks": [
                {"name": name, "ok": passed, "detail": detail}
                for name, passed, detail in self.checks
            ],
        }

    def to_text(self) -> str:
        lines = [f"scenario: {self.scenario_name}", ""]
        header = (
            f"{'workload':<10}{'layer':<10}{'ref layer':<11}"
            f"{'cloud':>9}{'edge':>9}{'device':>9}  status"
        )
        lines.append(header)
        lines.append("-" * len(header))
        for row in self.placement_rows:
            chosen = row.chosen_layer.label if row.chosen_layer else "-"
            computed = row.computed or ("-", "-", "-")
            mark = "ok" if row.ok else f"MISMATCH {row.detail}".rstrip()
            lines.append(
                f"{row.workload_id:<10}{chosen:<10}{row.expected_layer.label:<11}"
                f"{computed[0]:>9}{computed[1]:>9}{computed[2]:>9}  {mark}"
            )
        lines.append("")
        header2 = f"{'strategy':<18}{'total':>8}{'ref':>8}{'last':>8}{'ref':>8}  status"
        lines.append(header2)
        lines.append("-" * len(header2))
        for row in self.strategy_rows:
            mark = "ok" if row.ok else f"MISMATCH {row.detail}".rstrip()
            lines.append(
                f"{row.label:<18}{row.total if row.total is not None else '-':>8}"
                f"{row.reference_total:>8}"
                f"{row.last if row.last is not None else '-':>8}{row.reference_last:>8}  {mark}"
            )
        lines.append("")
        for name, passed, detail in self.checks:
            lines.append(f"{'ok' if passed else 'FAIL':<6}{name}: {detail}")
        lines.append("")
        lines.append("all golden checks passed" if self.ok else "golden mismatches found")
        return "\n".join(lines)


def _placement_rows(scenario: Scenario) -> tuple[PlacementRow, ...]:
    rows = []
    for workload_id, layer, cloud, edge, device in PLACEMENT_GOLDEN:
        expected = (cloud, edge, device)
        try:
            workload = scenario.workload(workload_id)
        except KeyError:
            rows.append(
                PlacementRow(
                    workload_id=workload_id,
                    expected_layer=layer,
                    chosen_layer=None,
                    expected=expected,
                    computed=None,
                    ok=False,
                    detail="workload missing from scenario",
                )
            )
            continue
        decision = choose_layer(workload, scenario.topology, scenario.calibration)
        computed = tuple(
            round_half_up(decision.estimate.total(t)) for t in (Tier.CLOUD, Tier.EDGE, Tier.DEVICE)
        )
        problems = []
        if decision.chosen_tier is not layer:
            problems.append(f"layer {decision.chosen_tier.label} != {layer.label}")
        for got, want, name in zip(computed, expected, ("cloud", "edge", "device")):
            if abs(got - want) > PLACEMENT_TOTAL_TOLERANCE:
                problems.append(f"{name} {got} != {want}")
        rows.append(
            PlacementRow(
                workload_id=workload_id,
                expected_layer=layer,
                chosen_layer=decision.chosen_tier,
                expected=expected,
                computed=computed,  # type: ignore[arg-type]
                ok=not problems,
                detail="; ".join(problems),
            )
        )
    return tuple(rows)


def _strategy_rows(
    scenario: Scenario, max_iterations: int
) -> tuple[tuple[StrategyRow, ...], tuple[tuple[str, bool, str], ...]]:
    rows = []
    totals: dict[str, int] = {}
    if not scenario.jobs:
        rows = [
            StrategyRow(g.label, g.total, g.last, None, None, False, "scenario has no jobs")
            for g in STRATEGY_GOLDEN
        ]
        return tuple(rows), (("jobs present", False, "scenario has no jobs"),)

    config = SearchConfig(max_iterations=max_iterations, objective_mode=ObjectiveMode.UNWEIGHTED)
    results: dict[str, tuple[int, int]] = {}
    _, metrics = solve(list(scenario.jobs), config)
    results["heuristic"] = (metrics.unweighted_total, metrics.last_completion)
    for strategy in BaselineStrategy:
        _, metrics = baseline(strategy, list(scenario.jobs))
        results[strategy.value] = (metrics.unweighted_total, metrics.last_completion)

    for golden in STRATEGY_GOLDEN:
        total, last = results[golden.label]
        totals[golden.label] = total
        problems = []
        if not golden.total_bounds[0] <= total <= golden.total_bounds[1]:
            problems.append(f"total {total} outside {golden.total_bounds}")
        if not golden.last_bounds[0] <= last <= golden.last_bounds[1]:
            problems.append(f"last {last} outside {golden.last_bounds}")
        rows.append(
            StrategyRow(
                label=golden.label,
                reference_total=golden.total,
                reference_last=golden.last,
                total=total,
                last=last,
                ok=not problems,
                detail="; ".join(problems),
            )
        )

    heuristic_total = totals["heuristic"]
    baseline_totals = {k: v for k, v in totals.items() if k != "heuristic"}
    worst = max(baseline_totals.values())
    checks = (
        (
            "search beats every baseline",
            all(heuristic_total < v for v in baseline_totals.values()),
            f"{heuristic_total} vs " + ", ".join(f"{k}={v}" for k, v in sorted(baseline_totals.items())),
        ),
        (
            "improvement floor",
            heuristic_total <= (1 - IMPROVEMENT_FLOOR) * worst,
            f"{heuristic_total} <= {(1 - IMPROVEMENT_FLOOR) * worst:.1f} "
            f"({IMPROVEMENT_FLOOR:.0%} below worst baseline {worst})",
        ),
    )
    return tuple(rows), checks


def reproduce_tables(scenario: Scenario, max_iterations: int = 50) -> ReproductionReport:
    """Recompute both reference tables from a scenario and diff against the
    embedded golden values."""
    placement_rows = _placement_rows(scenario)
    strategy_rows, checks = _strategy_rows(scenario, max_iterations)
    return ReproductionReport(
        scenario_name=scenario.name,
        placement_rows=placement_rows,
        strategy_rows=strategy_rows,
        checks=checks,
    )
