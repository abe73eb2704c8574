#!/usr/bin/env python3
"""Measure the greedy+search heuristic against the exhaustive optimum on
random instances small enough to enumerate.

Reports, per objective mode: how often the search lands exactly on the
optimum, how often it is within the 15% band, the worst relative gap, and
how much the neighborhood search improves on the plain greedy start.

Usage:
    python scripts/search_vs_oracle.py [--instances 200] [--seed 1729]
                                       [--min-jobs 3] [--max-jobs 6]
"""

import argparse
import random
import time

from hiersched import (
    ObjectiveMode,
    SearchConfig,
    brute_force,
    greedy_initial,
    neighborhood_search,
    objective,
    random_jobs,
    simulate,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=200)
    parser.add_argument("--seed", type=int, default=1729)
    parser.add_argument("--min-jobs", type=int, default=3)
    parser.add_argument("--max-jobs", type=int, default=6)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    instances = [
        random_jobs(rng, rng.randint(args.min_jobs, args.max_jobs))
        for _ in range(args.instances)
    ]

    for mode in ObjectiveMode:
        exact = 0
        within_band = 0
        worst_gap = 0.0
        greedy_gaps = []
        start = time.perf_counter()
        for jobs in instances:
            initial = greedy_initial(jobs)
            greedy_value = objective(simulate(jobs, initial), jobs).value(mode)
            _, searched = neighborhood_search(initial, jobs, SearchConfig(objective_mode=mode))
            _, optimal = brute_force(jobs, objective_mode=mode)
            value, optimum = searched.value(mode), optimal.value(mode)
            gap = value / optimum - 1
            worst_gap = max(worst_gap, gap)
            exact += value == optimum
            within_band += value <= 1.15 * optimum
            greedy_gaps.append(greedy_value / optimum - 1)
        elapsed = time.perf_counter() - start

        n = len(instances)
        print(f"{mode.value} objective ({n} instances, {elapsed:.1f}s)")
        print(f"  search == optimum      {exact}/{n}")
        print(f"  search within 15%      {within_band}/{n}")
        print(f"  worst search gap       {worst_gap:.1%}")
        print(f"  mean greedy-only gap   {sum(greedy_gaps) / n:.1%}")
        print(f"  worst greedy-only gap  {max(greedy_gaps):.1%}")
        print()


if __name__ == "__main__":
    main()
