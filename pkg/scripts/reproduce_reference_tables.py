#!/usr/bin/env python3
"""Recompute the reference placement and scheduling tables and diff them
against the golden values embedded in the package.

Exit code 0 means every cell matched within its tolerance.

Usage:
    python scripts/reproduce_reference_tables.py [--scenario PATH] [--json]
"""

import argparse
import json
import sys

from hiersched import bundled_scenario_path, load_scenario, reproduce_tables


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenario", default=None, help="scenario file (default: bundled)")
    parser.add_argument("--max-iterations", type=int, default=50)
    parser.add_argument("--json", action="store_true", help="emit machine-readable records")
    args = parser.parse_args()

    path = args.scenario if args.scenario is not None else bundled_scenario_path()
    report = reproduce_tables(load_scenario(path), max_iterations=args.max_iterations)
    if args.json:
        print(json.dumps(report.to_records(), indent=2))
    else:
        print(report.to_text())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
