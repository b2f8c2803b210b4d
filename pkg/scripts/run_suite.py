"""Run the full property suite and write text and JSON reports.

    python scripts/run_suite.py --seed 42 --trials 200 --out results/suite.json
"""

import argparse
import json
import sys
from pathlib import Path

from sphsep.harness import SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--out", default="results/suite.json")
    args = ap.parse_args()

    report = run_suite(SuiteConfig(seed=args.seed, trials=args.trials))
    print(report.to_text())
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(report.to_json(), indent=2) + "\n")
    out.with_suffix(".txt").write_text(report.to_text() + "\n")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
