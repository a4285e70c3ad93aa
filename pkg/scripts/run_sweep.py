"""Run the seeded property sweep and print a one-line summary per stage.

    python3 scripts/run_sweep.py --seed 42 --out sweep.json
"""

import argparse
import json
import sys

from goodmaps.cli import JobSpec, render, run
from goodmaps.config import SweepConfig


def main():
    cfg = SweepConfig()
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=cfg.seed)
    parser.add_argument("--size-cap", type=int, default=cfg.exhaustive_max)
    parser.add_argument("--samples", type=int, default=cfg.samples)
    parser.add_argument("--composition-samples", type=int, default=cfg.composition_samples)
    parser.add_argument("--out", default=None, help="write the full JSON report here")
    args = parser.parse_args()

    job = JobSpec("proptest", seed=args.seed, size_cap=args.size_cap, samples=args.samples,
                  composition_samples=args.composition_samples, output=args.out, timing=True)
    report, code = run(job)
    for stage, data in report["verdicts"]["stages"].items():
        violations = sum(c["violations"] for c in data["invariants"].values())
        held = sum(c["held"] for c in data["invariants"].values())
        print(f"{stage:16s} checks held {held:7d}  violations {violations}")
    print(f"time {report['timing_seconds']}s, exit code {code}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
