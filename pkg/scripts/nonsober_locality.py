"""Run both locality equivalences on maps whose relevant side is not sober.

The statements assume sobriety, so nothing here is a violation.  The
script reports how often the equivalences still hold and how often the
only open cover is the trivial one, which makes the check vacuous.

    python3 scripts/nonsober_locality.py --max-points 3
"""

import argparse
import json

from goodmaps.cli import map_to_json
from goodmaps.finite.enumerate import exhaustive_maps
from goodmaps.finite.invariants import nonsober_locality_findings


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-points", type=int, default=3)
    parser.add_argument("--json", action="store_true", help="print the raw findings")
    args = parser.parse_args()

    findings = nonsober_locality_findings(exhaustive_maps(args.max_points))
    if args.json:
        for side in findings.values():
            side["examples"] = [{"map": map_to_json(e["map"]), "message": e["message"]} for e in side["examples"]]
        print(json.dumps(findings, sort_keys=True, indent=2))
        return
    print(f"maps on at most {args.max_points} points")
    for side, data in findings.items():
        nontrivial = data["checked"] - data["trivial_cover_only"]
        print(f"{side:6s} not sober: {data['checked']:5d} maps, {nontrivial:5d} with a nontrivial cover, "
              f"{data['failures']} where locality fails")


if __name__ == "__main__":
    main()
