"""Command-line entry point: ``goodmaps <kind> [inputs] [options]``.

Every job writes one JSON report (sorted keys, two-space indent) to
``--out`` or standard output.  Exit codes: 0 verdict computed, 1 property
violated, 2 input error, 3 resource guard.

Input formats
-------------

Space file::

    {"points": 2, "specializations": [[1, 0]]}

A pair ``[a, b]`` declares ``a <= b``, that is ``a`` lies in the closure of
``{b}``.  The reflexive-transitive closure is taken, so any list of in-range
pairs is accepted.  An optional ``"subset": [0, 1]`` names a subset for
``check-constructible``.

Map file::

    {"source": <space>, "target": <space>, "assignment": [0, 0, 1]}

Variety file::

    {"vars": ["x", "y"], "map_to": ["z"], "components": ["x"],
     "strata": [{"present": ["x*y - 1"], "absent": []}]}

``strata`` defaults to the whole source.  An ``absent`` list that is empty
or missing removes nothing.  ``good-witness`` reads the irreducible closed
set from ``"z"`` (generator list, default ``[]``) and an optional open part
from ``"j"``.

Polynomial grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*     # "/" only by a nonzero constant
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | NAME | "(" expr ")"

``NAME`` is one of the names listed in ``vars``; coefficients are exact
rationals written as quotients, e.g. ``3/4*x^2 - y + 1``.  Parse errors
report the line of the JSON file and the column inside the string.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import metadata
from pathlib import Path

from .affine.constructible import AffineConstructible, Stratum, closure, stratum
from .affine.image import PolyMap, chevalley_image, good_witness
from .algebra.ideal import Ideal
from .algebra.parse import parse_polynomial
from .algebra.poly import Ring
from .config import FINITE, SweepConfig
from .errors import GoodmapError, MisuseError, ParseError, ResourceLimitError, SizeCapError
from .finite.constructible import find_nonconstructible_image, is_constructible_criterion
from .finite.enumerate import all_preorders, all_spaces_up_to, exhaustive_maps, random_monotone_map
from .finite.goodness import is_good_definition, is_weak_good
from .finite.invariants import (
    EXHAUSTIVE_ONLY,
    MAP_INVARIANTS,
    PAIR_INVARIANTS,
    SPACE_INVARIANTS,
    nonsober_locality_findings,
)
from .finite.space import FiniteSpace, PointSet, SpaceMap, make_space

KINDS = ("check-good", "check-weak-good", "check-constructible", "image", "good-witness", "proptest", "replay")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(GoodmapError):
    pass


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


@dataclass
class JobSpec:
    kind: str
    inputs: list[str] = field(default_factory=list)
    seed: int = SweepConfig.seed
    # proptest: largest exhaustive point count; other jobs: largest input space
    size_cap: int | None = None
    output: str | None = None
    samples: int = SweepConfig.samples
    composition_samples: int = SweepConfig.composition_samples
    counterexample_dir: str | None = None
    timing: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown job kind {self.kind!r}")
        needed = 0 if self.kind == "proptest" else 1
        if len(self.inputs) != needed:
            raise InputError(f"{self.kind} takes {needed} input file(s), got {len(self.inputs)}")
        if self.size_cap is None:
            self.size_cap = SweepConfig.exhaustive_max if self.kind == "proptest" else FINITE.size_cap
        if self.size_cap < 1:
            raise InputError("size cap must be positive")


# -- parsing --------------------------------------------------------------------


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return text, json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from exc


def _int_list(value, what):
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise InputError(f"{what} must be a list of integers")
    return value


def space_from_json(data, size_cap: int = FINITE.size_cap) -> FiniteSpace:
    if not isinstance(data, dict) or "points" not in data:
        raise InputError("space needs a 'points' field")
    n = data["points"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputError("'points' must be a nonnegative integer")
    if n > size_cap:
        raise SizeCapError(f"space has {n} points, cap is {size_cap}")
    pairs = data.get("specializations", [])
    if not isinstance(pairs, list):
        raise InputError("'specializations' must be a list of pairs")
    for p in pairs:
        if len(_int_list(p, "each specialization")) != 2:
            raise InputError(f"specialization {p} is not a pair")
    try:
        return make_space(n, [tuple(p) for p in pairs])
    except MisuseError as exc:
        raise InputError(str(exc)) from exc


def space_to_json(space: FiniteSpace) -> dict:
    return {"points": space.n_points, "specializations": [list(p) for p in space.relation_pairs()]}


def map_from_json(data, size_cap: int = FINITE.size_cap) -> SpaceMap:
    if not isinstance(data, dict) or not {"source", "target", "assignment"} <= set(data):
        raise InputError("map needs 'source', 'target' and 'assignment'")
    src = space_from_json(data["source"], size_cap)
    tgt = space_from_json(data["target"], size_cap)
    assignment = _int_list(data["assignment"], "'assignment'")
    if len(assignment) != src.n_points or any(not 0 <= a < tgt.n_points for a in assignment):
        raise InputError("assignment does not send source points to target points")
    try:
        return SpaceMap(src, tgt, tuple(assignment))
    except MisuseError as exc:
        raise InputError(str(exc)) from exc


def map_to_json(f: SpaceMap) -> dict:
    return {"source": space_to_json(f.source), "target": space_to_json(f.target),
            "assignment": list(f.assignment)}


def _line_of(text: str, s: str) -> int | None:
    at = text.find(json.dumps(s))
    return None if at < 0 else text.count("\n", 0, at) + 1


def _polys(raw, ring, text, what):
    if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
        raise InputError(f"{what} must be a list of polynomial strings")
    return [parse_polynomial(s, ring, line=_line_of(text, s)) for s in raw]


def _names(raw, what):
    if not isinstance(raw, list) or not all(isinstance(s, str) and s.isidentifier() for s in raw):
        raise InputError(f"{what} must be a list of identifiers")
    if len(set(raw)) != len(raw):
        raise InputError(f"{what} repeats a name")
    return tuple(raw)


def variety_from_json(data, text: str = ""):
    """``(PolyMap, source set)`` from a variety file."""
    if not isinstance(data, dict) or "vars" not in data:
        raise InputError("variety needs a 'vars' field")
    src = Ring(_names(data["vars"], "'vars'"))
    tgt = Ring(_names(data.get("map_to", []), "'map_to'"))
    comps = _polys(data.get("components", []), src, text, "'components'")
    if len(comps) != tgt.nvars:
        raise InputError("need one component per 'map_to' variable")
    f = PolyMap(src, tgt, tuple(comps))
    raw_strata = data.get("strata", [{"present": []}])
    if not isinstance(raw_strata, list):
        raise InputError("'strata' must be a list")
    strata = []
    for st in raw_strata:
        if not isinstance(st, dict):
            raise InputError("each stratum must be an object")
        present = _polys(st.get("present", []), src, text, "'present'")
        absent = _polys(st.get("absent", []), src, text, "'absent'")
        strata.append(stratum(src, present, absent or None))
    return f, AffineConstructible(src, tuple(strata))


# -- serialization of results ---------------------------------------------------


def _points(s: PointSet) -> list[int]:
    return list(s.members)


def _ideal_json(ideal: Ideal) -> list[str]:
    return [str(g) for g in ideal.groebner()]


def _stratum_json(st: Stratum) -> dict:
    return {"present": _ideal_json(st.present), "absent": _ideal_json(st.absent)}


def _constructible_json(s: AffineConstructible) -> list[dict]:
    return [_stratum_json(st) for st in s.strata]


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


# -- jobs ---------------------------------------------------------------------------


def _check_good(job, text, data):
    f = map_from_json(data, job.size_cap)
    v = is_good_definition(f)
    witnesses = [{"U": _points(u), "W": None if w is None else _points(w)} for u, w in v.witness_table]
    return {"good": v.good, "failing": [_points(u) for u in v.failing]}, witnesses


def _check_weak_good(job, text, data):
    f = map_from_json(data, job.size_cap)
    v = is_weak_good(f)
    witnesses = [{"U": _points(u), "V": None if w is None else _points(w)} for u, w in v.witness_table]
    return {"weak_good": v.weak_good, "failing": [_points(u) for u in v.failing]}, witnesses


def _check_constructible(job, text, data):
    if isinstance(data, dict) and "assignment" in data:
        f = map_from_json(data, job.size_cap)
        whole = f.image(PointSet(f.source, f.source.full_mask))
        bad = find_nonconstructible_image(f)
        verdicts = {
            "image_constructible": is_constructible_criterion(whole),
            "image": _points(whole),
            "preserves_constructible": bad is None,
        }
        witnesses = [] if bad is None else [{"nonconstructible_image": _points(bad)}]
        return verdicts, witnesses
    space = space_from_json(data, job.size_cap)
    subset = _int_list(data.get("subset", []), "'subset'") if isinstance(data, dict) else []
    if any(not 0 <= x < space.n_points for x in subset):
        raise InputError("subset names a point outside the space")
    e = space.subset(subset)
    return {"constructible": is_constructible_criterion(e), "subset": _points(e)}, []


def _image(job, text, data):
    f, s = variety_from_json(data, text)
    img = chevalley_image(f, s)
    return {"image": _constructible_json(img), "closure": _ideal_json(closure(img))}, []


def _good_witness(job, text, data):
    f, _ = variety_from_json(data, text)
    z = Ideal(f.source, _polys(data.get("z", []), f.source, text, "'z'"))
    j = None
    if "j" in data:
        j = Ideal(f.source, _polys(data["j"], f.source, text, "'j'"))
    w = good_witness(f, z, j)
    verdicts = {
        "closure": _ideal_json(w.closure_ideal),
        "witness": str(w.witness_poly),
        "certified": _stratum_json(w.certified_stratum),
        "image": _constructible_json(w.image),
    }
    return verdicts, [{"witness": str(w.witness_poly), "certificates_checked": True}]


# -- property sweep -------------------------------------------------------------------


class _Tally:
    def __init__(self, names):
        self.counts = {n: {"held": 0, "not_applicable": 0, "violations": 0} for n in names}
        self.counterexamples = []

    def record(self, name, result, payload):
        c = self.counts[name]
        if result is True:
            c["held"] += 1
        elif result is None:
            c["not_applicable"] += 1
        else:
            c["violations"] += 1
            if len(self.counterexamples) < 50:
                self.counterexamples.append({"invariant": name, "message": result, **payload})


def _sweep_maps(maps, names, tally):
    for f in maps:
        payload = {"map": map_to_json(f)}
        for name in names:
            tally.record(name, MAP_INVARIANTS[name](f), payload)


def _random_space(rng, n_max):
    return rng.choice(all_preorders(rng.randint(1, n_max)))


def proptest(job: JobSpec):
    cap = job.size_cap
    rng = random.Random(job.seed)
    stages = {}

    names = sorted(MAP_INVARIANTS)
    tally = _Tally(names)
    maps = list(exhaustive_maps(cap))
    _sweep_maps(maps, names, tally)
    stages["exhaustive_maps"] = {"max_points": cap, "maps": len(maps), "invariants": tally.counts}
    counterexamples = tally.counterexamples

    sampled_names = [n for n in names if n not in EXHAUSTIVE_ONLY]
    tally = _Tally(sampled_names)
    n = cap + 1
    spaces = all_preorders(n)
    sample = [random_monotone_map(rng.choice(spaces), rng.choice(spaces), rng) for _ in range(job.samples)]
    _sweep_maps(sample, sampled_names, tally)
    stages["sampled_maps"] = {"points": n, "maps": len(sample), "invariants": tally.counts}
    counterexamples += tally.counterexamples

    tally = _Tally(sorted(SPACE_INVARIANTS))
    all_spaces = all_spaces_up_to(cap + 1)
    for space in all_spaces:
        for name in sorted(SPACE_INVARIANTS):
            tally.record(name, SPACE_INVARIANTS[name](space), {"space": space_to_json(space)})
    stages["spaces"] = {"max_points": cap + 1, "spaces": len(all_spaces), "invariants": tally.counts}
    counterexamples += tally.counterexamples

    tally = _Tally(sorted(PAIR_INVARIANTS))
    for _ in range(job.composition_samples):
        a, b, c = (_random_space(rng, cap + 1) for _ in range(3))
        f = random_monotone_map(a, b, rng)
        g = random_monotone_map(b, c, rng)
        for name in sorted(PAIR_INVARIANTS):
            tally.record(name, PAIR_INVARIANTS[name](f, g), {"first": map_to_json(f), "second": map_to_json(g)})
    stages["composition"] = {"pairs": job.composition_samples, "invariants": tally.counts}
    counterexamples += tally.counterexamples

    findings = nonsober_locality_findings(maps)
    for side in findings.values():
        side["examples"] = [{"map": map_to_json(e["map"]), "message": e["message"]} for e in side["examples"]]

    verdicts = {"stages": stages, "all_invariants_hold": not counterexamples,
                "nonsober_locality": findings}
    return verdicts, counterexamples


def _write_counterexamples(job, counterexamples):
    if not counterexamples:
        return []
    where = Path(job.counterexample_dir or (Path(job.output).parent if job.output else "."))
    where.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, ce in enumerate(counterexamples):
        path = where / f"counterexample-{job.seed}-{i:03d}.json"
        path.write_text(json.dumps(ce, sort_keys=True, indent=2) + "\n")
        paths.append(str(path))
    return paths


def replay(job, text, data):
    """Re-run the invariant named in a counterexample file on its instance."""
    if not isinstance(data, dict) or "invariant" not in data:
        raise InputError("counterexample file needs an 'invariant' field")
    name = data["invariant"]
    if name in MAP_INVARIANTS and "map" in data:
        result = MAP_INVARIANTS[name](map_from_json(data["map"]))
    elif name in SPACE_INVARIANTS and "space" in data:
        result = SPACE_INVARIANTS[name](space_from_json(data["space"]))
    elif name in PAIR_INVARIANTS and {"first", "second"} <= set(data):
        f, g = map_from_json(data["first"]), map_from_json(data["second"])
        if f.target != g.source:
            raise InputError("maps in the counterexample are not composable")
        result = PAIR_INVARIANTS[name](f, g)
    else:
        raise InputError(f"cannot replay invariant {name!r} with the given fields")
    held = result is True or result is None
    verdicts = {"invariant": name, "reproduced": not held,
                "result": "held" if result is True else "not_applicable" if result is None else result}
    return verdicts, [] if held else [dict(data)]


_HANDLERS = {
    "check-good": _check_good,
    "check-weak-good": _check_weak_good,
    "check-constructible": _check_constructible,
    "image": _image,
    "good-witness": _good_witness,
    "replay": replay,
}


def run(job: JobSpec) -> tuple[dict, int]:
    """Execute ``job``; returns the report and the exit code."""
    report = {"kind": job.kind, "seed": job.seed, "size_cap": job.size_cap, "version": _version()}
    start = time.perf_counter()
    try:
        if job.kind == "proptest":
            report["input_digests"] = {}
            verdicts, counterexamples = proptest(job)
            report["counterexample_files"] = _write_counterexamples(job, counterexamples)
            code = EXIT_OK if not counterexamples else EXIT_VIOLATION
        else:
            path = job.inputs[0]
            text, data = _load(path)
            report["input_digests"] = {Path(path).name: _digest(text)}
            verdicts, counterexamples = _HANDLERS[job.kind](job, text, data)
            code = EXIT_VIOLATION if job.kind == "replay" and verdicts["reproduced"] else EXIT_OK
        report["verdicts"] = verdicts
        report["counterexamples" if job.kind in ("proptest", "replay") else "witnesses"] = counterexamples
    except ResourceLimitError as exc:
        report["error"] = {"type": "resource_guard", "message": str(exc)}
        code = EXIT_RESOURCE
    except (InputError, ParseError, SizeCapError, MisuseError) as exc:
        report["error"] = {"type": "input", "message": str(exc)}
        code = EXIT_INPUT
    if job.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 3)
    return report, code


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(value):
    if isinstance(value, Fraction):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="goodmaps", description="Good-map checkers and property sweeps.")
    sub = parser.add_subparsers(dest="kind", required=True)
    sweep = SweepConfig()
    for kind in KINDS:
        p = sub.add_parser(kind)
        if kind != "proptest":
            p.add_argument("input", help="JSON input file")
        p.add_argument("--seed", type=int, default=sweep.seed)
        p.add_argument("--size-cap", type=int, default=None,
                       help=f"largest exhaustive point count for proptest (default {sweep.exhaustive_max}), "
                            f"largest input space otherwise (default {FINITE.size_cap})")
        p.add_argument("--out", default=None, help="report path; standard output if omitted")
        p.add_argument("--format", choices=["json"], default="json")
        p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
        if kind == "proptest":
            p.add_argument("--samples", type=int, default=sweep.samples)
            p.add_argument("--composition-samples", type=int, default=sweep.composition_samples)
            p.add_argument("--counterexample-dir", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = JobSpec(
            kind=args.kind,
            inputs=[args.input] if hasattr(args, "input") else [],
            seed=args.seed,
            size_cap=args.size_cap,
            output=args.out,
            samples=getattr(args, "samples", SweepConfig.samples),
            composition_samples=getattr(args, "composition_samples", SweepConfig.composition_samples),
            counterexample_dir=getattr(args, "counterexample_dir", None),
            timing=args.timing,
        )
    except InputError as exc:
        print(f"goodmaps: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report, code = run(job)
    text = render(report)
    if job.output:
        Path(job.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
