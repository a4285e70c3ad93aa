"""Images and good-map witnesses for a few polynomial maps, plus a seeded fuzz.

The fuzz draws random maps, computes images, and compares every image with
the fibre oracle on sample points.  Instances that trip a resource guard
are counted separately.

    python3 scripts/affine_demo.py --fuzz 40 --seed 3
"""

import argparse
import random
import time

from goodmaps.affine.constructible import AffineConstructible, contains_point, stratum, whole_space
from goodmaps.affine.image import PolyMap, chevalley_image, good_witness
from goodmaps.affine.oracle import in_image, random_points
from goodmaps.algebra.ideal import Ideal
from goodmaps.algebra.parse import parse_polynomial
from goodmaps.algebra.poly import Ring
from goodmaps.errors import ResourceLimitError

A2 = Ring(("x", "y"))


def examples():
    P = lambda s, r=A2: parse_polynomial(s, r)
    line = Ring(("z1",))
    plane = Ring(("z1", "z2"))
    hyperbola = PolyMap(A2, line, (P("x"),))
    source = AffineConstructible(A2, (stratum(A2, [P("x*y - 1")]),))
    print("hyperbola projection:", chevalley_image(hyperbola, source))
    w = good_witness(hyperbola, Ideal(A2, [P("x*y - 1")]))
    print("  witness s =", w.witness_poly)
    xy = PolyMap(A2, plane, (P("x"), P("x*y")))
    print("(x, xy):", chevalley_image(xy, whole_space(A2)))
    print("  witness s =", good_witness(xy, Ideal.zero(A2)).witness_poly)


def fuzz(trials, seed, outputs, degree):
    rng = random.Random(seed)
    src = Ring(("x", "y", "w")[: max(2, outputs)])
    tgt = Ring(tuple(f"z{i + 1}" for i in range(outputs)))

    def rpoly(deg, nterms):
        out = {}
        for _ in range(nterms):
            e = [0] * src.nvars
            for _ in range(rng.randint(0, deg)):
                e[rng.randrange(src.nvars)] += 1
            out[tuple(e)] = rng.choice([-2, -1, 1, 1, 2, 3])
        return src(out)

    mismatches = guarded = 0
    start = time.perf_counter()
    for trial in range(trials):
        f = PolyMap(src, tgt, tuple(rpoly(degree, 3) for _ in range(outputs)))
        present = [rpoly(2, 3)] if rng.random() < 0.6 else []
        absent = [rpoly(1, 2)] if rng.random() < 0.5 else None
        s = AffineConstructible(src, (stratum(src, present, absent),))
        try:
            image = chevalley_image(f, s)
        except ResourceLimitError as exc:
            guarded += 1
            print(f"trial {trial:3d}: guard ({exc})")
            continue
        points = random_points(outputs, 40, seed=trial)
        for _ in range(10):
            p = [rng.randint(-2, 2) for _ in range(src.nvars)]
            if contains_point(s, p):
                points.append(f(p))
        bad = [p for p in points if contains_point(image, p) != in_image(f, s, p)]
        mismatches += len(bad)
        print(f"trial {trial:3d}: {len(image)} strata, {len(points)} points, {len(bad)} mismatches")
    print(f"{trials} trials, {mismatches} mismatches, {guarded} guarded, {time.perf_counter() - start:.1f}s")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--fuzz", type=int, default=0, help="number of random maps")
    parser.add_argument("--seed", type=int, default=3)
    parser.add_argument("--outputs", type=int, default=2)
    parser.add_argument("--degree", type=int, default=2)
    args = parser.parse_args()
    examples()
    if args.fuzz:
        fuzz(args.fuzz, args.seed, args.outputs, args.degree)


if __name__ == "__main__":
    main()
