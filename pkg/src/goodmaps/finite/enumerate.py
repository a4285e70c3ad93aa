"""Enumeration and seeded sampling of small preorders and monotone maps."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from .space import FiniteSpace, SpaceMap, bits


@lru_cache(maxsize=None)
def all_preorders(n: int) -> tuple[FiniteSpace, ...]:
    """Every preorder on ``range(n)`` (labelled), in a fixed order.

    Counts are 1, 1, 4, 29, 355, 6942 for n = 0..5.
    """
    off = [(x, y) for y in range(n) for x in range(n) if x != y]
    out = []
    for choice in range(1 << len(off)):
        below = [1 << x for x in range(n)]
        for i, (x, y) in enumerate(off):
            if choice >> i & 1:
                below[y] |= 1 << x
        # transitive iff cl of every member of cl{y} stays inside cl{y}
        if all(below[x] & ~below[y] == 0 for y in range(n) for x in bits(below[y])):
            out.append(FiniteSpace(n, tuple(below)))
    return tuple(out)


def all_spaces_up_to(n_max: int, min_points: int = 1) -> list[FiniteSpace]:
    return [s for n in range(min_points, n_max + 1) for s in all_preorders(n)]


def monotone_maps(source: FiniteSpace, target: FiniteSpace):
    """Every monotone map, built point by point with early pruning."""
    n = source.n_points
    if n == 0:
        yield SpaceMap(source, target, ())
        return
    assignment = [0] * n

    def extend(i):
        if i == n:
            yield SpaceMap(source, target, tuple(assignment))
            return
        for y in range(target.n_points):
            ok = True
            for j in range(i):
                if source.leq(j, i) and not target.leq(assignment[j], y):
                    ok = False
                    break
                if source.leq(i, j) and not target.leq(y, assignment[j]):
                    ok = False
                    break
            if ok:
                assignment[i] = y
                yield from extend(i + 1)

    yield from extend(0)


def random_monotone_map(source: FiniteSpace, target: FiniteSpace, rng: random.Random) -> SpaceMap:
    """Uniform draw from the monotone maps by rejection over all assignments."""
    m = target.n_points
    n = source.n_points
    while True:
        assignment = tuple(rng.randrange(m) for _ in range(n))
        if all(
            target.leq(assignment[x], assignment[y])
            for y in range(n)
            for x in bits(source.below[y])
        ):
            return SpaceMap(source, target, assignment)


def sample_maps(n_source: int, n_target: int, count: int, rng: random.Random):
    sources = all_preorders(n_source)
    targets = all_preorders(n_target)
    for _ in range(count):
        yield random_monotone_map(rng.choice(sources), rng.choice(targets), rng)


def exhaustive_maps(n_max: int):
    spaces = all_spaces_up_to(n_max)
    for source, target in product(spaces, spaces):
        yield from monotone_maps(source, target)
