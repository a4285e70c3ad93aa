"""Fibre test used to audit the image engine point by point.

A rational point ``p`` of the target lies in ``f(V(I) - V(J))`` over the
algebraic closure iff for some generator ``g`` of ``J`` the system
``I, f - p, 1 - t*g`` has a solution, iff (Nullstellensatz) its Groebner
basis is not ``{1}``.  No elimination or leading-coefficient logic is
involved, which keeps this independent of ``chevalley_image``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from ..algebra.ideal import Ideal
from ..algebra.poly import Ring
from .constructible import AffineConstructible, Stratum
from .image import PolyMap


def fibre_nonempty(f: PolyMap, s: Stratum, point: Sequence) -> bool:
    src = f.source
    names = src.fresh_names("u", 1) + list(src.names)
    ring = Ring(tuple(names), src.modulus)
    pos = [1 + i for i in range(src.nvars)]
    base = [p.embed(ring, pos) for p in s.present.generators]
    base += [c.embed(ring, pos) - v for c, v in zip(f.components, point)]
    for g in s.absent.generators:
        gens = base + [1 - ring.var(0) * g.embed(ring, pos)]
        if not Ideal(ring, gens).is_unit():
            return True
    return False


def in_image(f: PolyMap, s: AffineConstructible, point: Sequence) -> bool:
    return any(fibre_nonempty(f, st, point) for st in s.strata)


def random_points(dim: int, count: int, seed: int, bound: int = 5, special: Sequence[Sequence] = ()) -> list[tuple]:
    """Seeded rational points with small coordinates.

    Coordinates are drawn as ``a/b`` with ``|a| <= bound`` and
    ``1 <= b <= 3``; zero is deliberately frequent so degenerate loci get
    hit.  ``special`` points are listed first.
    """
    rng = random.Random(seed)
    pts = [tuple(Fraction(c) for c in p) for p in special]
    while len(pts) < count:
        coords = []
        for _ in range(dim):
            if rng.random() < 0.25:
                coords.append(Fraction(0))
            else:
                coords.append(Fraction(rng.randint(-bound, bound), rng.randint(1, 3)))
        pts.append(tuple(coords))
    return pts[:max(count, len(special))]
