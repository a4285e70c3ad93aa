"""Goodness and weak goodness of maps between finite spaces.

Three routes decide goodness: the definition (search for a witnessing open
``W`` for every irreducible locally closed ``U``), the closed/relatively-open
characterization, and transfer of constructibility
(``constructible.image_preserves_constructible``).  Verdicts carry their
witnesses and re-check them on construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import MisuseError
from .space import FiniteSpace, PointSet, SpaceMap, bits, submasks, popcount


def good_witness_mask(f: SpaceMap, u: int) -> int | None:
    """Largest open ``W`` of the target with ``W & f(U) == W & cl f(U) != 0``."""
    tgt = f.target
    img = f.image_mask(u)
    cl = tgt.closure_mask(img)
    for w in tgt.open_masks:
        hit = w & img
        if hit and hit == w & cl:
            return w
    return None


def weak_witness_mask(f: SpaceMap, u: int) -> int | None:
    """Largest locally closed nonempty ``V`` of the target inside ``f(U)``."""
    tgt = f.target
    img = f.image_mask(u)
    candidates = sorted((v for v in submasks(img) if v), key=lambda v: (-popcount(v), -v))
    for v in candidates:
        if tgt.is_locally_closed_mask(v):
            return v
    return None


@dataclass(frozen=True)
class GoodnessVerdict:
    """Outcome of the definitional goodness check.

    ``witness_table`` pairs every nonempty irreducible locally closed ``U``
    with its witnessing open ``W``, or with ``None`` when ``U`` fails.
    """

    f: SpaceMap
    witness_table: tuple[tuple[PointSet, PointSet | None], ...]

    def __post_init__(self):
        tgt = self.f.target
        for u, w in self.witness_table:
            if w is None:
                continue
            if not tgt.is_open_mask(w.mask):
                raise MisuseError(f"witness {w!r} is not open")
            img = self.f.image_mask(u.mask)
            hit = w.mask & img
            if not hit or hit != w.mask & tgt.closure_mask(img):
                raise MisuseError(f"witness {w!r} does not certify U={u!r}")

    @property
    def good(self) -> bool:
        return all(w is not None for _, w in self.witness_table)

    @property
    def failing(self) -> list[PointSet]:
        return [u for u, w in self.witness_table if w is None]

    def __bool__(self):
        return self.good


@dataclass(frozen=True)
class WeakGoodnessVerdict:
    f: SpaceMap
    witness_table: tuple[tuple[PointSet, PointSet | None], ...]

    def __post_init__(self):
        tgt = self.f.target
        for u, v in self.witness_table:
            if v is None:
                continue
            if not v.mask or not tgt.is_locally_closed_mask(v.mask):
                raise MisuseError(f"{v!r} is not a nonempty locally closed set")
            if v.mask & ~self.f.image_mask(u.mask):
                raise MisuseError(f"{v!r} is not inside f({u!r})")

    @property
    def weak_good(self) -> bool:
        return all(v is not None for _, v in self.witness_table)

    @property
    def failing(self) -> list[PointSet]:
        return [u for u, v in self.witness_table if v is None]

    def __bool__(self):
        return self.weak_good


def is_good_definition(f: SpaceMap, force: bool = False) -> GoodnessVerdict:
    f.source.check_cap(force)
    f.target.check_cap(force)
    src, tgt = f.source, f.target
    table = []
    for u in src.irreducible_locally_closed_masks:
        w = good_witness_mask(f, u)
        table.append((PointSet(src, u), None if w is None else PointSet(tgt, w)))
    return GoodnessVerdict(f, tuple(table))


def is_good_fast(f: SpaceMap) -> bool:
    """Definitional check without building a verdict; stops at the first failure."""
    return all(good_witness_mask(f, u) is not None for u in f.source.irreducible_locally_closed_masks)


def characterization_failure(f: SpaceMap) -> tuple[PointSet, PointSet] | None:
    """A pair ``(Z, U)`` violating the closed/relatively-open form, if any."""
    src, tgt = f.source, f.target
    for z in src.irreducible_closed_masks:
        c = tgt.closure_mask(f.image_mask(z))
        for u in submasks(z):
            if not u or src.relative_interior_mask(u, z) != u:
                continue
            img = f.image_mask(u)
            # f(U) must contain a nonempty relatively open subset of C
            if not tgt.relative_interior_mask(img, c):
                return PointSet(src, z), PointSet(src, u)
    return None


def is_good_characterization(f: SpaceMap, force: bool = False) -> bool:
    f.source.check_cap(force)
    f.target.check_cap(force)
    return characterization_failure(f) is None


def is_weak_good(f: SpaceMap, force: bool = False) -> WeakGoodnessVerdict:
    f.source.check_cap(force)
    f.target.check_cap(force)
    src, tgt = f.source, f.target
    table = []
    for u in src.locally_closed_masks:
        v = weak_witness_mask(f, u)
        table.append((PointSet(src, u), None if v is None else PointSet(tgt, v)))
    return WeakGoodnessVerdict(f, tuple(table))


def is_weak_good_fast(f: SpaceMap) -> bool:
    tgt = f.target
    for u in f.source.locally_closed_masks:
        img = f.image_mask(u)
        if not any(v and tgt.is_locally_closed_mask(v) for v in submasks(img)):
            return False
    return True


def is_jacobson(space: FiniteSpace) -> bool:
    """Every nonempty locally closed subset contains a point closed in the space."""
    closed = space.closed_points_mask
    return all(u & closed for u in space.locally_closed_masks)


def t0_witness_mask(f: SpaceMap, u: int) -> int:
    """Open set certifying goodness of a map between T0 spaces at ``U``.

    With ``x`` the generic point of ``U`` the set is the target minus the
    strict specializations of ``f(x)``.
    """
    src, tgt = f.source, f.target
    closure = src.closure_mask(u)
    generic = next(x for x in bits(u) if src.below[x] == closure)
    y = f.assignment[generic]
    return tgt.full_mask & ~(tgt.below[y] & ~(1 << y))
