"""Finite topological spaces encoded by their specialization preorder.

Convention, fixed once for the whole package: ``x <= y`` means that ``x``
lies in the closure of ``{y}`` (``x`` is a specialization of ``y``).  With
this orientation the closed sets are exactly the down-sets of the preorder
and the open sets are exactly the up-sets.  Everything downstream talks to
``closure`` / ``interior`` and never to the raw orientation.

A map between finite spaces is continuous iff it is monotone for the
specialization preorders.  This is standard order theory: preimages of
down-sets are down-sets exactly when ``x <= y`` implies ``f(x) <= f(y)``.

Subsets are stored as integer bitmasks; bit ``i`` stands for point ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from ..config import FINITE
from ..errors import MisuseError, SizeCapError


def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, largest first, ending with 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class FiniteSpace:
    n_points: int
    # below[x] is the bitmask of cl{x}
    below: tuple[int, ...]

    def __post_init__(self):
        if len(self.below) != self.n_points:
            raise MisuseError("closure table has the wrong length")

    def __repr__(self):
        pairs = [(x, y) for y in range(self.n_points) for x in bits(self.below[y]) if x != y]
        return f"FiniteSpace({self.n_points}, {pairs})"

    @property
    def full_mask(self) -> int:
        return (1 << self.n_points) - 1

    def leq(self, x: int, y: int) -> bool:
        return bool(self.below[y] >> x & 1)

    @cached_property
    def above(self) -> tuple[int, ...]:
        up = [0] * self.n_points
        for y in range(self.n_points):
            for x in bits(self.below[y]):
                up[x] |= 1 << y
        return tuple(up)

    def relation_pairs(self) -> list[tuple[int, int]]:
        """Strict specialization pairs ``(x, y)`` with ``x <= y`` and ``x != y``."""
        return [(x, y) for y in range(self.n_points) for x in bits(self.below[y]) if x != y]

    # -- masks -----------------------------------------------------------

    def closure_mask(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= self.below[x]
        return out

    def open_hull_mask(self, mask: int) -> int:
        """Smallest open set (up-set) containing ``mask``."""
        out = 0
        for x in bits(mask):
            out |= self.above[x]
        return out

    def interior_mask(self, mask: int) -> int:
        full = self.full_mask
        return full & ~self.closure_mask(full & ~mask)

    def is_closed_mask(self, mask: int) -> bool:
        return self.closure_mask(mask) == mask

    def is_open_mask(self, mask: int) -> bool:
        return self.open_hull_mask(mask) == mask

    def is_locally_closed_mask(self, mask: int) -> bool:
        # open in its closure: the relative open hull inside cl(s) is s itself
        return self.closure_mask(mask) & self.open_hull_mask(mask) == mask

    def is_irreducible_mask(self, mask: int) -> bool:
        if not mask:
            return False
        return any(mask & ~self.below[x] == 0 for x in bits(mask))

    def relative_interior_mask(self, mask: int, ambient: int) -> int:
        """Largest subset of ``mask`` that is open in the subspace ``ambient``."""
        mask &= ambient
        return sum(1 << x for x in bits(mask) if self.above[x] & ambient & ~mask == 0)

    def check_cap(self, force: bool = False, cap: int | None = None):
        cap = FINITE.size_cap if cap is None else cap
        if self.n_points > cap and not force:
            raise SizeCapError(f"space has {self.n_points} points, cap is {cap}; pass force=True")

    # -- enumerations (cached, exhaustive) --------------------------------

    @cached_property
    def open_masks(self) -> tuple[int, ...]:
        """All open sets ordered by decreasing size, then decreasing mask."""
        opens = [m for m in submasks(self.full_mask) if self.is_open_mask(m)]
        opens.sort(key=lambda m: (-popcount(m), -m))
        return tuple(opens)

    @cached_property
    def irreducible_closed_masks(self) -> tuple[int, ...]:
        # every irreducible closed subset of a finite space is some cl{x}
        return tuple(sorted(set(self.below)))

    @cached_property
    def locally_closed_masks(self) -> tuple[int, ...]:
        return tuple(m for m in submasks(self.full_mask) if m and self.is_locally_closed_mask(m))

    @cached_property
    def irreducible_locally_closed_masks(self) -> tuple[int, ...]:
        out = []
        for z in self.irreducible_closed_masks:
            # nonempty relatively open subsets of an irreducible closed z all have closure z
            for u in submasks(z):
                if u and self.relative_interior_mask(u, z) == u:
                    out.append(u)
        return tuple(out)

    @cached_property
    def closed_points_mask(self) -> int:
        return sum(1 << x for x in range(self.n_points) if self.below[x] == 1 << x)

    # -- public PointSet API ---------------------------------------------

    def subset(self, members: Iterable[int] = ()) -> "PointSet":
        mask = 0
        for x in members:
            if not 0 <= x < self.n_points:
                raise MisuseError(f"point {x} outside a space of {self.n_points} points")
            mask |= 1 << x
        return PointSet(self, mask)

    def empty(self) -> "PointSet":
        return PointSet(self, 0)

    def full(self) -> "PointSet":
        return PointSet(self, self.full_mask)

    def point_closure(self, x: int) -> "PointSet":
        return PointSet(self, self.below[x])

    def subspace(self, mask: int) -> tuple["FiniteSpace", tuple[int, ...]]:
        """Subspace topology on ``mask``; returns the space and the inclusion.

        The specialization preorder of a subspace is the restriction of the
        ambient one, so this is a relabelled restriction of ``leq``.
        """
        points = tuple(bits(mask))
        index = {p: i for i, p in enumerate(points)}
        below = []
        for p in points:
            below.append(sum(1 << index[q] for q in bits(self.below[p] & mask)))
        return FiniteSpace(len(points), tuple(below)), points


def make_space(n: int, relation_pairs: Sequence[Sequence[int]] = ()) -> FiniteSpace:
    """Space whose preorder is the reflexive-transitive closure of the pairs.

    A pair ``(x, y)`` declares ``x <= y``, i.e. ``x`` lies in the closure of ``y``.

    >>> make_space(2, [(1, 0)]).open_masks   # Sierpinski space
    (3, 1, 0)
    """
    if n < 0:
        raise MisuseError("point count must be non-negative")
    below = [1 << x for x in range(n)]
    for pair in relation_pairs:
        x, y = pair
        if not (0 <= x < n and 0 <= y < n):
            raise MisuseError(f"pair {tuple(pair)} has an index outside 0..{n - 1}")
        below[y] |= 1 << x
    # transitive closure (Warshall on the closure table)
    for k in range(n):
        bk = 1 << k
        for y in range(n):
            if below[y] & bk:
                below[y] |= below[k]
    return FiniteSpace(n, tuple(below))


@dataclass(frozen=True)
class PointSet:
    space: FiniteSpace
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.space.n_points:
            raise MisuseError("point set has members outside its space")

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    def __iter__(self):
        return bits(self.mask)

    def __len__(self):
        return popcount(self.mask)

    def __bool__(self):
        return self.mask != 0

    def __contains__(self, x):
        return bool(self.mask >> x & 1)

    def __repr__(self):
        return "{" + ",".join(map(str, self.members)) + "}"

    def _same(self, other: "PointSet") -> int:
        if other.space != self.space:
            raise MisuseError("point sets live in different spaces")
        return other.mask

    def __or__(self, other):
        return PointSet(self.space, self.mask | self._same(other))

    def __and__(self, other):
        return PointSet(self.space, self.mask & self._same(other))

    def __sub__(self, other):
        return PointSet(self.space, self.mask & ~self._same(other))

    def __le__(self, other):
        return self.mask & ~self._same(other) == 0

    def complement(self) -> "PointSet":
        return PointSet(self.space, self.space.full_mask & ~self.mask)


@dataclass(frozen=True)
class SpaceMap:
    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple[int, ...]
    _image_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if len(self.assignment) != self.source.n_points:
            raise MisuseError("assignment length differs from the source point count")
        for y in self.assignment:
            if not 0 <= y < self.target.n_points:
                raise MisuseError(f"assignment value {y} outside the target")
        src, tgt, a = self.source, self.target, self.assignment
        for y in range(src.n_points):
            for x in bits(src.below[y]):
                if not tgt.leq(a[x], a[y]):
                    raise MisuseError(f"map is not continuous: {x} <= {y} but {a[x]} !<= {a[y]}")

    def image_mask(self, mask: int) -> int:
        hit = self._image_cache.get(mask)
        if hit is None:
            hit = 0
            for x in bits(mask):
                hit |= 1 << self.assignment[x]
            self._image_cache[mask] = hit
        return hit

    def preimage_mask(self, mask: int) -> int:
        return sum(1 << x for x, y in enumerate(self.assignment) if mask >> y & 1)

    def image(self, s: PointSet) -> PointSet:
        return PointSet(self.target, self.image_mask(s.mask))

    def preimage(self, s: PointSet) -> PointSet:
        return PointSet(self.source, self.preimage_mask(s.mask))

    def restrict(self, mask: int) -> "SpaceMap":
        """``f|_S : S -> Y`` with ``S`` carrying the subspace topology."""
        sub, points = self.source.subspace(mask)
        return SpaceMap(sub, self.target, tuple(self.assignment[p] for p in points))

    def corestrict(self, mask: int) -> "SpaceMap":
        """``f : X -> Y'`` for a subspace ``Y'`` containing the image."""
        if self.image_mask(self.source.full_mask) & ~mask:
            raise MisuseError("corestriction target does not contain the image")
        sub, points = self.target.subspace(mask)
        index = {p: i for i, p in enumerate(points)}
        return SpaceMap(self.source, sub, tuple(index[y] for y in self.assignment))

    def then(self, g: "SpaceMap") -> "SpaceMap":
        """Composite ``g . self``."""
        if g.source != self.target:
            raise MisuseError("maps are not composable")
        return SpaceMap(self.source, g.target, tuple(g.assignment[y] for y in self.assignment))


def identity_map(space: FiniteSpace) -> SpaceMap:
    return SpaceMap(space, space, tuple(range(space.n_points)))


# -- free-function API ----------------------------------------------------


def closure(s: PointSet) -> PointSet:
    return PointSet(s.space, s.space.closure_mask(s.mask))


def interior(s: PointSet) -> PointSet:
    return PointSet(s.space, s.space.interior_mask(s.mask))


def is_open(s: PointSet) -> bool:
    return s.space.is_open_mask(s.mask)


def is_closed(s: PointSet) -> bool:
    return s.space.is_closed_mask(s.mask)


def is_locally_closed(s: PointSet) -> bool:
    return s.space.is_locally_closed_mask(s.mask)


def is_irreducible(s: PointSet) -> bool:
    return s.space.is_irreducible_mask(s.mask)


def generic_points(s: PointSet) -> PointSet:
    """Points whose closure is all of ``s``; ``s`` must be irreducible and closed."""
    space = s.space
    if not (space.is_closed_mask(s.mask) and space.is_irreducible_mask(s.mask)):
        raise MisuseError(f"{s!r} is not an irreducible closed set")
    return PointSet(space, sum(1 << x for x in bits(s.mask) if space.below[x] == s.mask))


def is_sober(space: FiniteSpace) -> bool:
    """Every irreducible closed subset has exactly one generic point.

    For finite spaces this is the same as being T0, i.e. the preorder is
    antisymmetric.
    """
    for z in space.irreducible_closed_masks:
        if len(generic_points(PointSet(space, z))) != 1:
            return False
    return True


def is_t0(space: FiniteSpace) -> bool:
    return len(set(space.below)) == space.n_points


def enumerate_irreducible_locally_closed(space: FiniteSpace, force: bool = False) -> Iterator[PointSet]:
    """Nonempty irreducible locally closed subsets, each exactly once.

    Every such set is a nonempty relatively open subset of its closure,
    which is some irreducible closed ``cl{x}``; grouping by closure makes
    the listing duplicate-free.
    """
    space.check_cap(force)
    for m in space.irreducible_locally_closed_masks:
        yield PointSet(space, m)


def enumerate_locally_closed(space: FiniteSpace, force: bool = False) -> Iterator[PointSet]:
    space.check_cap(force)
    for m in space.locally_closed_masks:
        yield PointSet(space, m)
