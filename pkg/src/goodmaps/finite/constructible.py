"""Constructible subsets of finite spaces, decided two independent ways.

``is_constructible_criterion`` is the production path: it checks, for each
irreducible closed ``F`` in which ``E & F`` is dense, that ``E & F``
contains a nonempty relatively open subset of ``F``.
``is_constructible_bruteforce`` works straight from the definition (a
finite union of locally closed sets) and exists as the test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import MisuseError, OracleDisagreement
from .space import FiniteSpace, PointSet, SpaceMap, bits, popcount, submasks


@dataclass(frozen=True)
class LocallyClosedDecomposition:
    space: FiniteSpace
    pieces: tuple[PointSet, ...]

    def __post_init__(self):
        for piece in self.pieces:
            if piece.space != self.space or not self.space.is_locally_closed_mask(piece.mask):
                raise MisuseError(f"piece {piece!r} is not locally closed")

    def union(self) -> PointSet:
        mask = 0
        for piece in self.pieces:
            mask |= piece.mask
        return PointSet(self.space, mask)


def _peel(space: FiniteSpace, mask: int) -> list[int] | None:
    """Greedy pass: repeatedly remove the part of ``E`` open in ``cl(E)``."""
    pieces = []
    while mask:
        piece = space.relative_interior_mask(mask, space.closure_mask(mask))
        if not piece:
            return None
        pieces.append(piece)
        mask &= ~piece
    return pieces


def _exact(space: FiniteSpace, mask: int) -> list[int] | None:
    # E is a union of locally closed sets iff every point of E sits in a
    # locally closed subset of E; search those by increasing size.
    pieces = []
    covered = 0
    for x in bits(mask):
        if covered >> x & 1:
            continue
        candidates = [s for s in submasks(mask) if s >> x & 1]
        candidates.sort(key=lambda s: (popcount(s), s))
        for s in candidates:
            if space.is_locally_closed_mask(s):
                pieces.append(s)
                covered |= s
                break
        else:
            return None
    return pieces


def decompose_bruteforce(space: FiniteSpace, mask: int) -> list[int] | None:
    pieces = _peel(space, mask)
    if pieces is None:
        pieces = _exact(space, mask)
    return pieces


def is_constructible_bruteforce(e: PointSet, force: bool = False) -> LocallyClosedDecomposition | None:
    space = e.space
    space.check_cap(force)
    pieces = decompose_bruteforce(space, e.mask)
    if pieces is None:
        return None
    return LocallyClosedDecomposition(space, tuple(PointSet(space, p) for p in pieces))


def criterion_mask(space: FiniteSpace, mask: int) -> bool:
    for f in space.irreducible_closed_masks:
        meet = mask & f
        if space.closure_mask(meet) != f:
            continue
        if not space.relative_interior_mask(meet, f):
            return False
    return True


def is_constructible_criterion(e: PointSet, force: bool = False) -> bool:
    e.space.check_cap(force)
    return criterion_mask(e.space, e.mask)


def find_nonconstructible_image(f: SpaceMap, audit: bool = True, force: bool = False) -> PointSet | None:
    """First constructible ``E`` (by mask order) whose image is not constructible.

    With ``audit`` every decision is repeated by the brute-force oracle and a
    disagreement raises ``OracleDisagreement``.
    """
    src, tgt = f.source, f.target
    src.check_cap(force)
    tgt.check_cap(force)
    for e in range(1 << src.n_points):
        src_ok = criterion_mask(src, e)
        if audit and src_ok != (decompose_bruteforce(src, e) is not None):
            raise OracleDisagreement(f"criterion and brute force disagree on {PointSet(src, e)!r}")
        if not src_ok:
            continue
        img = f.image_mask(e)
        img_ok = criterion_mask(tgt, img)
        if audit and img_ok != (decompose_bruteforce(tgt, img) is not None):
            raise OracleDisagreement(f"criterion and brute force disagree on {PointSet(tgt, img)!r}")
        if not img_ok:
            return PointSet(src, e)
    return None


def image_preserves_constructible(f: SpaceMap, audit: bool = True, force: bool = False) -> bool:
    return find_nonconstructible_image(f, audit=audit, force=force) is None
