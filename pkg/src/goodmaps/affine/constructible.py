"""Constructible subsets of affine space as finite unions of strata.

A stratum ``V(I) - V(J)`` is stored as the pair of ideals ``(I, J)``.  All
set-theoretic statements are over the algebraic closure of the coefficient
field; emptiness is decided symbolically by radical membership, never by
sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..algebra.ideal import Ideal, intersect_all, radical_member, saturate
from ..algebra.poly import Polynomial, Ring
from ..errors import MisuseError


@dataclass(frozen=True, eq=False)
class Stratum:
    present: Ideal
    absent: Ideal

    def __post_init__(self):
        if self.present.ring != self.absent.ring:
            raise MisuseError("stratum ideals live in different rings")

    @property
    def ring(self) -> Ring:
        return self.present.ring

    def is_empty(self) -> bool:
        # V(I) - V(J) is empty iff V(I) lies inside V(J) iff J is in rad(I)
        return self.present.radical_contains_ideal(self.absent)

    def contains_point(self, point: Sequence) -> bool:
        if len(point) != self.ring.nvars:
            raise MisuseError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        if any(g.evaluate(point) for g in self.present.generators):
            return False
        return any(g.evaluate(point) for g in self.absent.generators)

    def __repr__(self):
        return f"V{list(map(str, self.present.generators))} - V{list(map(str, self.absent.generators))}"


@dataclass(frozen=True, eq=False)
class AffineConstructible:
    ring: Ring
    strata: tuple[Stratum, ...] = ()

    def __post_init__(self):
        for s in self.strata:
            if s.ring != self.ring:
                raise MisuseError("stratum from a different ring")

    def __iter__(self):
        return iter(self.strata)

    def __len__(self):
        return len(self.strata)

    def __repr__(self):
        return " u ".join(map(repr, self.strata)) or "{}"


# -- constructors ---------------------------------------------------------------


def stratum(ring: Ring, present: Iterable[Polynomial] = (), absent: Iterable[Polynomial] | None = None) -> Stratum:
    """``V(present) - V(absent)``; ``absent=None`` removes nothing."""
    absent_ideal = Ideal.unit(ring) if absent is None else Ideal(ring, absent)
    return Stratum(Ideal(ring, present), absent_ideal)


def empty_set(ring: Ring) -> AffineConstructible:
    return AffineConstructible(ring, ())


def whole_space(ring: Ring) -> AffineConstructible:
    return AffineConstructible(ring, (Stratum(Ideal.zero(ring), Ideal.unit(ring)),))


def closed_set(ideal: Ideal) -> AffineConstructible:
    return AffineConstructible(ideal.ring, (Stratum(ideal, Ideal.unit(ideal.ring)),))


def open_set(ideal: Ideal) -> AffineConstructible:
    """Complement of ``V(ideal)``."""
    return AffineConstructible(ideal.ring, (Stratum(Ideal.zero(ideal.ring), ideal),))


def rational_point(ring: Ring, coords: Sequence) -> AffineConstructible:
    gens = [ring.var(i) - c for i, c in enumerate(coords)]
    return closed_set(Ideal(ring, gens))


# -- predicates -------------------------------------------------------------------


def is_empty(s: AffineConstructible) -> bool:
    return all(st.is_empty() for st in s.strata)


def contains_point(s: AffineConstructible, point: Sequence) -> bool:
    if len(point) != s.ring.nvars:
        raise MisuseError(f"point has {len(point)} coordinates, ring has {s.ring.nvars}")
    return any(st.contains_point(point) for st in s.strata)


# -- Boolean operations ----------------------------------------------------------------


def _check(a: AffineConstructible, b: AffineConstructible):
    if a.ring != b.ring:
        raise MisuseError("constructible sets from different rings")


def prune(s: AffineConstructible) -> AffineConstructible:
    return AffineConstructible(s.ring, tuple(st for st in s.strata if not st.is_empty()))


def union(a: AffineConstructible, b: AffineConstructible) -> AffineConstructible:
    _check(a, b)
    return AffineConstructible(a.ring, a.strata + b.strata)


def _meet(s: Stratum, t: Stratum) -> Stratum:
    # (V(I1) - V(J1)) & (V(I2) - V(J2)) = V(I1 + I2) - V(J1 * J2)
    return Stratum(s.present + t.present, s.absent * t.absent)


def intersection(a: AffineConstructible, b: AffineConstructible) -> AffineConstructible:
    _check(a, b)
    out = []
    for s in a.strata:
        for t in b.strata:
            m = _meet(s, t)
            if not m.is_empty():
                out.append(m)
    return AffineConstructible(a.ring, tuple(out))


def complement(a: AffineConstructible) -> AffineConstructible:
    """Complement over the algebraic closure.

    The complement of ``V(I) - V(J)`` is ``(A - V(I)) u V(J)``; the
    complement of a union is the intersection of the complements.
    """
    ring = a.ring
    out = whole_space(ring)
    for s in a.strata:
        piece = AffineConstructible(ring, (
            Stratum(Ideal.zero(ring), s.present),
            Stratum(s.absent, Ideal.unit(ring)),
        ))
        out = intersection(out, prune(piece))
    return out


def difference(a: AffineConstructible, b: AffineConstructible) -> AffineConstructible:
    _check(a, b)
    return intersection(a, complement(b))


def symmetric_difference(a: AffineConstructible, b: AffineConstructible) -> AffineConstructible:
    return union(difference(a, b), difference(b, a))


def same_set(a: AffineConstructible, b: AffineConstructible) -> bool:
    return is_empty(symmetric_difference(a, b))


def is_subset(a: AffineConstructible, b: AffineConstructible) -> bool:
    return is_empty(difference(a, b))


# -- closure ----------------------------------------------------------------------------


def closure(s: AffineConstructible) -> Ideal:
    """Ideal of the Zariski closure: the intersection of ``I : J^inf`` over strata."""
    return intersect_all([saturate(st.present, st.absent) for st in s.strata], s.ring)


def closure_as_constructible(s: AffineConstructible) -> AffineConstructible:
    return closed_set(closure(s))


__all__ = [
    "AffineConstructible",
    "Stratum",
    "closed_set",
    "closure",
    "complement",
    "contains_point",
    "difference",
    "empty_set",
    "intersection",
    "is_empty",
    "open_set",
    "rational_point",
    "prune",
    "is_subset",
    "closure_as_constructible",
    "radical_member",
    "same_set",
    "stratum",
    "symmetric_difference",
    "union",
    "whole_space",
]
