"""Ideals with cached reduced Groebner bases and the elimination toolkit."""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from ..errors import MisuseError
from .groebner import buchberger, divide, normal_form
from .order import GREVLEX, LEX, MonomialOrder, elimination_order
from .poly import Polynomial, Ring


class Ideal:
    """Ideal of ``ring`` given by generators.

    The reduced Groebner basis is memoised per monomial order; the memo is
    write-once under a lock, so ideals can be shared between threads.
    """

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring != ring:
                raise MisuseError("generator from a different ring")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._bases = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: Ring) -> "Ideal":
        return cls(ring, [])

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def groebner(self, order: MonomialOrder = GREVLEX) -> tuple[Polynomial, ...]:
        basis = self._bases.get(order)
        if basis is None:
            computed = tuple(buchberger(self.generators, order, ring=self.ring)) if self.generators else ()
            with self._lock:
                basis = self._bases.setdefault(order, computed)
        return basis

    def _some_basis(self) -> tuple[MonomialOrder, tuple[Polynomial, ...]]:
        # membership and unit tests work with a basis for any order
        for order, basis in list(self._bases.items()):
            return order, basis
        return GREVLEX, self.groebner(GREVLEX)

    def is_unit(self) -> bool:
        _, gb = self._some_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.generators

    def reduce(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        return normal_form(f, self.groebner(order), order)

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise MisuseError("polynomial from a different ring")
        order, gb = self._some_basis()
        return normal_form(f, gb, order).is_zero()

    def __contains__(self, f):
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring, self.groebner()))

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise MisuseError("ideals from different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise MisuseError("ideals from different rings")
        return Ideal(self.ring, [a * b for a in self.generators for b in other.generators])

    def with_generators(self, extra: Iterable[Polynomial]) -> "Ideal":
        return Ideal(self.ring, list(self.generators) + list(extra))

    def radical_contains(self, f: Polynomial) -> bool:
        return radical_member(f, self)

    def radical_contains_ideal(self, other: "Ideal") -> bool:
        """``other`` lies in the radical of ``self``, i.e. V(self) is inside V(other)."""
        return all(radical_member(g, self) for g in other.generators)


# -- ring plumbing ------------------------------------------------------------


def prepend_variables(ring: Ring, stem: str, count: int) -> tuple[Ring, list[int]]:
    """Ring with ``count`` fresh variables in front; positions of the old ones."""
    names = ring.fresh_names(stem, count)
    return ring.with_prefix(names), [count + i for i in range(ring.nvars)]


def lift(polys: Sequence[Polynomial], ring: Ring, positions: Sequence[int]) -> list[Polynomial]:
    return [p.embed(ring, positions) for p in polys]


def drop_leading(p: Polynomial, count: int, ring: Ring) -> Polynomial:
    """View ``p`` (free of the first ``count`` variables) in the tail ring."""
    out = {}
    for m, c in p.terms.items():
        if any(m[:count]):
            raise MisuseError("polynomial still involves eliminated variables")
        out[m[count:]] = c
    return Polynomial(ring, out)


# -- operations ---------------------------------------------------------------


def groebner(ideal: Ideal, order: MonomialOrder = GREVLEX) -> list[Polynomial]:
    return list(ideal.groebner(order))


def eliminate(ideal: Ideal, keep_last: int) -> Ideal:
    """``I`` intersected with the subring of the last ``keep_last`` variables."""
    ring = ideal.ring
    n = ring.nvars
    if not 0 <= keep_last <= n:
        raise MisuseError(f"keep_last must lie in 0..{n}")
    count = n - keep_last
    tail = ring.tail(keep_last)
    if count == 0:
        return Ideal(tail, [drop_leading(g, 0, tail) for g in ideal.generators])
    gb = ideal.groebner(elimination_order(count))
    kept = [g for g in gb if not any(any(m[:count]) for m in g.terms)]
    return Ideal(tail, [drop_leading(g, count, tail) for g in kept])


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """``A & B`` computed as ``(t*A + (1 - t)*B)`` with ``t`` eliminated."""
    if a.ring != b.ring:
        raise MisuseError("ideals from different rings")
    ring = a.ring
    if a.is_unit():
        return b
    if b.is_unit():
        return a
    if a.is_zero() or b.is_zero():
        return Ideal.zero(ring)
    big, pos = prepend_variables(ring, "t", 1)
    t = big.var(0)
    gens = [t * g for g in lift(a.generators, big, pos)]
    gens += [(1 - t) * g for g in lift(b.generators, big, pos)]
    return eliminate(Ideal(big, gens), ring.nvars)


def polynomial_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd, as ``f*g`` over the generator of ``(f) & (g)``."""
    if f.is_zero():
        return g.monic(GREVLEX) if not g.is_zero() else g
    if g.is_zero():
        return f.monic(GREVLEX)
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    ring = f.ring
    (lcm,) = intersect(Ideal(ring, [f]), Ideal(ring, [g])).groebner()
    (q,), r = divide(f * g, [lcm], GREVLEX)
    if not r.is_zero():
        raise MisuseError("gcd division left a remainder")
    return q.monic(GREVLEX)


def squarefree_part(f: Polynomial) -> Polynomial:
    """Monic ``f / gcd(f, df/dx_1, ...)``; same zero set as ``f``.

    Over a prime field derivatives can vanish identically, so ``f`` is
    returned (made monic) unchanged there.
    """
    if f.is_zero() or f.is_constant():
        return f.monic(GREVLEX) if not f.is_zero() else f
    if f.ring.modulus:
        return f.monic(GREVLEX)
    d = f
    for i in sorted(f.variables()):
        d = polynomial_gcd(d, f.derivative(i))
        if d.is_constant():
            return f.monic(GREVLEX)
    (q,), r = divide(f, [d], GREVLEX)
    if not r.is_zero():
        raise MisuseError("squarefree division left a remainder")
    return q.monic(GREVLEX)


def intersect_all(ideals: Sequence[Ideal], ring: Ring) -> Ideal:
    out = Ideal.unit(ring)
    for i in ideals:
        out = intersect(out, i)
    return out


def saturate_by(ideal: Ideal, g: Polynomial) -> Ideal:
    """``I : g^inf`` via ``I + (1 - t*g)`` with ``t`` eliminated."""
    ring = ideal.ring
    if g.is_zero():
        return Ideal.unit(ring)
    if g.is_constant():
        return ideal
    big, pos = prepend_variables(ring, "t", 1)
    t = big.var(0)
    gens = lift(ideal.generators, big, pos) + [1 - t * g.embed(big, pos)]
    return eliminate(Ideal(big, gens), ring.nvars)


def saturate(ideal: Ideal, by: Ideal) -> Ideal:
    """``I : J^inf``, the ideal of the closure of ``V(I) - V(J)``."""
    if ideal.ring != by.ring:
        raise MisuseError("ideals from different rings")
    if by.is_zero():
        return Ideal.unit(ideal.ring)
    return intersect_all([saturate_by(ideal, g) for g in by.generators], ideal.ring)


def radical_member(f: Polynomial, ideal: Ideal) -> bool:
    """``f`` in the radical of ``I``, i.e. ``1`` in ``I + (1 - t*f)``."""
    ring = ideal.ring
    if f.ring != ring:
        raise MisuseError("polynomial from a different ring")
    if f.is_zero():
        return True
    big, pos = prepend_variables(ring, "t", 1)
    t = big.var(0)
    gens = lift(ideal.generators, big, pos) + [1 - t * f.embed(big, pos)]
    return Ideal(big, gens).is_unit()


__all__ = [
    "Ideal",
    "LEX",
    "GREVLEX",
    "MonomialOrder",
    "divide",
    "eliminate",
    "groebner",
    "intersect",
    "intersect_all",
    "polynomial_gcd",
    "radical_member",
    "saturate",
    "saturate_by",
    "squarefree_part",
]
