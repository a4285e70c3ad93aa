"""Images of constructible sets under polynomial maps, and good-map witnesses.

The image engine works on the graph.  A stratum ``V(I) - V(J)`` of the
source is split along the generators ``g`` of ``J`` into closed sets
``V(I, 1 - t*g)`` of a space with one extra coordinate, and each closed set
``V(K)`` in ``(t, x, z)``-space is projected onto ``z`` as follows.

Take the reduced Groebner basis ``G`` of ``K`` for a block order in which
the eliminated block dominates.  ``G_z = G & k[z]`` cuts out the closure of
the projection.  Let ``G_m`` be a minimal Dickson basis of ``G - G_z``
with respect to leading monomials in the eliminated variables, and for
``g`` in ``G_m`` let ``c_g`` be its leading coefficient, a polynomial in
``k[z]``.  At points of ``V(G_z)`` where no ``c_g`` vanishes the
specialization of ``G_m`` is a Groebner basis of the fibre ideal
(Kapur-Sun-Wang) with non-constant leading terms, so the fibre is
nonempty: ``V(G_z) - V(prod c_g)`` is certified image.

The rest of ``V(G_z)`` is covered by recursion.  If the product is not in
``K`` a single branch ``K + (prod c_g)`` suffices; otherwise each
``K + (c_g)`` is explored.  Reducedness of ``G`` makes each ``c_g`` a
non-member of ``K``, so every branch strictly enlarges the ideal and the
recursion terminates.  Coefficients are reduced modulo ``G_z`` and replaced
by their squarefree parts first; neither changes the zero sets involved,
and a squarefree part of a non-member is again a non-member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..algebra.ideal import Ideal, radical_member, squarefree_part
from ..algebra.order import GREVLEX, elimination_order
from ..algebra.poly import Polynomial, Ring
from ..config import algebra_config
from ..errors import MisuseError, ResourceLimitError, TheoremViolation
from .constructible import (
    AffineConstructible,
    Stratum,
    closed_set,
    closure,
    complement,
    difference,
    intersection,
    is_empty,
)


@dataclass(frozen=True, eq=False)
class PolyMap:
    source: Ring
    target: Ring
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.target.nvars:
            raise MisuseError("need one component per target variable")
        for c in self.components:
            if c.ring != self.source:
                raise MisuseError("component outside the source ring")
        if self.source.modulus != self.target.modulus:
            raise MisuseError("source and target use different coefficient fields")

    def __call__(self, point: Sequence):
        return tuple(c.evaluate(point) for c in self.components)

    def then(self, g: "PolyMap") -> "PolyMap":
        """Composite ``g . self``."""
        if g.source != self.target:
            raise MisuseError("maps are not composable")
        return PolyMap(self.source, g.target, tuple(c.substitute(self.components, self.source) for c in g.components))

    def pullback(self, p: Polynomial) -> Polynomial:
        return p.substitute(self.components, self.source)


def projection(source: Ring, keep: Sequence[int], target: Ring | None = None) -> PolyMap:
    """Coordinate projection onto the variables at positions ``keep``."""
    if target is None:
        target = Ring(tuple(source.names[i] for i in keep), source.modulus)
    return PolyMap(source, target, tuple(source.var(i) for i in keep))


def identity(ring: Ring) -> PolyMap:
    return PolyMap(ring, ring, ring.gens())


# -- projection of a closed set ----------------------------------------------------


@dataclass
class _Budget:
    limit: int
    used: int = 0
    trace: list = field(default_factory=list)
    # reduced bases already projected; different branch paths often meet
    seen: set = field(default_factory=set)

    def spend(self, note):
        self.used += 1
        self.trace.append(note)
        if self.used > self.limit:
            raise ResourceLimitError(f"image recursion exceeded {self.limit} branches", self.trace)


def leading_coefficient_in(g: Polynomial, count: int, order, tail: Ring) -> Polynomial:
    """Coefficient of the leading monomial of ``g`` in its first ``count`` variables."""
    lead = g.lead(order)[0][:count]
    out = {}
    for m, c in g.terms.items():
        if m[:count] == lead:
            out[m[count:]] = c
    return Polynomial(tail, out)


def _dickson_minimal(entries):
    """Keep one element per minimal leading monomial in the eliminated block.

    ``entries`` are ``(w_monomial, coefficient)`` pairs.  Among elements
    sharing a minimal monomial the one with the simplest coefficient wins,
    constants first.
    """
    entries = sorted(entries, key=lambda e: (not e[1].is_constant(), e[1].total_degree(), len(e[1].terms), str(e[1])))
    chosen = []
    for w, c in entries:
        if any(all(a <= b for a, b in zip(v, w)) for v, _ in chosen):
            continue
        chosen = [(v, d) for v, d in chosen if not all(a <= b for a, b in zip(w, v))]
        chosen.append((w, c))
    return chosen


def _project_closed(k: Ideal, count: int, target: Ring, budget: _Budget) -> list[Stratum]:
    order = elimination_order(count) if count else GREVLEX
    gb = k.groebner(order)
    if len(gb) == 1 and gb[0].is_constant():
        return []
    if gb in budget.seen:
        return []
    budget.seen.add(gb)
    budget.spend(f"branch on {len(gb)} basis elements")
    kept, entries = [], []
    for g in gb:
        if any(any(m[:count]) for m in g.terms):
            entries.append((g.lead(order)[0][:count], leading_coefficient_in(g, count, order, target)))
        else:
            kept.append(Polynomial(target, {m[count:]: c for m, c in g.terms.items()}))
    present = Ideal(target, kept)
    unique = []
    for _, c in _dickson_minimal(entries):
        # only the values on V(G_z) matter
        c = present.reduce(c) if kept else c
        if c.is_constant():
            continue
        # repeated factors only slow the recursion down
        c = squarefree_part(c)
        if c not in unique:
            unique.append(c)
    if unique:
        product = target.one()
        for c in unique:
            product = product * c
        if len(unique) > 1:
            product = squarefree_part(product)
        absent = Ideal(target, [product])
    else:
        absent = Ideal.unit(target)
    pieces = []
    piece = Stratum(present, absent)
    if not piece.is_empty():
        pieces.append(piece)
    if not unique:
        return pieces
    ring = k.ring
    positions = [count + i for i in range(target.nvars)]
    lifted = product.embed(ring, positions)
    if not k.contains(lifted):
        # one branch on V(prod c_g) still strictly enlarges the ideal
        branches = [lifted]
    else:
        branches = [c.embed(ring, positions) for c in unique]
    for b in branches:
        pieces.extend(_project_closed(k.with_generators([b]), count, target, budget))
    return pieces


def _graph_ring(f: PolyMap, with_t: bool) -> tuple[Ring, list[int], list[int]]:
    taken = set()
    names = []
    if with_t:
        names.append("_t")
        taken.add("_t")
    for n in list(f.source.names) + list(f.target.names):
        while n in taken:
            n = n + "'"
        taken.add(n)
        names.append(n)
    offset = 1 if with_t else 0
    src_pos = [offset + i for i in range(f.source.nvars)]
    tgt_pos = [offset + f.source.nvars + j for j in range(f.target.nvars)]
    return Ring(tuple(names), f.source.modulus), src_pos, tgt_pos


def image_of_stratum(f: PolyMap, s: Stratum, budget: _Budget | None = None) -> list[Stratum]:
    if s.ring != f.source:
        raise MisuseError("stratum does not live in the map's source")
    budget = budget or _Budget(algebra_config().max_branches)
    if not s.absent.generators:
        return []
    unit_absent = any(g.is_constant() for g in s.absent.generators)
    splits = [None] if unit_absent else list(s.absent.generators)
    pieces = []
    for g in splits:
        ring, src_pos, tgt_pos = _graph_ring(f, with_t=g is not None)
        gens = [p.embed(ring, src_pos) for p in s.present.generators]
        for j, comp in enumerate(f.components):
            gens.append(ring.var(tgt_pos[j]) - comp.embed(ring, src_pos))
        if g is not None:
            gens.append(1 - ring.var(0) * g.embed(ring, src_pos))
        count = ring.nvars - f.target.nvars
        pieces.extend(_project_closed(Ideal(ring, gens), count, f.target, budget))
    return pieces


def chevalley_image(f: PolyMap, s: AffineConstructible) -> AffineConstructible:
    """A finite union of strata equal to ``f(S)`` over the algebraic closure."""
    if s.ring != f.source:
        raise MisuseError("constructible set does not live in the map's source")
    budget = _Budget(algebra_config().max_branches)
    pieces = []
    for st in s.strata:
        pieces.extend(image_of_stratum(f, st, budget))
    return AffineConstructible(f.target, tuple(pieces))


# -- good-map witnesses -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GoodWitness:
    """Certificate that ``f(U)`` contains a nonempty open part of its closure.

    ``certified_stratum`` is ``V(E) - V(s)`` with ``E = closure_ideal`` and
    ``s = witness_poly``.  Both certificates are re-checked on construction:
    ``s`` is not in the radical of ``E`` (so the stratum is nonempty), and
    the stratum minus the image is empty.
    """

    closure_ideal: Ideal
    witness_poly: Polynomial
    certified_stratum: Stratum
    image: AffineConstructible

    def __post_init__(self):
        if radical_member(self.witness_poly, self.closure_ideal):
            raise TheoremViolation("witness polynomial vanishes on the whole closure")
        leftover = intersection(AffineConstructible(self.image.ring, (self.certified_stratum,)),
                                complement(self.image))
        if not is_empty(leftover):
            raise TheoremViolation("certified stratum is not contained in the image")


def good_witness(f: PolyMap, z: Ideal, j: Ideal | None = None) -> GoodWitness:
    """Witness ``s`` with ``D(s) & cl f(U)`` nonempty and inside ``f(U)``.

    ``U = V(z) - V(j)``; ``z`` is asserted prime by the caller.  Soundness of
    the returned certificate does not depend on that assertion, only the
    guarantee that some witness exists does.
    """
    ring = f.source
    if j is None:
        j = Ideal.unit(ring)
    source = Stratum(z, j)
    if source.is_empty():
        raise MisuseError("V(Z) - V(J) is empty")
    image = chevalley_image(f, AffineConstructible(ring, (source,)))
    e = closure(image)
    tgt = f.target
    missing = difference(closed_set(e), image)
    if is_empty(missing):
        s = tgt.one()
    else:
        b = closure(missing)
        candidates = sorted(b.groebner(), key=lambda p: (p.total_degree(), len(p.terms), str(p)))
        s = next((p for p in candidates if not radical_member(p, e)), None)
        if s is None:
            raise TheoremViolation("no generator of the boundary ideal avoids the closure")
    return GoodWitness(e, s, Stratum(e, Ideal(tgt, [s])), image)
