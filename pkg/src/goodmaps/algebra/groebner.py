"""Multivariate division and Buchberger's algorithm.

Buchberger runs with the coprime-leading-monomial criterion and the chain
criterion, selects pairs by smallest lcm (normal strategy), and finishes by
minimalizing and interreducing to the unique reduced basis.  Guards on
degree, basis size, pair count, and intermediate polynomial size raise
``ResourceLimitError`` instead of running away.

Over the rationals the run is fraction-free: polynomials are kept as
primitive integer polynomials and reduction cross-multiplies, which keeps
coefficient growth in check.  Only the final basis is made monic.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Sequence

from gmpy2 import gcd, mpq, mpz

from ..config import algebra_config
from ..errors import MisuseError, ResourceLimitError
from .order import MonomialOrder
from .poly import Polynomial, Ring


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_exp(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _same_ring(polys) -> Ring:
    rings = {p.ring for p in polys}
    if len(rings) > 1:
        raise MisuseError("mixed ring contexts")
    return rings.pop()


def _fast(ring: Ring, terms: dict) -> dict:
    """Rational coefficients as ``mpq`` for the inner loops."""
    if ring.modulus:
        return terms
    return {m: mpq(c.numerator, c.denominator) for m, c in terms.items()}


def _integral(terms: dict) -> dict:
    """Clear denominators of ``Fraction`` terms."""
    den = mpz(1)
    for c in terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return {m: c.numerator * (den // c.denominator) for m, c in terms.items()}


def _slow(ring: Ring, terms: dict) -> dict:
    if ring.modulus:
        return terms
    return {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in terms.items()}


def divide(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder):
    """Multivariate division: ``f == sum(q_i * d_i) + r``.

    No term of ``r`` is divisible by a leading monomial of a divisor.
    Divisors are tried in the given sequence at every step.
    """
    ring = _same_ring([f, *divisors])
    divs = []
    for d in divisors:
        if d.is_zero():
            divs.append(None)
        else:
            divs.append(d.lead(order))
    quotients = [dict() for _ in divisors]
    rem = {}
    p = dict(f.terms)
    key = order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, d in enumerate(divisors):
            lead = divs[i]
            if lead is None or not divides(lead[0], m):
                continue
            shift = tuple(a - b for a, b in zip(m, lead[0]))
            factor = c / lead[1]
            quotients[i][shift] = quotients[i].get(shift, 0) + factor
            for dm, dc in d.terms.items():
                mm = tuple(a + b for a, b in zip(dm, shift))
                v = p.get(mm, 0) - factor * dc
                if v:
                    p[mm] = v
                else:
                    p.pop(mm, None)
            break
        else:
            rem[m] = c
            del p[m]
    qs = [Polynomial(ring, {m: c for m, c in q.items() if c}) for q in quotients]
    return qs, Polynomial(ring, rem)


def _reduce_terms(terms: dict, basis: list, order: MonomialOrder, integral: bool, top: bool = False,
                  max_terms: int | None = None, max_bits: int | None = None,
                  trace: list | None = None) -> dict:
    """Reduce ``terms`` by basis entries ``(lm, terms, lc)``.

    Over a field the entries are monic.  With ``integral`` the coefficients
    are integers and the result is a nonzero multiple of a remainder.  With
    ``top`` set, stop at the first irreducible leading term.
    """
    neg = order.neg_key
    rem = {}
    p = dict(terms)
    heap = [(neg(m), m) for m in p]
    heapq.heapify(heap)
    queued = set(p)
    while heap:
        _, m = heapq.heappop(heap)
        queued.discard(m)
        c = p.get(m)
        if c is None:
            continue
        if max_bits is not None and integral and c.bit_length() > max_bits:
            raise ResourceLimitError(f"coefficient exceeds {max_bits} bits", trace)
        for lm, g, lc in basis:
            if divides(lm, m):
                if integral:
                    d = gcd(c, lc)
                    a, b = lc // d, c // d
                    if a != 1:
                        for k in p:
                            p[k] *= a
                        for k in rem:
                            rem[k] *= a
                else:
                    b = c
                shift = tuple(x - y for x, y in zip(m, lm))
                for gm, gc in g.items():
                    mm = tuple(x + y for x, y in zip(gm, shift))
                    v = p.get(mm, 0) - b * gc
                    if v:
                        p[mm] = v
                        if mm not in queued:
                            queued.add(mm)
                            heapq.heappush(heap, (neg(mm), mm))
                    else:
                        p.pop(mm, None)
                if max_terms is not None and len(p) > max_terms:
                    raise ResourceLimitError(f"intermediate polynomial exceeds {max_terms} terms", trace)
                break
        else:
            if top:
                return p
            rem[m] = c
            del p[m]
    return rem


def _normal_form_terms(terms: dict, basis: list, order: MonomialOrder) -> dict:
    """Exact remainder of ``terms`` by monic field entries ``(lm, terms)``."""
    return _reduce_terms(terms, [(lm, g, 1) for lm, g in basis], order, integral=False)


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    entries = []
    for g in basis:
        if g.is_zero():
            continue
        g = g.monic(order)
        entries.append((g.lead(order)[0], _fast(f.ring, g.terms)))
    return Polynomial(f.ring, _slow(f.ring, _normal_form_terms(_fast(f.ring, f.terms), entries, order)))


def _normalize(terms: dict, key, integral: bool):
    """``(lm, terms, lc)``: primitive with positive ``lc``, or monic."""
    m = max(terms, key=key)
    c = terms[m]
    if integral:
        d = mpz(0)
        for v in terms.values():
            d = gcd(d, v)
            if d == 1:
                break
        if c < 0:
            d = -d
        if d != 1:
            terms = {k: v // d for k, v in terms.items()}
        return m, terms, terms[m]
    if c != 1:
        terms = {k: v / c for k, v in terms.items()}
    return m, terms, 1


def _spoly_terms(a, b, integral: bool):
    (lm_a, ta, ca), (lm_b, tb, cb) = a, b
    if integral:
        d = gcd(ca, cb)
        fa, fb = cb // d, ca // d
    else:
        fa = fb = 1
    lcm = lcm_exp(lm_a, lm_b)
    sa = tuple(x - y for x, y in zip(lcm, lm_a))
    sb = tuple(x - y for x, y in zip(lcm, lm_b))
    out = {}
    for m, c in ta.items():
        out[tuple(x + y for x, y in zip(m, sa))] = fa * c
    for m, c in tb.items():
        mm = tuple(x + y for x, y in zip(m, sb))
        v = out.get(mm, 0) - fb * c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def buchberger(polys: Sequence[Polynomial], order: MonomialOrder, ring: Ring | None = None,
               trace: list | None = None) -> list[Polynomial]:
    """Reduced Groebner basis, monic, sorted by decreasing leading monomial."""
    polys = [p for p in polys if not p.is_zero()]
    if ring is None:
        if not polys:
            raise MisuseError("ring is required for an empty generator list")
        ring = _same_ring(polys)
    elif polys and _same_ring(polys) != ring:
        raise MisuseError("generators do not live in the given ring")
    cfg = algebra_config()
    key = order.key
    one = ring.one()
    integral = not ring.modulus

    basis: list = []  # entries (lm, terms, lc)

    def add(terms):
        entry = _normalize(terms, key, integral)
        lm = entry[0]
        if sum(lm) > cfg.max_degree:
            raise ResourceLimitError(f"leading degree {sum(lm)} exceeds guard {cfg.max_degree}", trace)
        basis.append(entry)
        if len(basis) > cfg.max_basis:
            raise ResourceLimitError(f"basis size exceeds guard {cfg.max_basis}", trace)

    def reduce(terms):
        return _reduce_terms(terms, basis, order, integral, top=True, max_terms=cfg.max_terms,
                             max_bits=cfg.max_coeff_bits, trace=trace)

    # seed with the inputs reduced against one another as they arrive
    for p in polys:
        r = reduce(_integral(p.terms) if integral else p.terms)
        if r:
            if all(sum(m) == 0 for m in r):
                return [one]
            add(r)

    pairs = set()
    queue = []

    def push(i, j):
        pairs.add((i, j))
        heapq.heappush(queue, (order.neg_key(lcm_exp(basis[i][0], basis[j][0])), i, j))

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)
    done = 0
    while queue:
        _, i, j = heapq.heappop(queue)
        pairs.discard((i, j))
        lm_i, lm_j = basis[i][0], basis[j][0]
        lcm = lcm_exp(lm_i, lm_j)
        # coprime leading monomials: S-polynomial reduces to zero
        if all(a == 0 or b == 0 for a, b in zip(lm_i, lm_j)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not divides(basis[k][0], lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        done += 1
        if done > cfg.max_pairs:
            raise ResourceLimitError(f"processed pairs exceed guard {cfg.max_pairs}", trace)
        r = reduce(_spoly_terms(basis[i], basis[j], integral))
        if not r:
            continue
        if all(sum(m) == 0 for m in r):
            return [one]
        add(r)
        new = len(basis) - 1
        for k in range(new):
            push(k, new)

    return _reduce_basis(ring, basis, order, integral)


def _reduce_basis(ring: Ring, basis: list, order: MonomialOrder, integral: bool) -> list[Polynomial]:
    key = order.key
    lms = [entry[0] for entry in basis]
    keep = []
    for idx, lm in enumerate(lms):
        dominated = False
        for jdx, other in enumerate(lms):
            if jdx == idx or not divides(other, lm):
                continue
            # ties between equal monomials keep the earliest copy
            if other != lm or jdx < idx:
                dominated = True
                break
        if not dominated:
            keep.append(basis[idx])
    reduced = []
    for idx, (lm, terms, _) in enumerate(keep):
        others = [e for jdx, e in enumerate(keep) if jdx != idx]
        # the leading term is irreducible by the others, so only a scalar changes
        r = _reduce_terms(terms, others, order, integral)
        c = r[lm]
        if integral:
            out = {m: Fraction(int(v), int(c)) for m, v in r.items()}
        else:
            out = {m: v / c for m, v in r.items()}
        reduced.append(Polynomial(ring, out))
    reduced.sort(key=lambda p: key(p.lead(order)[0]), reverse=True)
    return reduced


def is_groebner(basis: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Every S-polynomial of the basis reduces to zero (Buchberger's test)."""
    entries = []
    for g in basis:
        if not g.is_zero():
            g = g.monic(order)
            entries.append((g.lead(order)[0], _fast(g.ring, g.terms), 1))
    for j in range(len(entries)):
        for i in range(j):
            if _reduce_terms(_spoly_terms(entries[i], entries[j], False), entries, order, integral=False):
                return False
    return True
