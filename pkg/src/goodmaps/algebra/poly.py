"""Sparse multivariate polynomials over Q or a prime field.

Exponent vectors are tuples; terms live in a dict ``{exponent: coefficient}``
with no zero coefficients.  Coefficients over Q are ``fractions.Fraction``;
over GF(p) they are ``GF`` elements.  Nothing here uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ..errors import MisuseError


class GF:
    """Element of the prime field of order ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        if isinstance(v, Fraction):
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GF):
            return other.v
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return int(other)

    def __add__(self, other):
        return GF(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return GF(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return GF(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return GF(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GF(self.v * pow(self._coerce(other), -1, self.p), self.p)

    def __rtruediv__(self, other):
        return GF(self._coerce(other) * pow(self.v, -1, self.p), self.p)

    def __pow__(self, k: int):
        return GF(pow(self.v, k, self.p), self.p)

    def __neg__(self):
        return GF(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        try:
            return (self.v - self._coerce(other)) % self.p == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return str(self.v)


@dataclass(frozen=True)
class Ring:
    """Polynomial ring context: variable names and coefficient field.

    ``modulus == 0`` means the rationals.
    """

    names: tuple[str, ...]
    modulus: int = 0

    @property
    def nvars(self) -> int:
        return len(self.names)

    def coerce(self, c):
        if self.modulus:
            return c if isinstance(c, GF) else GF(c, self.modulus)
        if isinstance(c, Fraction):
            return c
        if isinstance(c, GF):
            raise MisuseError("prime-field coefficient in a rational ring")
        return Fraction(c)

    def __call__(self, terms: Mapping[Sequence[int], object] | int | Fraction = 0) -> "Polynomial":
        if not isinstance(terms, Mapping):
            return self.const(terms)
        out = {}
        for exp, c in terms.items():
            exp = tuple(exp)
            if len(exp) != self.nvars:
                raise MisuseError("exponent length does not match the ring")
            c = self.coerce(c)
            if c:
                out[exp] = out.get(exp, 0) + c
                if not out[exp]:
                    del out[exp]
        return Polynomial(self, out)

    @cached_property
    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * self.nvars

    def const(self, c) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def var(self, i: int | str) -> "Polynomial":
        if isinstance(i, str):
            i = self.names.index(i)
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): self.coerce(1)})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def with_prefix(self, names: Sequence[str]) -> "Ring":
        """Ring with extra variables placed before the existing ones."""
        return Ring(tuple(names) + self.names, self.modulus)

    def tail(self, keep: int) -> "Ring":
        return Ring(self.names[self.nvars - keep:] if keep else (), self.modulus)

    def fresh_names(self, stem: str, count: int) -> list[str]:
        taken = set(self.names)
        out = []
        i = 0
        while len(out) < count:
            name = f"_{stem}{i}"
            if name not in taken:
                out.append(name)
                taken.add(name)
            i += 1
        return out


class Polynomial:
    __slots__ = ("ring", "terms", "_hash", "_lead")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None
        self._lead = {}

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring.zero_exp, self.ring.coerce(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, k in enumerate(e) if k)
        return out

    def lead(self, order) -> tuple[tuple[int, ...], object]:
        hit = self._lead.get(order)
        if hit is None:
            if not self.terms:
                raise MisuseError("zero polynomial has no leading term")
            key = order.key
            m = max(self.terms, key=key)
            hit = (m, self.terms[m])
            self._lead[order] = hit
        return hit

    def leading_monomial(self, order):
        return self.lead(order)[0]

    def leading_coefficient(self, order):
        return self.lead(order)[1]

    def monic(self, order) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lead(order)[1]
        if c == 1:
            return self
        return Polynomial(self.ring, {m: v / c for m, v in self.terms.items()})

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise MisuseError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise MisuseError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Polynomial(self.ring, out)

    def mul_term(self, exp, c) -> "Polynomial":
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(m, exp)): v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, GF)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Sequence):
        if len(point) != self.ring.nvars:
            raise MisuseError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        point = [self.ring.coerce(v) for v in point]
        total = self.ring.coerce(0)
        for m, c in self.terms.items():
            term = c
            for v, k in zip(point, m):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def substitute(self, images: Sequence["Polynomial"], ring: Ring | None = None) -> "Polynomial":
        """Replace variable ``i`` by ``images[i]``; images share the target ring."""
        if len(images) != self.ring.nvars:
            raise MisuseError("need one image per variable")
        if ring is None:
            ring = images[0].ring if images else self.ring
        result = ring.zero()
        powers = {}
        for m, c in self.terms.items():
            term = ring.const(c)
            for i, k in enumerate(m):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    term = term * powers[key]
            result = result + term
        return result

    def embed(self, ring: Ring, positions: Sequence[int]) -> "Polynomial":
        """Move into ``ring`` sending variable ``i`` to variable ``positions[i]``."""
        out = {}
        n = ring.nvars
        for m, c in self.terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    e[positions[i]] += k
            out[tuple(e)] = ring.coerce(c) if ring.modulus != self.ring.modulus else c
        return Polynomial(ring, out)

    def partial_evaluate(self, values: Mapping[int, object], ring: Ring, positions: Sequence[int | None]) -> "Polynomial":
        """Fix the variables in ``values``; the rest move per ``positions``."""
        out = {}
        values = {i: self.ring.coerce(v) for i, v in values.items()}
        n = ring.nvars
        for m, c in self.terms.items():
            e = [0] * n
            coef = c
            for i, k in enumerate(m):
                if not k:
                    continue
                if i in values:
                    coef = coef * values[i] ** k
                else:
                    e[positions[i]] += k
            if coef:
                key = tuple(e)
                v = out.get(key, 0) + coef
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return Polynomial(ring, out)

    # -- printing -------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _format_coef(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    if isinstance(c, Fraction):
        return str(c.numerator)
    return str(c)


def format_poly(p: Polynomial, order=None) -> str:
    """Deterministic text form readable back by the parser."""
    if not p.terms:
        return "0"
    from .order import GREVLEX

    order = order or GREVLEX
    names = p.ring.names
    pieces = []
    for m in sorted(p.terms, key=order.key, reverse=True):
        c = p.terms[m]
        factors = []
        for name, k in zip(names, m):
            if k == 1:
                factors.append(name)
            elif k:
                factors.append(f"{name}^{k}")
        if isinstance(c, GF):
            neg, mag = False, _format_coef(c)
        else:
            neg, mag = c < 0, _format_coef(abs(c))
        if factors:
            body = "*".join(factors)
            if mag != "1":
                body = f"{mag}*{body}"
        else:
            body = mag
        pieces.append(("-" if neg else "+", body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def poly_from_terms(ring: Ring, items: Iterable[tuple[Sequence[int], object]]) -> Polynomial:
    return ring({tuple(m): c for m, c in items})
