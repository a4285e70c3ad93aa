import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from goodmaps.algebra.groebner import buchberger, is_groebner, normal_form
from goodmaps.algebra.ideal import (
    Ideal,
    eliminate,
    intersect,
    polynomial_gcd,
    radical_member,
    saturate,
    squarefree_part,
)
from goodmaps.algebra.order import GREVLEX, LEX, elimination_order
from goodmaps.algebra.parse import parse_polynomial
from goodmaps.algebra.poly import Ring
from goodmaps.errors import MisuseError, ResourceLimitError

from test_poly import polys

R = Ring(("x", "y"))
R3 = Ring(("x", "y", "z"))


def P(text, ring=R):
    return parse_polynomial(text, ring)


def I(*gens, ring=R):
    return Ideal(ring, [P(g, ring) for g in gens])


def as_strings(basis):
    return [str(g) for g in basis]


# -- independent oracle: sympy's reduced Groebner basis ---------------------------------


def sympy_basis(polys_, ring, order):
    syms = sympy.symbols(ring.names)
    exprs = [sympy.sympify(str(p).replace("^", "**"), locals=dict(zip(ring.names, syms))) for p in polys_]
    g = sympy.groebner(exprs, *syms, order=order, domain="QQ")
    return {sympy.Poly(e, *syms).monic().as_expr() for e in g.exprs}


def our_basis(polys_, ring, order):
    syms = sympy.symbols(ring.names)
    basis = buchberger(polys_, {"lex": LEX, "grevlex": GREVLEX}[order], ring=ring)
    # Poly.monic scales by the lex-leading coefficient; apply it to both sides
    return {sympy.Poly(sympy.sympify(str(p).replace("^", "**"), locals=dict(zip(ring.names, syms))), *syms)
            .monic().as_expr() for p in basis}


@settings(max_examples=40, deadline=None)
@given(st.lists(polys(R3, max_terms=3, max_exp=2), min_size=1, max_size=3), st.sampled_from(["lex", "grevlex"]))
def test_reduced_basis_matches_sympy(gens, order):
    gens = [g for g in gens if not g.is_zero()] or [R3.one()]
    assert our_basis(gens, R3, order) == sympy_basis(gens, R3, order)


# -- worked examples --------------------------------------------------------------------


def test_groebner_examples():
    assert as_strings(I("x - y", "x + y").groebner(LEX)) == ["x", "y"]
    x_only = Ring(("x",))
    assert as_strings(Ideal(x_only, [P("x^2", x_only)]).groebner()) == ["x^2"]
    assert as_strings(I("1").groebner()) == ["1"]
    assert I("3", "x").is_unit()


def test_elimination_examples():
    assert eliminate(I("x*y - 1"), 1).is_zero()
    # keep x: put x last
    yx = Ring(("y", "x"))
    assert eliminate(Ideal(yx, [P("x - y^2", yx)]), 1).is_zero()
    assert as_strings(eliminate(I("x", "y"), 1).groebner()) == ["y"]


def test_saturation_examples():
    assert as_strings(saturate(I("x*y"), I("x")).groebner()) == ["y"]
    assert saturate(I("x^2"), I("x")).is_unit()
    assert saturate(I("x*y"), I("1")) == I("x*y")
    assert saturate(I("x*y"), Ideal.zero(R)).is_unit()


def test_radical_membership_examples():
    assert radical_member(P("x"), I("x^2"))
    assert not radical_member(P("y"), I("x*y - 1"))
    assert radical_member(R.zero(), I("x"))


def test_intersection():
    assert as_strings(intersect(I("x"), I("y")).groebner()) == ["x*y"]
    assert intersect(I("1"), I("x")) == I("x")


def test_gcd_and_squarefree():
    assert polynomial_gcd(P("x^2 - y^2"), P("x^2 + 2*x*y + y^2")) == P("x + y")
    assert squarefree_part(P("(x + 2)^3*(y - 1)^2*(x - y)")) == P("(x + 2)*(y - 1)*(x - y)")
    assert squarefree_part(P("7")) == R.one()


# -- properties ----------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.lists(polys(R3, max_terms=3), min_size=1, max_size=3),
       st.sampled_from([LEX, GREVLEX, elimination_order(1)]))
def test_basis_properties(gens, order):
    basis = buchberger(gens, order, ring=R3)
    assert is_groebner(basis, order)
    # idempotent: the reduced basis of a reduced basis is itself
    assert buchberger(basis, order, ring=R3) == basis
    # generators reduce to zero
    assert all(normal_form(g, basis, order).is_zero() for g in gens)


@settings(max_examples=30, deadline=None)
@given(st.lists(polys(R3, max_terms=3), min_size=1, max_size=3), polys(R3, max_terms=3))
def test_membership_is_order_independent(gens, f):
    member = {normal_form(f, buchberger(gens, o, ring=R3), o).is_zero()
              for o in (LEX, GREVLEX, elimination_order(2))}
    assert len(member) == 1


@settings(max_examples=30, deadline=None)
@given(st.lists(polys(R3, max_terms=3), min_size=1, max_size=2), polys(R3, max_terms=2), polys(R3, max_terms=2))
def test_combinations_are_members(gens, a, b):
    ideal = Ideal(R3, gens)
    combo = a * gens[0] + b * gens[-1]
    assert ideal.contains(combo)


@settings(max_examples=30, deadline=None)
@given(polys(R, max_terms=3), st.integers(1, 3))
def test_radical_contains_roots_of_powers(f, k):
    assert radical_member(f, Ideal(R, [f ** k]))


def test_saturation_sampling_oracle():
    # closure of V(x*y) - V(x) is V(y): sampled points of the difference satisfy y = 0
    rng = random.Random(0)
    sat = saturate(I("x*y"), I("x"))
    for _ in range(50):
        x0 = rng.randint(1, 9)
        assert all(g.evaluate((x0, 0)) == 0 for g in sat.groebner())


@pytest.mark.parametrize("gens", [
    ["x - y^2", "z - x*y"],
    ["x*y - 1", "z - x - y"],
    ["x^2 - y*z", "x - y - z"],
])
def test_elimination_sampling_oracle(gens):
    # eliminating x: projections of solutions lie on V(elim), and a point off
    # V(elim) has an empty fibre by the Nullstellensatz
    ideal = Ideal(R3, [P(g, R3) for g in gens])
    elim = eliminate(ideal, 2)
    rng = random.Random(1)
    for _ in range(40):
        y0, z0 = rng.randint(-4, 4), rng.randint(-4, 4)
        fibre = ideal.with_generators([P("y", R3) - y0, P("z", R3) - z0])
        on_elim = all(g.evaluate((y0, z0)) == 0 for g in elim.groebner())
        if not on_elim:
            assert fibre.is_unit()
        if not fibre.is_unit():
            assert on_elim


# -- guards and misuse ----------------------------------------------------------------------


def test_degree_guard(monkeypatch):
    monkeypatch.setenv("GOODMAP_MAX_DEGREE", "3")
    with pytest.raises(ResourceLimitError):
        buchberger([P("x^5 - y", R), P("y^4 - x", R)], LEX, ring=R)


def test_mixed_rings_rejected():
    with pytest.raises(MisuseError):
        Ideal(R, [P("x", R3)])
    with pytest.raises(MisuseError):
        I("x") + Ideal(R3, [])


def test_prime_field_basis():
    f5 = Ring(("x", "y"), modulus=5)
    basis = Ideal(f5, [P("x^2 - 1", f5), P("x*y - 2", f5)]).groebner(LEX)
    assert all(g.ring == f5 for g in basis)
    assert is_groebner(list(basis), LEX)
