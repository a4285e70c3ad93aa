import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goodmaps.affine.constructible import (
    AffineConstructible,
    Stratum,
    closed_set,
    closure,
    closure_as_constructible,
    complement,
    contains_point,
    empty_set,
    intersection,
    is_empty,
    is_subset,
    open_set,
    rational_point,
    same_set,
    stratum,
    union,
    whole_space,
)
from goodmaps.affine.image import GoodWitness, PolyMap, chevalley_image, good_witness, identity, projection
from goodmaps.affine.oracle import in_image, random_points
from goodmaps.algebra.ideal import Ideal
from goodmaps.algebra.parse import parse_polynomial
from goodmaps.algebra.poly import Ring
from goodmaps.errors import MisuseError, ResourceLimitError, TheoremViolation

A1 = Ring(("z1",))
A2 = Ring(("x", "y"))
T2 = Ring(("z1", "z2"))


def P(text, ring=A2):
    return parse_polynomial(text, ring)


def ideal(ring, *texts):
    return Ideal(ring, [P(t, ring) for t in texts])


@pytest.fixture
def hyperbola():
    f = PolyMap(A2, A1, (P("x"),))
    return f, closed_set(ideal(A2, "x*y - 1"))


@pytest.fixture
def x_xy():
    f = PolyMap(A2, T2, (P("x"), P("x*y")))
    return f, whole_space(A2)


def agrees_with_oracle(f, source, image, points):
    return [p for p in points if contains_point(image, p) != in_image(f, source, p)]


# -- emptiness and Boolean operations ---------------------------------------------------


def test_emptiness_examples():
    line = Ring(("x",))
    assert is_empty(AffineConstructible(line, (Stratum(ideal(line, "x^2"), ideal(line, "x")),)))
    assert not is_empty(AffineConstructible(A2, (Stratum(ideal(A2, "x*y - 1"), ideal(A2, "y")),)))
    assert is_empty(empty_set(A2))


def test_complement_of_empty_is_everything():
    assert same_set(complement(empty_set(A1)), whole_space(A1))
    assert is_empty(complement(whole_space(A1)))


def test_line_minus_origin_and_origin():
    v = closed_set(ideal(A1, "z1"))
    d = open_set(ideal(A1, "z1"))
    assert is_empty(intersection(v, d))
    both = union(v, d)
    assert same_set(both, whole_space(A1))
    assert is_subset(v, both) and not is_subset(both, v)
    for p in random_points(1, 100, seed=5):
        assert contains_point(both, p)


def test_intersection_rule():
    a = AffineConstructible(A2, (stratum(A2, [P("x")], [P("y")]),))
    b = AffineConstructible(A2, (stratum(A2, [P("y - 1")], [P("x + y")]),))
    meet = intersection(a, b)
    assert contains_point(meet, (0, 1))
    assert not contains_point(meet, (0, 0))
    assert same_set(meet, rational_point(A2, (0, 1)))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(["x", "y", "x*y - 1", "x - y", "x^2 + y", "x + 1"]), max_size=2),
       st.lists(st.sampled_from(["x", "y", "x - 1", "x*y"]), min_size=1, max_size=2))
def test_complement_partitions_sample_points(present, absent):
    s = AffineConstructible(A2, (stratum(A2, [P(t) for t in present], [P(t) for t in absent]),))
    c = complement(s)
    assert is_empty(intersection(s, c))
    assert same_set(union(s, c), whole_space(A2))
    for p in random_points(2, 30, seed=len(present) + 7 * len(absent)):
        assert contains_point(s, p) != contains_point(c, p)


def test_mixed_rings_rejected():
    with pytest.raises(MisuseError):
        union(whole_space(A1), whole_space(A2))
    with pytest.raises(MisuseError):
        contains_point(whole_space(A2), (1,))


# -- closure ------------------------------------------------------------------------------


def test_closure_examples():
    s = AffineConstructible(A2, (stratum(A2, [P("x*y")], [P("x")]),))
    assert closure(s) == ideal(A2, "y")
    assert closure(closed_set(ideal(A2, "x - 1", "y - 2"))) == ideal(A2, "x - 1", "y - 2")
    assert closure(empty_set(A2)).is_unit()


@pytest.mark.parametrize("present, absent", [
    (["x*y"], ["x"]),
    (["x^2 - y^2"], ["x + y"]),
    ([], ["x", "y"]),
    (["y - x^2"], ["y"]),
])
def test_closure_is_idempotent(present, absent):
    s = AffineConstructible(A2, (stratum(A2, [P(t) for t in present], [P(t) for t in absent]),))
    assert closure(closure_as_constructible(s)) == closure(s)


# -- image engine -----------------------------------------------------------------------------


def test_hyperbola_projection(hyperbola):
    f, source = hyperbola
    image = chevalley_image(f, source)
    assert same_set(image, open_set(ideal(A1, "z1")))
    assert contains_point(image, (2,))
    assert not contains_point(image, (0,))
    assert not contains_point(empty_set(A1), (2,))
    points = random_points(1, 100, seed=11, special=[(0,), (2,)])
    assert agrees_with_oracle(f, source, image, points) == []


def test_x_xy_image(x_xy):
    f, source = x_xy
    image = chevalley_image(f, source)
    expected = union(open_set(ideal(T2, "z1")), rational_point(T2, (0, 0)))
    assert same_set(image, expected)
    points = random_points(2, 100, seed=12, special=[(0, 0), (0, 1), (1, 0)])
    assert agrees_with_oracle(f, source, image, points) == []
    assert contains_point(image, (0, 0)) and not contains_point(image, (0, 1))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from(["x", "x*y - 1", "x - y", "x^2 + y", "y^2 - x^3"]), max_size=2),
       st.lists(st.sampled_from(["x", "y", "x - 1"]), min_size=1, max_size=2))
def test_identity_image_is_the_set(present, absent):
    s = AffineConstructible(A2, (stratum(A2, [P(t) for t in present], [P(t) for t in absent]),))
    assert same_set(chevalley_image(identity(A2), s), s)


def test_squaring_is_surjective():
    line = Ring(("x",))
    f = PolyMap(line, A1, (parse_polynomial("x^2", line),))
    image = chevalley_image(f, whole_space(line))
    assert same_set(image, whole_space(A1))
    # -1 has no rational square root but lies in the image over the closure
    assert in_image(f, whole_space(line), (Fraction(-1),))


def test_image_of_composite_matches_iterated_image():
    f = PolyMap(A2, T2, (P("x"), P("x*y")))
    g = PolyMap(T2, A1, (parse_polynomial("z1 + z2", T2),))
    s = AffineConstructible(A2, (stratum(A2, [P("y^2 - 1")], [P("x")]),))
    direct = chevalley_image(f.then(g), s)
    stepwise = chevalley_image(g, chevalley_image(f, s))
    assert same_set(direct, stepwise)


def test_random_two_output_maps_agree_with_fibre_oracle():
    rng = random.Random(2024)
    target = T2

    def rpoly(deg, nterms):
        out = {}
        for _ in range(nterms):
            e = [0, 0]
            for _ in range(rng.randint(0, deg)):
                e[rng.randrange(2)] += 1
            out[tuple(e)] = rng.choice([-2, -1, 1, 2])
        return A2(out)

    checked = 0
    for trial in range(8):
        f = PolyMap(A2, target, (rpoly(2, 2), rpoly(2, 2)))
        present = [rpoly(2, 2)] if rng.random() < 0.5 else []
        absent = [rpoly(1, 2)] if rng.random() < 0.5 else None
        s = AffineConstructible(A2, (stratum(A2, present, absent),))
        try:
            image = chevalley_image(f, s)
        except ResourceLimitError:
            continue
        points = random_points(2, 25, seed=trial)
        for _ in range(5):
            p = (rng.randint(-2, 2), rng.randint(-2, 2))
            if contains_point(s, p):
                points.append(f(p))
        assert agrees_with_oracle(f, s, image, points) == [], (f.components, present, absent)
        checked += 1
    assert checked >= 6


def test_image_requires_source_ring(hyperbola):
    f, _ = hyperbola
    with pytest.raises(MisuseError):
        chevalley_image(f, whole_space(A1))
    with pytest.raises(MisuseError):
        PolyMap(A2, T2, (P("x"),))


def test_degree_guard_surfaces(monkeypatch, hyperbola):
    f, source = hyperbola
    monkeypatch.setenv("GOODMAP_MAX_DEGREE", "1")
    with pytest.raises(ResourceLimitError):
        chevalley_image(f, source)


# -- good witnesses --------------------------------------------------------------------------


def test_hyperbola_witness():
    w = good_witness(projection(A2, [0], A1), ideal(A2, "x*y - 1"))
    assert w.witness_poly == P("z1", A1)
    assert w.closure_ideal.is_zero()


def test_point_projection_witness():
    line = Ring(("x",))
    point = Ring(())
    w = good_witness(PolyMap(line, point, ()), Ideal.zero(line))
    assert w.witness_poly == point.one()


def test_squaring_witness():
    line = Ring(("x",))
    f = PolyMap(line, A1, (parse_polynomial("x^2", line),))
    w = good_witness(f, Ideal.zero(line))
    assert w.witness_poly == A1.one()


def test_witness_certificates_are_rechecked(hyperbola):
    f, source = hyperbola
    image = chevalley_image(f, source)
    zero = Ideal.zero(A1)
    # s = 1 would claim the origin, which is not in the image
    with pytest.raises(TheoremViolation):
        GoodWitness(zero, A1.one(), Stratum(zero, Ideal.unit(A1)), image)
    # s = z1 on the closure V(z1) vanishes identically
    z = Ideal(A1, [P("z1", A1)])
    with pytest.raises(TheoremViolation):
        GoodWitness(z, P("z1", A1), Stratum(z, Ideal(A1, [P("z1", A1)])), image)


def test_empty_source_is_misuse():
    with pytest.raises(MisuseError):
        good_witness(projection(A2, [0], A1), ideal(A2, "x", "x - 1"))
