import random
from itertools import permutations

import pytest
from hypothesis import given, settings

from goodmaps.finite.enumerate import (
    all_preorders,
    all_spaces_up_to,
    exhaustive_maps,
    monotone_maps,
    random_monotone_map,
    sample_maps,
)
from goodmaps.finite.goodness import (
    characterization_failure,
    is_good_characterization,
    is_good_definition,
    is_good_fast,
    is_jacobson,
    is_weak_good,
    is_weak_good_fast,
)
from goodmaps.finite.invariants import (
    MAP_INVARIANTS,
    jacobson_hypotheses,
    nonsober_locality_findings,
    t0_maps_are_good,
    open_covers,
    restrict_over_target_open,
)
from goodmaps.finite.space import SpaceMap, identity_map, is_sober, is_t0, make_space

from conftest import maps, oracle_good, oracle_weak_good


@pytest.fixture
def point_into_indiscrete(indiscrete_pair):
    return SpaceMap(make_space(1), indiscrete_pair, (0,))


def test_identity_is_good(sierpinski):
    f = identity_map(sierpinski)
    assert is_good_definition(f).good
    assert is_good_characterization(f)
    assert is_weak_good(f).weak_good


def test_point_into_indiscrete(point_into_indiscrete):
    verdict = is_good_definition(point_into_indiscrete)
    assert not verdict
    assert [u.members for u in verdict.failing] == [(0,)]
    assert not is_good_characterization(point_into_indiscrete)
    z, u = characterization_failure(point_into_indiscrete)
    assert z.members == u.members == (0,)
    weak = is_weak_good(point_into_indiscrete)
    assert not weak and [u.members for u in weak.failing] == [(0,)]


def test_constant_map_to_closed_point(sierpinski):
    f = SpaceMap(sierpinski, sierpinski, (1, 1))
    verdict = is_good_definition(f)
    assert verdict.good
    # the search takes the largest open first, which is the whole space here
    assert all(w.mask == sierpinski.full_mask for _, w in verdict.witness_table)


def test_witnesses_are_rechecked(sierpinski):
    from goodmaps.errors import MisuseError
    from goodmaps.finite.goodness import GoodnessVerdict
    f = identity_map(sierpinski)
    # {1} is not open
    with pytest.raises(MisuseError):
        GoodnessVerdict(f, ((sierpinski.subset([1]), sierpinski.subset([1])),))


def test_jacobson_examples(sierpinski):
    assert is_jacobson(make_space(2))
    assert not is_jacobson(sierpinski)
    assert is_jacobson(make_space(1))


def test_sierpinski_self_maps_are_all_good(sierpinski):
    from goodmaps.finite.enumerate import monotone_maps
    fs = list(monotone_maps(sierpinski, sierpinski))
    assert len(fs) == 3
    assert all(is_good_definition(f).good for f in fs)


# -- agreement of the three routes and the definition oracle ----------------------------


@settings(max_examples=80, deadline=None)
@given(maps(max_points=3))
def test_routes_match_first_principles(f):
    expected = oracle_good(f)
    assert is_good_definition(f).good == expected
    assert is_good_fast(f) == expected
    assert is_good_characterization(f) == expected


@settings(max_examples=60, deadline=None)
@given(maps(max_points=3))
def test_weak_goodness_matches_first_principles(f):
    expected = oracle_weak_good(f)
    assert is_weak_good(f).weak_good == expected
    assert is_weak_good_fast(f) == expected


def test_sampled_four_point_maps_agree():
    rng = random.Random(7)
    for f in sample_maps(4, 4, 300, rng):
        assert is_good_fast(f) == is_good_characterization(f)
        if is_good_fast(f):
            assert is_weak_good_fast(f)


def test_all_map_invariants_up_to_two_points():
    # the full exhaustive sweep at three points runs in the acceptance suite
    for f in exhaustive_maps(2):
        for name, check in MAP_INVARIANTS.items():
            result = check(f)
            assert result is True or result is None, (name, f, result)


def test_sampling_is_seeded():
    spaces = all_preorders(4)
    a = [random_monotone_map(spaces[5], spaces[9], random.Random(3)).assignment for _ in range(3)]
    b = [random_monotone_map(spaces[5], spaces[9], random.Random(3)).assignment for _ in range(3)]
    assert a == b


def test_sampling_covers_all_maps():
    from goodmaps.finite.enumerate import monotone_maps
    src, tgt = all_preorders(2)[0], all_preorders(3)[3]
    everything = {f.assignment for f in monotone_maps(src, tgt)}
    rng = random.Random(1)
    seen = {random_monotone_map(src, tgt, rng).assignment for _ in range(400)}
    assert seen == everything


# -- locality and the sobriety hypothesis -----------------------------------------------


def test_open_covers_of_sierpinski(sierpinski):
    covers = {tuple(sorted(c)) for c in open_covers(sierpinski)}
    assert covers == {(3,), (1, 3)}


def test_restriction_over_target_open(sierpinski):
    f = identity_map(sierpinski)
    r = restrict_over_target_open(f, 0b01)
    assert r.source.n_points == r.target.n_points == 1


def test_nonsober_locality_regression(point_into_indiscrete, indiscrete_pair):
    # indiscrete target: the only open cover is {Y}, so target locality is vacuous
    f = point_into_indiscrete
    assert not is_sober(f.target)
    data = nonsober_locality_findings([f])
    assert data["target"] == {"checked": 1, "failures": 0, "trivial_cover_only": 1, "examples": []}
    # indiscrete source mapped identically: same story on the source side
    g = identity_map(indiscrete_pair)
    data = nonsober_locality_findings([g])
    assert data["source"]["trivial_cover_only"] == 1 and data["source"]["failures"] == 0


def test_nonsober_locality_sweep_finds_no_failures():
    data = nonsober_locality_findings(exhaustive_maps(3))
    assert data["source"]["checked"] == 2780
    assert data["source"]["failures"] == 0
    assert data["target"]["failures"] == 0


# -- Jacobson ascent ------------------------------------------------------------------------


def test_jacobson_hypotheses_on_identity(sierpinski):
    discrete = make_space(2)
    assert jacobson_hypotheses(identity_map(discrete))
    assert not jacobson_hypotheses(identity_map(sierpinski))


# -- finite T0 spaces -------------------------------------------------------------------


def _canonical(space):
    n = space.n_points
    return n, min(tuple(space.leq(p[i], p[j]) for i in range(n) for j in range(n))
                  for p in permutations(range(n)))


def test_every_map_between_t0_spaces_up_to_four_points_is_good():
    # goodness is invariant under relabelling, so one space per isomorphism class suffices
    reps = {}
    for space in all_spaces_up_to(4):
        if is_t0(space):
            reps.setdefault(_canonical(space), space)
    assert len(reps) == 1 + 2 + 5 + 16
    checked = 0
    for a in reps.values():
        for b in reps.values():
            for f in monotone_maps(a, b):
                checked += 1
                assert t0_maps_are_good(f) is True, f
                assert is_good_definition(f).good, f
    assert checked == 19702
