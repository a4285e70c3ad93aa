"""Executable invariants for finite spaces and maps.

Each check returns ``True`` when the property was exercised and held,
``None`` when its hypotheses do not apply to the instance, and a message
string describing the violation otherwise.  The registry keys are stable
names used in reports and counterexample files.
"""

from __future__ import annotations

from itertools import combinations

from .constructible import criterion_mask, decompose_bruteforce, find_nonconstructible_image
from .goodness import (
    characterization_failure,
    good_witness_mask,
    is_good_fast,
    is_jacobson,
    is_weak_good_fast,
    t0_witness_mask,
)
from .space import FiniteSpace, SpaceMap, bits, is_sober, is_t0, submasks

# -- helpers -----------------------------------------------------------------


def restrict_over_target_open(f: SpaceMap, mask: int) -> SpaceMap:
    """``f^{-1}(V) -> V`` for an open ``V`` of the target."""
    pre = f.preimage_mask(mask)
    src, src_points = f.source.subspace(pre)
    tgt, tgt_points = f.target.subspace(mask)
    index = {p: i for i, p in enumerate(tgt_points)}
    return SpaceMap(src, tgt, tuple(index[f.assignment[p]] for p in src_points))


def open_covers(space: FiniteSpace):
    """All families of nonempty opens whose union is the whole space."""
    opens = [o for o in space.open_masks if o]
    full = space.full_mask
    for r in range(1, len(opens) + 1):
        for family in combinations(opens, r):
            union = 0
            for o in family:
                union |= o
            if union == full:
                yield family


def nonempty_opens(space: FiniteSpace) -> list[int]:
    return [o for o in space.open_masks if o]


# -- map invariants -----------------------------------------------------------


def chevalley_equivalence(f: SpaceMap):
    good = is_good_fast(f)
    bad_e = find_nonconstructible_image(f)
    if good != (bad_e is None):
        return f"good={good} but constructible image counterexample={bad_e!r}"
    return True


def characterization_equivalence(f: SpaceMap):
    good = is_good_fast(f)
    failure = characterization_failure(f)
    if good != (failure is None):
        return f"good={good} but characterization failure={failure!r}"
    return True


def good_implies_weak_good(f: SpaceMap):
    if not is_good_fast(f):
        return None
    if not is_weak_good_fast(f):
        return "good map is not weak good"
    return True


def restriction(f: SpaceMap):
    if not is_good_fast(f):
        return None
    for s in f.source.locally_closed_masks:
        if not is_good_fast(f.restrict(s)):
            return f"restriction to locally closed {sorted(bits(s))} is not good"
    return True


def corestriction(f: SpaceMap):
    if not is_good_fast(f):
        return None
    img = f.image_mask(f.source.full_mask)
    for y_sub in submasks(f.target.full_mask):
        if y_sub & img == img and not is_good_fast(f.corestrict(y_sub)):
            return f"corestriction to {sorted(bits(y_sub))} is not good"
    return True


def _source_locality(f: SpaceMap):
    good = is_good_fast(f)
    restricted = {o: is_good_fast(f.restrict(o)) for o in nonempty_opens(f.source)}
    for cover in open_covers(f.source):
        if good != all(restricted[o] for o in cover):
            return f"good={good} but cover {[sorted(bits(o)) for o in cover]} disagrees"
    return True


def _target_locality(f: SpaceMap):
    good = is_good_fast(f)
    restricted = {o: is_good_fast(restrict_over_target_open(f, o)) for o in nonempty_opens(f.target)}
    for cover in open_covers(f.target):
        if good != all(restricted[o] for o in cover):
            return f"good={good} but cover {[sorted(bits(o)) for o in cover]} disagrees"
    return True


def locality_source(f: SpaceMap):
    if not is_sober(f.source):
        return None
    return _source_locality(f)


def locality_target(f: SpaceMap):
    if not is_sober(f.target):
        return None
    return _target_locality(f)


def t0_maps_are_good(f: SpaceMap):
    if not (is_t0(f.source) and is_t0(f.target)):
        return None
    tgt = f.target
    for u in f.source.irreducible_locally_closed_masks:
        w = t0_witness_mask(f, u)
        img = f.image_mask(u)
        hit = w & img
        if not tgt.is_open_mask(w) or not hit or hit != w & tgt.closure_mask(img):
            return f"explicit witness fails at U={sorted(bits(u))}"
        if good_witness_mask(f, u) is None:
            return f"no witness at U={sorted(bits(u))}"
    return True


def jacobson_hypotheses(f: SpaceMap) -> bool:
    if not is_weak_good_fast(f) or not is_jacobson(f.target):
        return False
    src = f.source
    closed_src = src.closed_points_mask
    for y in bits(f.target.closed_points_mask):
        fiber = f.preimage_mask(1 << y)
        sub, points = src.subspace(fiber)
        if not is_jacobson(sub):
            return False
        for i in bits(sub.closed_points_mask):
            if not closed_src >> points[i] & 1:
                return False
    return True


def jacobson_ascent(f: SpaceMap):
    if not jacobson_hypotheses(f):
        return None
    if not is_jacobson(f.source):
        return "hypotheses hold but the source is not Jacobson"
    return True


MAP_INVARIANTS = {
    "chevalley_equivalence": chevalley_equivalence,
    "characterization_equivalence": characterization_equivalence,
    "good_implies_weak_good": good_implies_weak_good,
    "restriction": restriction,
    "corestriction": corestriction,
    "locality_source": locality_source,
    "locality_target": locality_target,
    "t0_maps_are_good": t0_maps_are_good,
    "jacobson_ascent": jacobson_ascent,
}

# enumerating every open cover is exponential in the number of opens
EXHAUSTIVE_ONLY = frozenset({"locality_source", "locality_target"})


# -- space invariants ---------------------------------------------------------


def criterion_matches_bruteforce(space: FiniteSpace):
    for e in range(1 << space.n_points):
        crit = criterion_mask(space, e)
        brute = decompose_bruteforce(space, e) is not None
        if crit != brute:
            return f"subset {sorted(bits(e))}: criterion={crit}, brute force={brute}"
    return True


def constructible_boolean_algebra(space: FiniteSpace):
    full = space.full_mask
    cons = [e for e in range(1 << space.n_points) if criterion_mask(space, e)]
    cons_set = set(cons)
    for a in cons:
        if full & ~a not in cons_set:
            return f"complement of {sorted(bits(a))} not constructible"
        for b in cons:
            if a | b not in cons_set or a & b not in cons_set:
                return f"{sorted(bits(a))} and {sorted(bits(b))} not closed under union/intersection"
    return True


def t0_all_constructible(space: FiniteSpace):
    if not is_t0(space):
        return None
    for e in range(1 << space.n_points):
        if not criterion_mask(space, e):
            return f"subset {sorted(bits(e))} of a T0 space judged non-constructible"
    return True


SPACE_INVARIANTS = {
    "criterion_matches_bruteforce": criterion_matches_bruteforce,
    "constructible_boolean_algebra": constructible_boolean_algebra,
    "t0_all_constructible": t0_all_constructible,
}


# -- composition --------------------------------------------------------------


def weak_good_composition(f: SpaceMap, g: SpaceMap):
    if not (is_weak_good_fast(f) and is_weak_good_fast(g)):
        return None
    if not is_weak_good_fast(f.then(g)):
        return "composite of weak good maps is not weak good"
    return True


PAIR_INVARIANTS = {"weak_good_composition": weak_good_composition}


# -- data on the sobriety hypothesis -------------------------------------------


def nonsober_locality_findings(maps):
    """Run both locality equivalences on maps whose relevant side is not sober.

    Returns counts and the first few failing instances; the statements carry
    a sobriety hypothesis, so failures here are findings, not violations.
    """
    out = {"source": {"checked": 0, "failures": 0, "trivial_cover_only": 0, "examples": []},
           "target": {"checked": 0, "failures": 0, "trivial_cover_only": 0, "examples": []}}
    for f in maps:
        for side, space, check in (("source", f.source, _source_locality),
                                   ("target", f.target, _target_locality)):
            if is_sober(space):
                continue
            rec = out[side]
            rec["checked"] += 1
            if len(nonempty_opens(space)) == 1:
                rec["trivial_cover_only"] += 1
            result = check(f)
            if result is not True:
                rec["failures"] += 1
                if len(rec["examples"]) < 5:
                    rec["examples"].append({"map": f, "message": result})
    return out
