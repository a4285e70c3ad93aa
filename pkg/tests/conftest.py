"""Shared strategies and definition-level oracles for the finite backend.

The oracles below work from the raw relation ``leq`` and the textbook
definitions (open = up-closed, locally closed = open meet closed, ...).
They never call the mask shortcuts of ``FiniteSpace``, so agreement is a
real cross-check.
"""

from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import strategies as st

from goodmaps.finite.enumerate import all_preorders, monotone_maps
from goodmaps.finite.space import FiniteSpace, SpaceMap


@st.composite
def spaces(draw, min_points=1, max_points=4):
    n = draw(st.integers(min_points, max_points))
    return draw(st.sampled_from(all_preorders(n)))


@st.composite
def maps(draw, max_points=3):
    src = draw(spaces(max_points=max_points))
    tgt = draw(spaces(max_points=max_points))
    return draw(st.sampled_from(list(monotone_maps(src, tgt))))


# -- brute-force oracles -------------------------------------------------------


def subsets(n):
    return range(1 << n)


def members(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def oracle_opens(space: FiniteSpace) -> set[int]:
    n = space.n_points
    return {s for s in subsets(n)
            if all(not (s >> x & 1) or all(y in members(s) for y in range(n) if space.leq(x, y))
                   for x in range(n))}


def oracle_closeds(space: FiniteSpace) -> set[int]:
    full = (1 << space.n_points) - 1
    return {full & ~o for o in oracle_opens(space)}


def oracle_closure(space: FiniteSpace, s: int) -> int:
    return min((c for c in oracle_closeds(space) if c & s == s), key=lambda c: bin(c).count("1"))


def oracle_locally_closed(space: FiniteSpace, s: int) -> bool:
    return any(o & c == s for o in oracle_opens(space) for c in oracle_closeds(space))


def oracle_irreducible(space: FiniteSpace, s: int) -> bool:
    # not a union of two relatively closed proper subsets
    if not s:
        return False
    rel_closed = {c & s for c in oracle_closeds(space)}
    return not any(a | b == s for a, b in combinations(rel_closed - {s}, 2)) and \
        not any(a == s for a in rel_closed - {s})


def oracle_constructible(space: FiniteSpace, s: int) -> bool:
    lc = [m for m in subsets(space.n_points) if m and oracle_locally_closed(space, m)]
    # a subset is a finite union of locally closed sets iff the union of the
    # locally closed sets inside it is the whole subset
    union = 0
    for m in lc:
        if m & ~s == 0:
            union |= m
    return union == s


def oracle_good(f: SpaceMap) -> bool:
    """Good-map definition over all subsets, from first principles."""
    src, tgt = f.source, f.target
    opens = oracle_opens(tgt)
    for u in subsets(src.n_points):
        if not (oracle_irreducible(src, u) and oracle_locally_closed(src, u)):
            continue
        img = 0
        for x in members(u):
            img |= 1 << f.assignment[x]
        cl = oracle_closure(tgt, img)
        if not any(w & img and w & img == w & cl for w in opens):
            return False
    return True


def oracle_weak_good(f: SpaceMap) -> bool:
    src, tgt = f.source, f.target
    for u in subsets(src.n_points):
        if not (u and oracle_locally_closed(src, u)):
            continue
        img = 0
        for x in members(u):
            img |= 1 << f.assignment[x]
        if not any(v and v & ~img == 0 and oracle_locally_closed(tgt, v) for v in subsets(tgt.n_points)):
            return False
    return True


@pytest.fixture
def sierpinski():
    from goodmaps.finite.space import make_space
    return make_space(2, [(1, 0)])


@pytest.fixture
def indiscrete_pair():
    from goodmaps.finite.space import make_space
    return make_space(2, [(0, 1), (1, 0)])


# -- acceptance report -----------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
