"""Monomial orders as sort keys: larger key means larger monomial.

Keys are flat tuples of ints so that ``neg_key`` (componentwise negation)
turns a max-selection into a min-heap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache


def _grevlex_key(exp):
    return (sum(exp), *(-e for e in reversed(exp)))


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex``, or ``block``.

    A block order compares the first ``blocks[0]`` variables by grevlex,
    breaking ties with the next block, and so on; the variables of earlier
    blocks dominate, which is what elimination needs.
    """

    kind: str
    blocks: tuple[int, ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)
    _neg: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and not self.blocks:
            raise ValueError("block order needs block sizes")

    def key(self, exp):
        hit = self._cache.get(exp)
        if hit is not None:
            return hit
        if self.kind == "lex":
            hit = exp
        elif self.kind == "grevlex":
            hit = _grevlex_key(exp)
        else:
            parts = []
            start = 0
            for size in self.blocks:
                parts.extend(_grevlex_key(exp[start:start + size]))
                start += size
            parts.extend(_grevlex_key(exp[start:]))
            hit = tuple(parts)
        if len(self._cache) > 1_000_000:
            self._cache.clear()
        self._cache[exp] = hit
        return hit

    def neg_key(self, exp):
        hit = self._neg.get(exp)
        if hit is None:
            hit = tuple(-k for k in self.key(exp))
            if len(self._neg) > 1_000_000:
                self._neg.clear()
            self._neg[exp] = hit
        return hit


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


@lru_cache(maxsize=None)
def elimination_order(count: int) -> MonomialOrder:
    """Block order whose first block holds the ``count`` variables to eliminate."""
    return MonomialOrder("block", (count,))
