"""Brute-force ground truth.

Membership here is decided straight from the order-theoretic definitions
(embedding index sets and explicit block placements); nothing in this
module touches the automata.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .core import embedding_indices
from .polyrat import SeriesTable


@dataclass(frozen=True)
class EnumerationSpec:
    norm_bound: int
    length_bound: int | None = None
    max_part: int | None = None

    def __post_init__(self):
        if self.norm_bound < 1:
            raise ValueError("norm_bound must be >= 1")


def compositions_of(n: int, length: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``n`` with ``length`` parts in lexicographic order."""
    if length == 0:
        if n == 0:
            yield ()
        return
    for cuts in combinations(range(1, n), length - 1):
        prev = 0
        parts = []
        for c in cuts:
            parts.append(c - prev)
            prev = c
        parts.append(n - prev)
        yield tuple(parts)


def enumerate_words(spec: EnumerationSpec | int) -> Iterator[tuple[int, ...]]:
    """Every nonempty composition of norm at most the bound, ordered by
    norm, then length, then lexicographically."""
    if isinstance(spec, int):
        spec = EnumerationSpec(spec)
    for n in range(1, spec.norm_bound + 1):
        top = n if spec.length_bound is None else min(n, spec.length_bound)
        for length in range(1, top + 1):
            for w in compositions_of(n, length):
                if spec.max_part is None or max(w) <= spec.max_part:
                    yield w


def in_language(u: Sequence[int], w: Sequence[int], stat: str) -> bool:
    em = embedding_indices(u, w)
    if stat == "F":
        return bool(em)
    if stat == "A":
        return not em
    if stat == "S":
        return em == {len(w) - len(u) + 1}
    raise ValueError(f"unknown statistic {stat!r}")


def brute_series(u: Sequence[int], stat: str, norm_bound: int) -> SeriesTable:
    u = tuple(u)
    if not u:
        raise ValueError("u must be nonempty")
    coeffs: dict[tuple[int, int], int] = {}
    if stat == "A":
        coeffs[(0, 0)] = 1
    for w in enumerate_words(norm_bound):
        if in_language(u, w, stat):
            key = (len(w), sum(w))
            coeffs[key] = coeffs.get(key, 0) + 1
    return SeriesTable(norm_bound, coeffs)


def brute_avoid_diff(u: Sequence[int], v: Sequence[int], norm_bound: int | None = None,
                     universe: Iterable[Sequence[int]] | None = None
                     ) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Words avoiding u but not v, and words avoiding v but not u.

    The search runs over ``universe`` when given, else over all words of
    norm at most ``norm_bound``.
    """
    if not u or not v:
        raise ValueError("u and v must be nonempty")
    if universe is None:
        if norm_bound is None:
            raise ValueError("give a norm bound or an explicit universe")
        universe = enumerate_words(norm_bound)
    set_u, set_v = [], []
    for w in universe:
        w = tuple(w)
        au = not embedding_indices(u, w)
        av = not embedding_indices(v, w)
        if au and not av:
            set_u.append(w)
        elif av and not au:
            set_v.append(w)
    return sorted(set_u), sorted(set_v)


def pattern_embeds(blocks: Sequence[Sequence[int]], w: Sequence[int]) -> bool:
    """Search every placement of the blocks, in order and without overlap,
    where each block is dominated by the factor it sits on."""

    def place(b: int, start: int) -> bool:
        if b == len(blocks):
            return True
        y = blocks[b]
        for j in range(start, len(w) - len(y) + 1):
            if all(y[i] <= w[j + i] for i in range(len(y))) and place(b + 1, j + len(y)):
                return True
        return False

    return place(0, 0)


def in_pattern_language(blocks: Sequence[Sequence[int]], w: Sequence[int], stat: str) -> bool:
    """S-membership means the pattern embeds in ``w`` but in no proper
    prefix of it."""
    hit = pattern_embeds(blocks, w)
    if stat == "F":
        return hit
    if stat == "A":
        return not hit
    if stat == "S":
        return hit and not pattern_embeds(blocks, w[:-1])
    raise ValueError(f"unknown statistic {stat!r}")


def brute_pattern_series(pattern, stat: str, norm_bound: int) -> SeriesTable:
    blocks = [tuple(b) for b in getattr(pattern, "blocks", pattern)]
    if not blocks or any(not b for b in blocks):
        raise ValueError("pattern blocks must be nonempty")
    coeffs: dict[tuple[int, int], int] = {}
    if stat == "A":
        coeffs[(0, 0)] = 1
    for w in enumerate_words(norm_bound):
        if in_pattern_language(blocks, w, stat):
            key = (len(w), sum(w))
            coeffs[key] = coeffs.get(key, 0) + 1
    return SeriesTable(norm_bound, coeffs)
