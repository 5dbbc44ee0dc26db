"""Strong Wilf equivalence: embedding-index censuses, refutation, minimal
words for prescribed index sets, and combinators that build new witness
maps from old ones."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import (embedding_indices, format_word, k_factorize, shift_down,
                   shift_up)
from .oracle import enumerate_words

Word = tuple[int, ...]
Cell = tuple[tuple[int, ...], int, int]  # (Em-set, length, norm)


@dataclass
class EmCensus:
    subject: Word
    norm_bound: int
    counts: dict[Cell, int] = field(default_factory=dict)

    def __getitem__(self, cell: Cell) -> int:
        em, length, norm = cell
        return self.counts.get((tuple(sorted(em)), length, norm), 0)

    def merge(self, other: "EmCensus") -> "EmCensus":
        if other.subject != self.subject:
            raise ValueError("cannot merge censuses of different words")
        out = dict(self.counts)
        for k, c in other.counts.items():
            out[k] = out.get(k, 0) + c
        return EmCensus(self.subject, max(self.norm_bound, other.norm_bound), out)


def census(u: Sequence[int], norm_bound: int) -> EmCensus:
    """Count every word of norm 1..norm_bound by its embedding-index set.

    Words are grown letter by letter, tracking the set of prefix lengths
    of ``u`` dominated by the current suffix and the embedding indices
    found so far; words sharing that data are counted together.
    """
    u = tuple(u)
    if not u:
        raise ValueError("u must be nonempty")
    if norm_bound < 1:
        raise ValueError("norm_bound must be >= 1")
    ell = len(u)
    top = max(u)
    # transition table: state mask -> successor mask for letters 1..top
    trans: dict[int, list[int]] = {}

    def successors(T: int) -> list[int]:
        row = trans.get(T)
        if row is None:
            sources = [0] + [t for t in range(1, ell) if T >> (t - 1) & 1]
            row = [0]
            for a in range(1, top + 1):
                U = 0
                for t in sources:
                    if u[t] <= a:
                        U |= 1 << t
                row.append(U)
            trans[T] = row
        return row

    final_bit = 1 << (ell - 1)
    levels: list[dict] = [dict() for _ in range(norm_bound + 1)]
    levels[0][(0, 0, 0)] = 1
    counts: dict[Cell, int] = {}
    for n in range(norm_bound + 1):
        for (T, em, length), c in levels[n].items():
            if n:
                cell = (_bits(em), length, n)
                counts[cell] = counts.get(cell, 0) + c
            row = successors(T)
            for a in range(1, norm_bound - n + 1):
                U = row[min(a, top)]
                em2 = em
                if U & final_bit:
                    em2 |= 1 << (length + 1 - ell)
                key = (U, em2, length + 1)
                lvl = levels[n + a]
                lvl[key] = lvl.get(key, 0) + c
        levels[n] = {}
    return EmCensus(u, norm_bound, counts)


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def brute_census(u: Sequence[int], norm_bound: int) -> EmCensus:
    """Census by direct enumeration; the reference for :func:`census`."""
    counts: dict[Cell, int] = {}
    for w in enumerate_words(norm_bound):
        cell = (tuple(sorted(embedding_indices(u, w))), len(w), sum(w))
        counts[cell] = counts.get(cell, 0) + 1
    return EmCensus(tuple(u), norm_bound, counts)


def cell_order(cell: Cell) -> tuple:
    em, length, norm = cell
    return (norm, length, em)


@dataclass(frozen=True)
class Divergence:
    em: tuple[int, ...]
    length: int
    norm: int
    count_u: int
    count_v: int

    def to_json(self) -> dict:
        return {"em": list(self.em), "length": self.length, "norm": self.norm,
                "count_u": self.count_u, "count_v": self.count_v}


def divergences(u: Sequence[int], v: Sequence[int], norm_bound: int) -> list[Divergence]:
    """Every census cell whose counts for ``u`` and ``v`` differ, ordered
    by norm, then length, then Em-set."""
    cu = census(u, norm_bound).counts
    cv = cu if tuple(u) == tuple(v) else census(v, norm_bound).counts
    diffs = sorted((c for c in set(cu) | set(cv) if cu.get(c, 0) != cv.get(c, 0)), key=cell_order)
    return [Divergence(em, length, norm, cu.get((em, length, norm), 0), cv.get((em, length, norm), 0))
            for em, length, norm in diffs]


def strong_refute(u: Sequence[int], v: Sequence[int], norm_bound: int) -> Divergence | None:
    """A census cell proving ``u`` and ``v`` are not strongly Wilf
    equivalent, or ``None`` when the censuses agree up to the bound
    (evidence for, never proof of, strong equivalence).

    One-sided cells come first: words of that weight with that Em-set
    exist for ``u`` but not for ``v`` (then the reverse), which is a
    refutation checkable by hand.  Otherwise the first differing cell.
    Within each group cells are ordered by norm, length, Em-set.
    """
    diffs = divergences(u, v, norm_bound)
    if not diffs:
        return None
    for d in diffs:
        if d.count_u and not d.count_v:
            return d
    for d in diffs:
        if d.count_v and not d.count_u:
            return d
    return diffs[0]


def minimal_word_for_indices(u: Sequence[int], indices: Iterable[int]) -> tuple[Word, bool]:
    """Overlay copies of ``u`` at the given indices and take the largest
    entry in each column (1 where no copy reaches).  Returns the word and
    whether its embedding-index set is exactly ``indices``."""
    u = tuple(u)
    E = sorted(set(indices))
    if not u:
        raise ValueError("u must be nonempty")
    if not E:
        raise ValueError("the index set must be nonempty")
    if E[0] < 1:
        raise ValueError("embedding indices start at 1")
    length = E[-1] + len(u) - 1
    w = [1] * length
    for j in E:
        for i, part in enumerate(u):
            w[j - 1 + i] = max(w[j - 1 + i], part)
    w = tuple(w)
    return w, embedding_indices(u, w) == frozenset(E)


# -- witness maps -----------------------------------------------------------

Witness = Callable[[Word], Word]


def matching_witness(u: Sequence[int], v: Sequence[int], norm_bound: int) -> Witness:
    """A map on words of norm <= norm_bound with Em(u, w) = Em(v, f(w)).

    Words of each (Em-set, length, norm) cell are paired off in
    enumeration order; raises if some cell has different counts.
    """
    groups_u: dict[Cell, list[Word]] = {}
    groups_v: dict[Cell, list[Word]] = {}
    for w in enumerate_words(norm_bound):
        n = (len(w), sum(w))
        groups_u.setdefault((tuple(sorted(embedding_indices(u, w))), *n), []).append(w)
        groups_v.setdefault((tuple(sorted(embedding_indices(v, w))), *n), []).append(w)
    table: dict[Word, Word] = {(): ()}
    for cell, ws in groups_u.items():
        targets = groups_v.get(cell, [])
        if len(targets) != len(ws):
            raise ValueError(f"no Em-preserving bijection: cell {cell} has "
                             f"{len(ws)} vs {len(targets)} words")
        table.update(zip(ws, targets))

    def f(w: Sequence[int]) -> Word:
        w = tuple(w)
        try:
            return table[w]
        except KeyError:
            raise ValueError(f"{format_word(w)} lies outside the matched range") from None

    f.table = table
    return f


def prepend_witness(f: Witness) -> Witness:
    """g(by) = b f(y): witnesses 1u ~s 1v when f witnesses u ~s v."""

    def g(w: Sequence[int]) -> Word:
        w = tuple(w)
        return w if not w else (w[0],) + tuple(f(w[1:]))

    return g


def rotate_witness(f: Witness) -> Witness:
    """h(by) = f(y) b: witnesses 1u ~s v1 when f witnesses u ~s v."""

    def h(w: Sequence[int]) -> Word:
        w = tuple(w)
        return w if not w else tuple(f(w[1:])) + (w[0],)

    return h


def shift_up_witness(f: Witness) -> Witness:
    """Witness for u+ ~s v+: apply f to each block of parts >= 2 (shifted
    down), shift back up, and keep the runs of 1s in place."""

    def g(w: Sequence[int]) -> Word:
        out: list[int] = []
        for idx, blk in enumerate(k_factorize(w, 2)):
            out.extend(blk if idx % 2 == 0 else shift_up(f(shift_down(blk))))
        return tuple(out)

    return g


def interleave_witness(f: Witness, k: int) -> Witness:
    """Witness for u_1^k...u_n^k ~s v_1^k...v_n^k: apply f to each of the
    k subwords w_i w_{i+k} w_{i+2k} ..."""
    if k < 1:
        raise ValueError("k must be >= 1")

    def g(w: Sequence[int]) -> Word:
        w = list(w)
        for i in range(k):
            sub = tuple(w[i::k])
            w[i::k] = f(sub)
        return tuple(w)

    return g


def affix_witness(f: Witness, k: int) -> Witness:
    """Witness for yuz ~s yvz (y, z over [1, k]) when f is a rearrangement
    witnessing u ~s v for u, v over [k, oo): apply f to every block of the
    k-factorization with parts >= k."""

    def g(w: Sequence[int]) -> Word:
        out: list[int] = []
        for idx, blk in enumerate(k_factorize(w, k)):
            out.extend(blk if idx % 2 == 0 else f(blk))
        return tuple(out)

    return g


STRONG_COMBINATORS = {
    "prepend": prepend_witness,
    "rotate": rotate_witness,
    "shiftUp": shift_up_witness,
}


def strong_combinator(f: Witness, kind: str, k: int | None = None) -> Witness:
    if kind in STRONG_COMBINATORS:
        return STRONG_COMBINATORS[kind](f)
    if kind == "interleave":
        return interleave_witness(f, k if k is not None else 2)
    if kind == "affix":
        if k is None:
            raise ValueError("affix needs the threshold k")
        return affix_witness(f, k)
    raise ValueError(f"unknown combinator {kind!r}")
