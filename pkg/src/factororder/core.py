"""Words over the positive integers and over finite posets.

A composition is represented as a plain tuple of positive ints.  All
functions here are pure; positions and embedding indices are 1-based to
match the usual conventions for words.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

Word = tuple  # tuple[int, ...] for compositions, tuple[str, ...] over a poset


class Weight(NamedTuple):
    length: int
    norm: int


def composition(parts: Iterable[int]) -> tuple[int, ...]:
    """Validate ``parts`` and return them as a composition tuple."""
    w = tuple(int(p) for p in parts)
    for p in w:
        if p < 1:
            raise ValueError(f"composition parts must be >= 1, got {p}")
    return w


def parse_word(text: str) -> tuple[int, ...]:
    """Parse ``"2143"`` or ``"10,2,3"`` into a composition.

    The empty string and ``"e"`` denote the empty word.
    """
    text = text.strip()
    if text in ("", "e", "ε"):
        return ()
    if "," in text or " " in text:
        items = [s for s in text.replace(",", " ").split()]
    else:
        items = list(text)
    try:
        return composition(int(s) for s in items)
    except ValueError as exc:
        raise ValueError(f"malformed word {text!r}: {exc}") from None


def format_word(w: Sequence[int]) -> str:
    if all(p <= 9 for p in w):
        return "".join(str(p) for p in w)
    return ",".join(str(p) for p in w)


def weight(w: Sequence[int]) -> Weight:
    return Weight(len(w), sum(w))


def embedding_indices(u: Sequence, w: Sequence,
                      leq: Callable = operator.le) -> frozenset[int]:
    """Return ``Em(u, w)``, the 1-based starting positions of the factors of
    ``w`` that dominate ``u`` componentwise under ``leq``."""
    lu = len(u)
    if lu == 0:
        raise ValueError("embedding indices are only defined for nonempty u")
    out = []
    for j in range(len(w) - lu + 1):
        if all(leq(u[i], w[j + i]) for i in range(lu)):
            out.append(j + 1)
    return frozenset(out)


def embeds(u: Sequence, w: Sequence, leq: Callable = operator.le) -> bool:
    """True iff ``u <= w`` in generalized factor order."""
    return bool(embedding_indices(u, w, leq))


def k_factorize(w: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """Split ``w`` into ``[y1, z1, y2, ..., z_{m-1}, y_m]``.

    Each y block has parts < k and each z block parts >= k.  Only y1 and
    y_m may be empty.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    blocks: list[list[int]] = [[]]
    for p in w:
        high = p >= k
        in_z = len(blocks) % 2 == 0
        if high != in_z:
            blocks.append([])
        blocks[-1].append(p)
    if len(blocks) % 2 == 0:
        blocks.append([])
    return [tuple(b) for b in blocks]


def unfactorize(blocks: Iterable[Sequence[int]]) -> tuple[int, ...]:
    return tuple(p for b in blocks for p in b)


# -- word transforms -------------------------------------------------------

def reverse(w: Sequence) -> tuple:
    return tuple(reversed(w))


def shift_up(w: Sequence[int], m: int = 1) -> tuple[int, ...]:
    return tuple(p + m for p in w)


def shift_down(w: Sequence[int], m: int = 1) -> tuple[int, ...]:
    if any(p <= m for p in w):
        raise ValueError(f"cannot shift {format_word(w)} down by {m}")
    return tuple(p - m for p in w)


def prepend_one(w: Sequence[int]) -> tuple[int, ...]:
    return (1,) + tuple(w)


class IotaMap:
    """A strictly increasing map on the positive integers, given by its
    values ``iota(1) < iota(2) < ... < iota(D)`` up to a declared bound D.

    ``collapse`` sends a letter in ``[iota(j), iota(j+1))`` to ``j``; letters
    at or beyond ``iota(D)`` are outside the declared domain.
    """

    def __init__(self, values: Sequence[int]):
        values = tuple(int(v) for v in values)
        if not values:
            raise ValueError("iota needs at least one value")
        if values[0] < 1 or any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError(f"iota values must be positive and strictly increasing: {values}")
        self.values = values

    def __repr__(self) -> str:
        return f"IotaMap({self.values})"

    def __call__(self, p: int) -> int:
        if not 1 <= p <= len(self.values):
            raise ValueError(f"iota is only declared on 1..{len(self.values)}, got {p}")
        return self.values[p - 1]

    def collapse_letter(self, a: int) -> int:
        vals = self.values
        if a < vals[0]:
            raise ValueError(f"cannot collapse {a} < iota(1) = {vals[0]}")
        if a >= vals[-1]:
            raise ValueError(f"cannot collapse {a}: beyond declared domain (iota({len(vals)}) = {vals[-1]})")
        j = 1
        while vals[j] <= a:
            j += 1
        return j


def apply_iota(w: Sequence[int], iota: IotaMap) -> tuple[int, ...]:
    return tuple(iota(p) for p in w)


def collapse(w: Sequence[int], iota: IotaMap) -> tuple[int, ...]:
    return tuple(iota.collapse_letter(a) for a in w)


# -- finite posets -----------------------------------------------------------

@dataclass(frozen=True)
class FinitePoset:
    elements: tuple[str, ...]
    leq_matrix: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise ValueError("duplicate poset element")
        m = self.leq_matrix
        if len(m) != n or any(len(row) != n for row in m):
            raise ValueError("order matrix has wrong shape")
        for i in range(n):
            if not m[i][i]:
                raise ValueError(f"order is not reflexive at {self.elements[i]!r}")
            for j in range(n):
                if i != j and m[i][j] and m[j][i]:
                    raise ValueError(f"order is not antisymmetric: {self.elements[i]!r}, {self.elements[j]!r}")
                if m[i][j]:
                    for k in range(n):
                        if m[j][k] and not m[i][k]:
                            raise ValueError("order is not transitive")

    def index(self, a: str) -> int:
        try:
            return self.elements.index(a)
        except ValueError:
            raise ValueError(f"unknown poset element {a!r}") from None

    def leq(self, a: str, b: str) -> bool:
        return self.leq_matrix[self.index(a)][self.index(b)]

    @classmethod
    def from_covers(cls, elements: Sequence[str],
                    covers: Iterable[Sequence[str]]) -> "FinitePoset":
        """Build the poset whose order is the reflexive-transitive closure of
        the cover pairs ``(a, b)`` meaning ``a < b``."""
        elements = tuple(str(e) for e in elements)
        pos = {e: i for i, e in enumerate(elements)}
        if len(pos) != len(elements):
            raise ValueError("duplicate poset element")
        n = len(elements)
        m = [[i == j for j in range(n)] for i in range(n)]
        for pair in covers:
            a, b = (str(s) for s in pair)
            for e in (a, b):
                if e not in pos:
                    raise ValueError(f"unknown poset element {e!r}")
            if a == b:
                raise ValueError(f"cycle detected at {a!r}")
            m[pos[a]][pos[b]] = True
        # Warshall closure
        for k in range(n):
            for i in range(n):
                if m[i][k]:
                    for j in range(n):
                        if m[k][j]:
                            m[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] and m[j][i]:
                    raise ValueError(f"cycle detected between {elements[i]!r} and {elements[j]!r}")
        return cls(elements, tuple(tuple(r) for r in m))

    @classmethod
    def antichain(cls, elements: Sequence[str]) -> "FinitePoset":
        return cls.from_covers(elements, [])

    @classmethod
    def chain(cls, elements: Sequence[str]) -> "FinitePoset":
        return cls.from_covers(elements, list(zip(elements, elements[1:])))

    @classmethod
    def from_json(cls, data) -> "FinitePoset":
        """Accepts a parsed ``{"elements": [...], "covers": [[a, b], ...]}``
        object or a path to a file holding one."""
        if not isinstance(data, dict):
            with open(data) as fh:
                data = json.load(fh)
        try:
            return cls.from_covers(data["elements"], data.get("covers", []))
        except KeyError as exc:
            raise ValueError(f"poset file is missing {exc}") from None

    def to_json(self) -> dict:
        n = len(self.elements)
        covers = []
        for i in range(n):
            for j in range(n):
                if i != j and self.leq_matrix[i][j] and not any(
                        k not in (i, j) and self.leq_matrix[i][k] and self.leq_matrix[k][j]
                        for k in range(n)):
                    covers.append([self.elements[i], self.elements[j]])
        return {"elements": list(self.elements), "covers": covers}

    def parse_word(self, text: str) -> tuple[str, ...]:
        """Letters separated by commas, or concatenated when every element
        name is a single character."""
        text = text.strip()
        if "," in text or " " in text:
            letters = tuple(s for s in text.replace(",", " ").split())
        elif all(len(e) == 1 for e in self.elements):
            letters = tuple(text)
        else:
            letters = (text,) if text else ()
        for a in letters:
            self.index(a)
        return letters
