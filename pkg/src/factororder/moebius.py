"""Möbius function of ordinary factor order over a finite alphabet.

Words are strings or tuples of atoms; the recursion needs only
factor containment, the longest proper border o(w) and the inner factor
i(w) = w minus its first and last letters.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

Word = tuple


def _as_word(w) -> Word:
    return tuple(w)


def failure_function(w: Sequence) -> list[int]:
    """fail[i] = length of the longest proper border of w[:i+1]."""
    fail = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return fail


def dominant_outer(w: Sequence) -> Word:
    w = _as_word(w)
    if not w:
        return ()
    return w[:failure_function(w)[-1]]


def dominant_inner(w: Sequence) -> Word:
    w = _as_word(w)
    if len(w) < 2:
        raise ValueError("the inner factor needs a word of length >= 2")
    return w[1:-1]


def is_flat(w: Sequence) -> bool:
    return len(set(w)) <= 1


def is_factor(u: Sequence, w: Sequence) -> bool:
    """True iff ``u`` occurs as a contiguous factor of ``w`` (KMP scan)."""
    u, w = _as_word(u), _as_word(w)
    if not u:
        return True
    if len(u) > len(w):
        return False
    fail = failure_function(u)
    k = 0
    for a in w:
        while k and a != u[k]:
            k = fail[k - 1]
        if a == u[k]:
            k += 1
            if k == len(u):
                return True
    return False


@lru_cache(maxsize=None)
def _mu(u: Word, w: Word) -> int:
    if not is_factor(u, w):
        return 0
    d = len(w) - len(u)
    if d < 2:
        return -1 if d else 1
    o, i = dominant_outer(w), dominant_inner(w)
    if d == 2:
        return 1 if not is_flat(w) and (u == o or u == i) else 0
    if is_factor(u, o) and not is_factor(o, i):
        return _mu(u, o)
    return 0


def mobius(u: Sequence, w: Sequence) -> int:
    """mu(u, w) in factor order; 0 when u is not a factor of w."""
    return _mu(_as_word(u), _as_word(w))


def interval(u: Sequence, w: Sequence) -> list[Word]:
    """Distinct factors z of ``w`` having ``u`` as a factor, by length
    then first occurrence."""
    u, w = _as_word(u), _as_word(w)
    if not is_factor(u, w):
        raise ValueError("u is not a factor of w")
    seen = set()
    out = []
    for length in range(len(u), len(w) + 1):
        for s in range(len(w) - length + 1):
            z = w[s:s + length]
            if z not in seen and is_factor(u, z):
                seen.add(z)
                out.append(z)
    return out


def mobius_oracle(u: Sequence, w: Sequence) -> int:
    """mu(u, w) by inverting zeta on the interval [u, w] directly."""
    u, w = _as_word(u), _as_word(w)
    elems = interval(u, w)  # sorted by length, so lower elements come first
    mu: dict[Word, int] = {}
    for z in elems:
        if z == u:
            mu[z] = 1
        else:
            mu[z] = -sum(mu[y] for y in elems if len(y) < len(z) and is_factor(y, z))
    return mu[w]


def parse_alpha_word(text: str, alphabet: str) -> Word:
    text = text.strip()
    if text in ("e", "ε"):
        return ()
    for a in text:
        if a not in alphabet:
            raise ValueError(f"letter {a!r} is not in the alphabet {alphabet!r}")
    return tuple(text)


def non_regularity_witness(n: int, j: int = 0) -> tuple[str, int]:
    """The word a b^(n+j) a b^n a together with mu(a, .)."""
    if n < 1 or j < 0:
        raise ValueError("need n >= 1 and j >= 0")
    word = "a" + "b" * (n + j) + "a" + "b" * n + "a"
    return word, mobius("a", word)
