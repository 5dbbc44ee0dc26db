"""Wilf equivalence: testing, classification, closed forms and the explicit
bijections that witness particular equivalences."""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from math import comb
from typing import Callable, Iterable, Sequence

from .core import IotaMap, collapse, embedding_indices, format_word, k_factorize
from .polyrat import ONE, RatFun2, Poly2, T, X
from .transfer import gen_function

Word = tuple[int, ...]


def wilf_equivalent(u: Sequence[int], v: Sequence[int]) -> bool:
    """``u ~ v``; compared through S, which determines F and A."""
    if not u or not v:
        raise ValueError("Wilf equivalence is defined for nonempty words")
    if len(u) != len(v) or sum(u) != sum(v):
        # the lowest term of S(u) is t^|u| x^norm(u)
        return False
    return gen_function(tuple(u), "S") == gen_function(tuple(v), "S")


def word_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(w))


@dataclass
class WilfClassification:
    classes: list[list[Word]]
    functions: list[RatFun2]

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, w: Sequence[int]) -> list[Word]:
        w = tuple(w)
        for c in self.classes:
            if w in c:
                return c
        raise KeyError(format_word(w))

    def to_json(self) -> list[dict]:
        from .polyrat import render
        return [{"representative": format_word(c[0]),
                 "members": [format_word(w) for w in c],
                 "S": render(f)} for c, f in zip(self.classes, self.functions)]


def _suffix_gf(u: Word) -> RatFun2:
    return gen_function(u, "S")


def classify(words: Iterable[Sequence[int]], workers: int | None = None) -> WilfClassification:
    """Partition ``words`` into Wilf classes.

    Classes are ordered by least member and members sorted, both in
    length-then-lex order.  ``workers`` > 1 computes the generating
    functions in a process pool; the result does not depend on it.
    """
    words = sorted({tuple(w) for w in words}, key=word_key)
    if not words:
        raise ValueError("nothing to classify")
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            gfs = list(pool.map(_suffix_gf, words, chunksize=8))
    else:
        gfs = [_suffix_gf(w) for w in words]
    buckets: dict[tuple[int, int], list[int]] = {}
    classes: list[list[Word]] = []
    functions: list[RatFun2] = []
    for w, g in zip(words, gfs):
        bucket = buckets.setdefault((len(w), sum(w)), [])
        for ci in bucket:
            if functions[ci] == g:
                classes[ci].append(w)
                break
        else:
            bucket.append(len(classes))
            classes.append([w])
            functions.append(g)
    return WilfClassification(classes, functions)


def all_permutations(n: int) -> list[Word]:
    return [tuple(p) for p in permutations(range(1, n + 1))]


def all_words(max_len: int, max_part: int) -> list[Word]:
    return [w for L in range(1, max_len + 1) for w in product(range(1, max_part + 1), repeat=L)]


# -- closed forms -------------------------------------------------------------

def closed_form_increasing(n: int) -> RatFun2:
    """S(12...n) from the B_n recursion."""
    if n < 2:
        raise ValueError("the closed form needs n >= 2")
    one_minus_x = ONE - X
    b = T * X * one_minus_x ** 2
    for k in range(2, n):
        b = T * X ** (k + 1) * b + T * X * one_minus_x ** k * (ONE - X ** k)
    return RatFun2(T ** n * X ** comb(n + 1, 2), one_minus_x ** n - b)


def q_integer(k: int) -> Poly2:
    """[k]_x = 1 + x + ... + x^(k-1)."""
    out = Poly2.const(0)
    for i in range(k):
        out = out + X ** i
    return out


def closed_form_one_k_b_l(k: int, b: int, ell: int) -> RatFun2:
    """S(1^k b^ell) for k >= 0, b >= 2, ell >= 1."""
    if k < 0 or b < 2 or ell < 1:
        raise ValueError(f"need k >= 0, b >= 2, ell >= 1; got k={k}, b={b}, ell={ell}")
    one_minus_x = ONE - X
    txb = T * X ** b
    inner = txb ** (ell - 1) * (ONE - T * X * q_integer(b - 1))
    tail = Poly2.const(0)
    for i in range(ell - 1):
        tail = tail + one_minus_x ** i * txb ** (ell - 2 - i)
    inner = inner + (one_minus_x - T * X) * tail
    return RatFun2(T ** (k + ell) * X ** (k + b * ell), one_minus_x ** (k + 1) * inner)


# -- the xmynz ~ xnymz bijection ----------------------------------------------

@dataclass(frozen=True)
class MnInstance:
    """``u = x m y n z`` and ``v = x n y m z`` with every part of x, y, z at
    most m and n > m."""

    x: Word
    y: Word
    z: Word
    m: int
    n: int

    def __post_init__(self):
        if not self.n > self.m >= 1:
            raise ValueError("need n > m >= 1")
        for part in self.x + self.y + self.z:
            if not 1 <= part <= self.m:
                raise ValueError(f"parts of x, y, z must lie in [1, {self.m}]")

    @property
    def u(self) -> Word:
        return self.x + (self.m,) + self.y + (self.n,) + self.z

    @property
    def v(self) -> Word:
        return self.x + (self.n,) + self.y + (self.m,) + self.z

    @property
    def k(self) -> int:
        return len(self.y) + 1

    @classmethod
    def from_pair(cls, u: Sequence[int], v: Sequence[int]) -> "MnInstance":
        u, v = tuple(u), tuple(v)
        if len(u) != len(v):
            raise ValueError("u and v must have the same length")
        diff = [i for i in range(len(u)) if u[i] != v[i]]
        if len(diff) != 2:
            raise ValueError("u and v must differ in exactly two positions")
        p, q = diff
        m, n = u[p], u[q]
        if v[p] != n or v[q] != m:
            raise ValueError("v must swap the two differing letters of u")
        return cls(u[:p], u[p + 1:q], u[q + 1:], m, n)


def _pseudo(pat: Word, top: int, w: Word, p: int) -> bool:
    """A factor of ``w`` dominating ``pat`` except possibly at pattern index
    ``top``, which sits at position ``p`` of ``w`` (0-based)."""
    start = p - top
    if start < 0 or start + len(pat) > len(w):
        return False
    return all(pat[r] <= w[start + r] for r in range(len(pat)) if r != top)


def _hits(pat: Word, top: int, w: Word) -> list[int]:
    return sorted(j - 1 + top for j in embedding_indices(pat, w))


@dataclass
class MnTrace:
    image: Word
    eta: list[int]                    # 1-based positions
    strings: dict[int, list[int]]     # 1-based


def mn_bijection(inst: MnInstance, w: Sequence[int], direction: str = "forward",
                 trace: bool = False):
    """Map A(u) - A(v) to A(v) - A(u) (forward) or back (backward).

    Forward: for every position i carrying the n of an embedding of v,
    walk i, i+k, i+2k, ... while v has a pseudo-embedding with its n
    there, and swap w_i with the first position where that fails.
    Backward does the same for u, walking leftwards.
    """
    w = tuple(w)
    u, v, k = inst.u, inst.v, inst.k
    in_au = not embedding_indices(u, w)
    in_av = not embedding_indices(v, w)
    if direction == "forward":
        if not (in_au and not in_av):
            raise ValueError(f"{format_word(w)} is not in A(u) - A(v)")
        pat, top, step = v, len(inst.x), k
    elif direction == "backward":
        if not (in_av and not in_au):
            raise ValueError(f"{format_word(w)} is not in A(v) - A(u)")
        pat, top, step = u, len(inst.x) + k, -k
    else:
        raise ValueError(f"unknown direction {direction!r}")
    eta = _hits(pat, top, w)
    out = list(w)
    strings = {}
    for i in eta:
        ell = 1
        while _pseudo(pat, top, w, i + ell * step):
            ell += 1
        j = i + ell * step
        strings[i + 1] = [i + r * step + 1 for r in range(ell + 1)]
        out[i], out[j] = out[j], out[i]
    image = tuple(out)
    if trace:
        return MnTrace(image, [i + 1 for i in eta], strings)
    return image


# -- lifting rearrangement witnesses through iota ------------------------------

def lift_rearrangement(f: Callable[[Word], Word], iota: IotaMap) -> Callable[[Word], Word]:
    """Given a rearrangement ``f`` witnessing ``u ~ v``, build the
    rearrangement witnessing ``iota(u) ~ iota(v)``.

    Each high block of the iota(1)-factorization is collapsed, sent
    through ``f``, and the original letters of each collapse class are
    dealt back out in their original left-to-right order.
    """

    def g(w: Sequence[int]) -> Word:
        blocks = k_factorize(w, iota.values[0])
        out: list[int] = []
        for idx, blk in enumerate(blocks):
            if idx % 2 == 0:
                out.extend(blk)
                continue
            c = collapse(blk, iota)
            queues: dict[int, deque] = {}
            for letter, j in zip(blk, c):
                queues.setdefault(j, deque()).append(letter)
            fc = f(c)
            if sorted(fc) != sorted(c):
                raise ValueError("f is not a rearrangement")
            out.extend(queues[j].popleft() for j in fc)
        return tuple(out)

    return g


def check_conjecture(values: Iterable[int]) -> list[dict]:
    """Compare a1b2c with a2b1c for all a, b, c drawn from ``values``."""
    values = list(values)
    if any(v < 2 for v in values):
        raise ValueError("a, b, c must be at least 2")
    out = []
    for a, b, c in product(values, repeat=3):
        u, v = (a, 1, b, 2, c), (a, 2, b, 1, c)
        out.append({"u": format_word(u), "v": format_word(v), "equivalent": wilf_equivalent(u, v)})
    return out
