"""Transfer matrices and the generating functions S, F and A.

Let v_T be the weight generating function of words leading from state T
to a final state.  Final rows are zero, so v_T = 1 on final states and
on the others

    v_T - sum_{U nonfinal} M[T, U] v_U = sum_{U final} M[T, U],

with S = v_empty.  Rows are cleared of denominators and the system is
solved by fraction-free (Bareiss) elimination over Z[t, x].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

from .automaton import (FiniteNFA, IntervalNFA, Pattern, build_finite_poset_nfa,
                        build_pattern_nfa, build_suffix_nfa)
from .core import FinitePoset
from .polyrat import ONE, ZERO, Poly2, RatFun2, T, X

ONE_MINUS_X = ONE - X
# weight of the whole alphabet as a geometric series: 1 / (1 - tx/(1-x))
ALL_WORDS = RatFun2(ONE_MINUS_X, ONE - X - T * X)


@dataclass
class TransferMatrix:
    states: tuple
    entries: dict  # (T, U) -> RatFun2, zero entries omitted

    def __getitem__(self, key) -> RatFun2:
        e = self.entries.get(key)
        return e if e is not None else RatFun2(0)

    def dense(self) -> list[list[RatFun2]]:
        return [[self[(s, v)] for v in self.states] for s in self.states]


def label_weight(lab) -> RatFun2:
    """Sum of t*x^a over the letters a of an arc label."""
    poly = ZERO
    for a in lab.singles:
        poly = poly + Poly2.monomial(1, a)
    if lab.tail is None:
        return RatFun2(poly)
    return RatFun2(poly * ONE_MINUS_X + Poly2.monomial(1, lab.tail), ONE_MINUS_X)


def transfer_matrix(nfa: IntervalNFA) -> TransferMatrix:
    if nfa.epsilon:
        raise ValueError("eliminate epsilon arcs before building a transfer matrix")
    entries = {key: label_weight(lab) for key, lab in nfa.arcs.items()}
    return TransferMatrix(nfa.states, entries)


def finite_transfer_matrix(nfa: FiniteNFA) -> TransferMatrix:
    counts: dict = {}
    for (s, _), v in nfa.delta.items():
        counts[(s, v)] = counts.get((s, v), 0) + 1
    return TransferMatrix(nfa.states, {k: RatFun2(Poly2.monomial(1, 0, c))
                                       for k, c in counts.items()})


def _row_denominator(row: list[RatFun2]) -> Poly2:
    dens: list[Poly2] = []
    for r in row:
        if r.den != ONE and all(r.den != d for d in dens):
            dens.append(r.den)
    out = ONE
    for d in dens:
        out = out * d
    return out


def bareiss_last(a: list[list[Poly2]]) -> tuple[Poly2, Poly2]:
    """Fraction-free elimination of an n x (n+1) augmented system.

    Returns ``(numerator, determinant)`` such that the last unknown equals
    numerator / determinant.  Pivots are the first nonzero entry at or
    below the diagonal in each column.
    """
    n = len(a)
    a = [list(row) for row in a]
    prev = ONE
    for k in range(n):
        piv = next((r for r in range(k, n) if not a[r][k].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular transfer system")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
        if k == n - 1:
            break
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n + 1):
                val = rowi[j] * akk
                if not aik.is_zero() and not rowk[j].is_zero():
                    val = val - aik * rowk[j]
                rowi[j] = val if prev == ONE or val.is_zero() else val.exact_div(prev)
            rowi[k] = ZERO
        prev = akk
    return a[n - 1][n], a[n - 1][n - 1]


def solve_accepting(matrix: TransferMatrix, initial: Hashable, finals,
                    order: Sequence | None = None) -> RatFun2:
    """Weight generating function of all paths from ``initial`` to a final
    state.  ``order`` optionally fixes the row order of the non-final
    states (the initial state's column is always eliminated last)."""
    nonfinal = [s for s in matrix.states if s not in finals]
    if initial in finals:
        raise ValueError("initial state is final")
    if order is not None:
        if sorted(map(repr, order)) != sorted(map(repr, nonfinal)):
            raise ValueError("order must be a permutation of the non-final states")
        rows = list(order)
    else:
        rows = nonfinal
    cols = [s for s in rows if s != initial] + [initial]
    col_index = {s: i for i, s in enumerate(cols)}
    n = len(cols)
    system = []
    for s in rows:
        coeffs = [RatFun2(0)] * n
        rhs = RatFun2(0)
        coeffs[col_index[s]] = RatFun2(1)
        for (src, v), e in matrix.entries.items():
            if src != s:
                continue
            if v in finals:
                rhs = rhs + e
            else:
                coeffs[col_index[v]] = coeffs[col_index[v]] - e
        row = coeffs + [rhs]
        d = _row_denominator(row)
        system.append([(r.num * d).exact_div(r.den) for r in row])
    num, det = bareiss_last(system)
    return tidy(RatFun2(num, det))


_SINK = ("sink",)


def language_gf(nfa) -> RatFun2:
    """Weight generating function of every word the automaton accepts,
    counting words that pass through final states as well.  Each final
    state gets a weight-1 arc into a fresh sink, which becomes the only
    final state."""
    if isinstance(nfa, FiniteNFA):
        matrix = finite_transfer_matrix(nfa)
    else:
        matrix = transfer_matrix(nfa)
    entries = dict(matrix.entries)
    for s in nfa.finals:
        entries[(s, _SINK)] = RatFun2(1)
    augmented = TransferMatrix(tuple(matrix.states) + (_SINK,), entries)
    return solve_accepting(augmented, nfa.initial, {_SINK})


def tidy(r: RatFun2) -> RatFun2:
    """Cosmetic reduction: strip common factors of 1 - x."""
    return r.cancel(ONE_MINUS_X)


def _as_subject(u) -> IntervalNFA:
    if isinstance(u, Pattern):
        return build_pattern_nfa(u, "S")
    return build_suffix_nfa(tuple(u))


def suffix_gf(u, order: Sequence | None = None) -> RatFun2:
    nfa = _as_subject(u)
    return solve_accepting(transfer_matrix(nfa), nfa.initial, nfa.finals, order)


def factor_from_suffix(s: RatFun2) -> RatFun2:
    return tidy(s * ALL_WORDS)


def avoid_from_factor(f: RatFun2) -> RatFun2:
    return tidy(ALL_WORDS - f)


def gen_function(u, stat: str = "S") -> RatFun2:
    """S, F or A of a composition or pattern.  F and A are derived from S."""
    if not isinstance(u, Pattern) and len(u) == 0:
        raise ValueError("generating functions are undefined for the empty word")
    s = suffix_gf(u)
    if stat == "S":
        return s
    f = factor_from_suffix(s)
    if stat == "F":
        return f
    if stat == "A":
        return avoid_from_factor(f)
    raise ValueError(f"unknown statistic {stat!r}")


def finite_length_gf(u: Sequence[str], poset: FinitePoset, stat: str = "S") -> RatFun2:
    """Length generating function in t for words over a finite poset."""
    nfa = build_finite_poset_nfa(u, poset, "S")
    s = solve_accepting(finite_transfer_matrix(nfa), nfa.initial, nfa.finals)
    if stat == "S":
        return s
    all_words = RatFun2(ONE, ONE - Poly2.monomial(1, 0, len(poset.elements)))
    f = s * all_words
    if stat == "F":
        return f
    if stat == "A":
        return all_words - f
    raise ValueError(f"unknown statistic {stat!r}")
