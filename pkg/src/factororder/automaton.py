"""Subset automata for generalized factor order.

For a composition ``u`` of length l, a state is a subset T of {1..l}
(bit t-1 set for t in T): the lengths t of prefixes of ``u`` that the
current suffix of the input dominates.  Over the positive integers the
alphabet is never enumerated.  Letters are grouped into threshold classes
and each arc carries an :class:`IntervalLabel`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Hashable, Iterable, Sequence

from .core import FinitePoset, format_word

State = Hashable


@dataclass(frozen=True)
class IntervalLabel:
    """A finite set of letters plus an optional tail ``[tail, oo)``."""

    singles: frozenset[int] = frozenset()
    tail: int | None = None

    def __post_init__(self):
        if self.tail is not None and any(a >= self.tail for a in self.singles):
            raise ValueError("single letters must lie below the tail threshold")
        if not self.singles and self.tail is None:
            raise ValueError("empty arc label")

    def __contains__(self, a: int) -> bool:
        return a in self.singles or (self.tail is not None and a >= self.tail)

    def union(self, other: "IntervalLabel") -> "IntervalLabel":
        singles = set(self.singles) | set(other.singles)
        tails = [x for x in (self.tail, other.tail) if x is not None]
        tail = min(tails) if tails else None
        if tail is not None:
            singles = {a for a in singles if a < tail}
            while tail - 1 in singles:
                singles.discard(tail - 1)
                tail -= 1
        return IntervalLabel(frozenset(singles), tail)

    def to_json(self) -> dict:
        return {"singles": sorted(self.singles), "tail": self.tail}

    def __str__(self) -> str:
        parts = [str(a) for a in sorted(self.singles)]
        if self.tail is not None:
            parts.append(f"[{self.tail},oo)")
        return "{" + ",".join(parts) + "}"


FULL = IntervalLabel(frozenset(), 1)


@dataclass(frozen=True)
class Pattern:
    """A barred pattern: a sequence of overlined blocks."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("a pattern needs at least one block")
        for b in self.blocks:
            if not b:
                raise ValueError("pattern blocks must be nonempty")
            if any(p < 1 for p in b):
                raise ValueError("pattern letters must be positive integers")

    @classmethod
    def parse(cls, spec: str) -> "Pattern":
        """Parse ``"1,[1,3,3],2,4,[6,1]"``: bracketed groups are overlined
        blocks, bare items single-letter blocks."""
        blocks: list[tuple[int, ...]] = []
        s = spec.replace(" ", "")
        i = 0
        while i < len(s):
            if s[i] == ",":
                i += 1
                continue
            if s[i] == "[":
                j = s.find("]", i)
                if j < 0:
                    raise ValueError(f"unclosed '[' in pattern {spec!r}")
                inner = s[i + 1:j]
                if not inner:
                    raise ValueError(f"empty block in pattern {spec!r}")
                try:
                    blocks.append(tuple(int(v) for v in inner.split(",")))
                except ValueError:
                    raise ValueError(f"malformed block [{inner}] in pattern {spec!r}") from None
                i = j + 1
            else:
                j = i
                while j < len(s) and s[j] not in ",[":
                    j += 1
                try:
                    blocks.append((int(s[i:j]),))
                except ValueError:
                    raise ValueError(f"malformed item {s[i:j]!r} in pattern {spec!r}") from None
                i = j
        return cls(tuple(blocks))

    def __str__(self) -> str:
        return ",".join(str(b[0]) if len(b) == 1 else "[" + ",".join(map(str, b)) + "]"
                        for b in self.blocks)


@dataclass(frozen=True)
class IntervalNFA:
    """Letter-deterministic automaton over the positive integers.

    ``kind`` records which language the automaton accepts: ``"S"``, ``"F"``
    or ``"A"``.
    """

    states: tuple[State, ...]
    initial: State
    finals: frozenset
    arcs: dict = field(hash=False)
    kind: str = "S"
    epsilon: frozenset = frozenset()
    subject: str = ""

    def out_arcs(self, state: State) -> list[tuple[State, IntervalLabel]]:
        return [(v, lab) for (s, v), lab in self.arcs.items() if s == state]

    def step(self, state: State, a: int) -> State | None:
        for (s, v), lab in self.arcs.items():
            if s == state and a in lab:
                return v
        return None

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "kind": self.kind,
            "initial": describe_state(self.initial),
            "states": [describe_state(s) for s in self.states],
            "finals": [describe_state(s) for s in self.states if s in self.finals],
            "arcs": [
                {"from": describe_state(s), "to": describe_state(v), **lab.to_json()}
                for (s, v), lab in sorted(self.arcs.items(), key=lambda kv: (
                    self.states.index(kv[0][0]), self.states.index(kv[0][1])))
            ],
        }


def mask_to_set(mask: int) -> list[int]:
    out = []
    t = 1
    while mask:
        if mask & 1:
            out.append(t)
        mask >>= 1
        t += 1
    return out


def set_to_mask(ts: Iterable[int]) -> int:
    m = 0
    for t in ts:
        m |= 1 << (t - 1)
    return m


def describe_state(state: State):
    if isinstance(state, tuple):
        block, mask = state
        return {"block": block + 1, "positions": mask_to_set(mask)}
    return mask_to_set(state)


def _successor(u: Sequence[int], sources: list[int], a: int) -> int:
    U = 0
    for t in sources:
        if u[t] <= a:
            U |= 1 << t
    return U


def _arcs_from(u: Sequence[int], T: int) -> dict[int, IntervalLabel]:
    """Arcs out of non-final state T, one per distinct successor."""
    sources = [0] + [t for t in mask_to_set(T) if t < len(u)]
    thresholds = sorted({u[t] for t in sources})
    groups: dict[int, set[int]] = {}
    lo = 1
    for th in thresholds:
        if lo < th:
            groups.setdefault(_successor(u, sources, lo), set()).update(range(lo, th))
        lo = th
    # every letter >= the largest threshold satisfies all sources
    top = thresholds[-1]
    out = {U: IntervalLabel(frozenset(letters)) for U, letters in groups.items()}
    out[_successor(u, sources, top)] = IntervalLabel(frozenset(), top)
    return out


def build_suffix_nfa(u: Sequence[int]) -> IntervalNFA:
    """Automaton accepting the words whose only embedding of ``u`` is a
    suffix.  Only states reachable from the empty set are kept."""
    u = tuple(u)
    if not u:
        raise ValueError("the suffix automaton is undefined for the empty word")
    if any(p < 1 for p in u):
        raise ValueError("u must be a composition")
    ell = len(u)
    final_bit = 1 << (ell - 1)
    order = [0]
    seen = {0}
    arcs: dict[tuple[int, int], IntervalLabel] = {}
    i = 0
    while i < len(order):
        T = order[i]
        i += 1
        if T & final_bit:
            continue
        for U, lab in _arcs_from(u, T).items():
            arcs[(T, U)] = lab
            if U not in seen:
                seen.add(U)
                order.append(U)
    finals = frozenset(s for s in order if s & final_bit)
    return IntervalNFA(tuple(order), 0, finals, arcs, "S", subject=format_word(u))


def derive_factor_nfa(nfa: IntervalNFA) -> IntervalNFA:
    """Add a loop on every final state so that anything may follow."""
    if nfa.kind != "S":
        raise ValueError(f"expected a suffix automaton, got kind {nfa.kind!r}")
    arcs = dict(nfa.arcs)
    for f in nfa.finals:
        arcs[(f, f)] = arcs[(f, f)].union(FULL) if (f, f) in arcs else FULL
    return replace(nfa, arcs=arcs, kind="F")


def derive_avoid_nfa(nfa: IntervalNFA) -> IntervalNFA:
    """Swap final and non-final states of the factor automaton."""
    if nfa.kind == "S":
        nfa = derive_factor_nfa(nfa)
    if nfa.kind != "F":
        raise ValueError(f"expected a factor automaton, got kind {nfa.kind!r}")
    finals = frozenset(s for s in nfa.states if s not in nfa.finals)
    return replace(nfa, finals=finals, kind="A")


def build_nfa(u: Sequence[int], stat: str = "S") -> IntervalNFA:
    nfa = build_suffix_nfa(u)
    if stat == "S":
        return nfa
    if stat == "F":
        return derive_factor_nfa(nfa)
    if stat == "A":
        return derive_avoid_nfa(nfa)
    raise ValueError(f"unknown statistic {stat!r}")


def paste_pattern_nfa(p: Pattern) -> IntervalNFA:
    """The epsilon automaton: one suffix automaton per block, with an
    epsilon arc from each final state of block i to the start of block
    i + 1.  States are ``(block, mask)`` pairs."""
    states: list[State] = []
    arcs: dict = {}
    eps = set()
    k = len(p.blocks)
    last_finals: frozenset = frozenset()
    for b, y in enumerate(p.blocks):
        d = build_suffix_nfa(y)
        states.extend((b, s) for s in d.states)
        for (s, v), lab in d.arcs.items():
            arcs[((b, s), (b, v))] = lab
        if b + 1 < k:
            eps.update(((b, f), (b + 1, 0)) for f in d.finals)
        else:
            last_finals = frozenset((b, f) for f in d.finals)
    return IntervalNFA(tuple(states), (0, 0), last_finals, arcs, "S",
                       epsilon=frozenset(eps), subject=str(p))


def eliminate_epsilon(nfa: IntervalNFA) -> IntervalNFA:
    """Standard closure: every state inherits the arcs and finality of the
    states it reaches through epsilon arcs; unreachable states are then
    dropped."""
    eps_out: dict = {}
    for s, v in nfa.epsilon:
        eps_out.setdefault(s, set()).add(v)

    def closure(s):
        seen = {s}
        stack = [s]
        while stack:
            q = stack.pop()
            for v in eps_out.get(q, ()):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    arcs: dict = {}
    finals = set()
    for s in nfa.states:
        cl = closure(s)
        if cl & nfa.finals:
            finals.add(s)
        for q in cl:
            for (src, v), lab in nfa.arcs.items():
                if src == q:
                    arcs[(s, v)] = arcs[(s, v)].union(lab) if (s, v) in arcs else lab
    # reachability from the initial state over labelled arcs
    succ: dict = {}
    for (s, v) in arcs:
        succ.setdefault(s, []).append(v)
    order = [nfa.initial]
    seen = {nfa.initial}
    i = 0
    while i < len(order):
        for v in succ.get(order[i], ()):
            if v not in seen:
                seen.add(v)
                order.append(v)
        i += 1
    arcs = {k: lab for k, lab in arcs.items() if k[0] in seen}
    return IntervalNFA(tuple(order), nfa.initial, frozenset(finals & seen), arcs,
                       nfa.kind, subject=nfa.subject)


def build_pattern_nfa(p: Pattern, stat: str = "S") -> IntervalNFA:
    nfa = eliminate_epsilon(paste_pattern_nfa(p))
    if stat == "S":
        return nfa
    if stat == "F":
        return derive_factor_nfa(nfa)
    if stat == "A":
        return derive_avoid_nfa(nfa)
    raise ValueError(f"unknown statistic {stat!r}")


def simulate(nfa, w: Sequence) -> tuple[bool, list]:
    """Run the (letter-deterministic) automaton on ``w``.

    Returns acceptance and the list of states visited, starting with the
    initial state.  A word that falls off the automaton is rejected and
    the trace stops at the last state reached.
    """
    state = nfa.initial
    trace = [state]
    for a in w:
        state = nfa.step(state, a)
        if state is None:
            return False, trace
        trace.append(state)
    return state in nfa.finals, trace


# -- finite posets ----------------------------------------------------------

@dataclass(frozen=True)
class FiniteNFA:
    """Subset automaton over a finite poset with one arc per letter."""

    poset: FinitePoset
    states: tuple[int, ...]
    initial: int
    finals: frozenset
    delta: dict = field(hash=False)
    kind: str = "S"

    def step(self, state: int, a: str) -> int | None:
        return self.delta.get((state, a))


def build_finite_poset_nfa(u: Sequence[str], poset: FinitePoset,
                           stat: str = "S") -> FiniteNFA:
    u = tuple(u)
    if not u:
        raise ValueError("the suffix automaton is undefined for the empty word")
    for a in u:
        poset.index(a)
    if stat not in ("S", "F", "A"):
        raise ValueError(f"unknown statistic {stat!r}")
    ell = len(u)
    final_bit = 1 << (ell - 1)
    order = [0]
    seen = {0}
    delta: dict[tuple[int, str], int] = {}
    i = 0
    while i < len(order):
        T = order[i]
        i += 1
        if T & final_bit:
            continue
        sources = [0] + [t for t in mask_to_set(T) if t < ell]
        for a in poset.elements:
            U = 0
            for t in sources:
                if poset.leq(u[t], a):
                    U |= 1 << t
            delta[(T, a)] = U
            if U not in seen:
                seen.add(U)
                order.append(U)
    finals = frozenset(s for s in order if s & final_bit)
    if stat in ("F", "A"):
        for f in finals:
            for a in poset.elements:
                delta[(f, a)] = f
    if stat == "A":
        finals = frozenset(s for s in order if s not in finals)
    return FiniteNFA(poset, tuple(order), 0, finals, delta, stat)
