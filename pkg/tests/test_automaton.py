import pytest
from hypothesis import given, strategies as st

from factororder.automaton import (FULL, IntervalLabel, Pattern, build_finite_poset_nfa,
                                   build_nfa, build_pattern_nfa, build_suffix_nfa,
                                   paste_pattern_nfa, set_to_mask, simulate)
from factororder.core import FinitePoset, embedding_indices
from factororder.oracle import in_language, in_pattern_language

words = st.lists(st.integers(1, 5), max_size=8).map(tuple)
subjects = st.lists(st.integers(1, 4), min_size=1, max_size=4).map(tuple)


def m(*ts):
    return set_to_mask(ts)


def lab(*singles, tail=None):
    return IntervalLabel(frozenset(singles), tail)


def test_suffix_automaton_132():
    nfa = build_suffix_nfa((1, 3, 2))
    assert set(nfa.states) == {m(), m(1), m(1, 2), m(1, 3), m(1, 2, 3)}
    assert nfa.arcs == {
        (m(), m(1)): FULL,
        (m(1), m(1)): lab(1, 2),
        (m(1), m(1, 2)): lab(tail=3),
        (m(1, 2), m(1)): lab(1),
        (m(1, 2), m(1, 3)): lab(2),
        (m(1, 2), m(1, 2, 3)): lab(tail=3),
    }
    assert nfa.finals == {m(1, 3), m(1, 2, 3)}


def test_suffix_automaton_small():
    one = build_suffix_nfa((1,))
    assert set(one.states) == {m(), m(1)} and one.finals == {m(1)}
    assert one.arcs == {(m(), m(1)): FULL}
    two = build_suffix_nfa((2, 2))
    assert two.arcs == {
        (m(), m()): lab(1),
        (m(), m(1)): lab(tail=2),
        (m(1), m()): lab(1),
        (m(1), m(1, 2)): lab(tail=2),
    }


def test_simulate_examples():
    nfa = build_suffix_nfa((1, 3, 2))
    assert simulate(nfa, (1, 3, 2))[0]
    assert not simulate(nfa, (1, 3, 2, 1))[0]
    for stat in "SFA":
        a = build_nfa((1, 3, 2), stat)
        assert simulate(a, ())[0] == (a.initial in a.finals)


@given(subjects, words)
def test_acceptance_matches_definition(u, w):
    for stat in "SFA":
        assert simulate(build_nfa(u, stat), w)[0] == in_language(u, w, stat)


@given(subjects, words)
def test_state_meaning(u, w):
    # after reading a prefix, the state is the set of t such that u_1..u_t
    # is dominated by the last t letters read (only tracked until u embeds)
    ok, trace = simulate(build_suffix_nfa(u), w)
    for n, state in enumerate(trace):
        prefix = w[:n]
        expected = {t for t in range(1, len(u) + 1)
                    if t <= n and all(u[i] <= prefix[n - t + i] for i in range(t))}
        assert state == set_to_mask(expected)


@given(subjects)
def test_labels_partition_letters(u):
    nfa = build_suffix_nfa(u)
    for s in nfa.states:
        out = nfa.out_arcs(s)
        if s in nfa.finals:
            assert out == []
            continue
        for a in range(1, max(u) + 3):
            assert sum(a in label for _, label in out) == 1


def test_factor_and_avoid_automata():
    f = build_nfa((2, 1), "F")
    for s in f.finals:
        assert (s, s) in f.arcs and f.arcs[(s, s)] == FULL
    a = build_nfa((2, 1), "A")
    assert a.finals == frozenset(a.states) - f.finals


def test_pattern_parse_and_str():
    p = Pattern.parse("1,[1,3,3],2,4,[6,1]")
    assert p.blocks == ((1,), (1, 3, 3), (2,), (4,), (6, 1))
    assert str(p) == "1,[1,3,3],2,4,[6,1]"
    for bad in ("[1,2", "[]", "1,x", ""):
        with pytest.raises(ValueError):
            Pattern.parse(bad)


def test_pattern_detection_example():
    nfa = build_pattern_nfa(Pattern.parse("[3,2],4"), "F")
    assert simulate(nfa, (1, 4, 2, 3, 5))[0]
    assert not simulate(nfa, (4, 2, 3, 1))[0]


def test_pasted_automaton_has_epsilon_arcs():
    pasted = paste_pattern_nfa(Pattern.parse("[2,1],3"))
    assert pasted.epsilon
    assert not build_pattern_nfa(Pattern.parse("[2,1],3")).epsilon


@given(subjects, words)
def test_single_block_pattern_is_suffix_language(u, w):
    p = Pattern((u,))
    assert simulate(build_pattern_nfa(p), w)[0] == simulate(build_suffix_nfa(u), w)[0]


@given(st.lists(subjects, min_size=1, max_size=3), words)
def test_pattern_automaton_matches_search(blocks, w):
    blocks = [b[:2] for b in blocks]
    p = Pattern(tuple(blocks))
    for stat in "SFA":
        assert simulate(build_pattern_nfa(p, stat), w)[0] == in_pattern_language(blocks, w, stat)


def test_finite_poset_automaton():
    poset = FinitePoset.from_covers("abc", [("a", "b")])
    u = ("a", "c")
    nfa = build_finite_poset_nfa(u, poset, "S")
    for w in [("b", "c"), ("a", "c", "c"), ("c", "a", "c"), ("b", "b", "c")]:
        em = embedding_indices(u, w, poset.leq)
        expected = em == {len(w) - 1}
        assert simulate(nfa, w)[0] == expected
