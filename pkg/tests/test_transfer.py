import pytest
from hypothesis import given, strategies as st

from factororder.automaton import Pattern, build_nfa, build_suffix_nfa, set_to_mask
from factororder.core import FinitePoset
from factororder.oracle import brute_pattern_series, brute_series, enumerate_words
from factororder.polyrat import ONE, T, X, RatFun2, parse_expr, series_expand
from factororder.transfer import (ALL_WORDS, finite_length_gf, gen_function, language_gf,
                                  solve_accepting, suffix_gf, transfer_matrix)

subjects = st.lists(st.integers(1, 4), min_size=1, max_size=4).map(tuple)


def m(*ts):
    return set_to_mask(ts)


def test_transfer_matrix_132():
    M = transfer_matrix(build_suffix_nfa((1, 3, 2)))
    tail = lambda a: RatFun2(T * X ** a, ONE - X)
    assert M[(m(), m(1))] == tail(1)
    assert M[(m(1), m(1))] == RatFun2(T * (X + X ** 2))
    assert M[(m(1), m(1, 2))] == tail(3)
    assert M[(m(1, 2), m(1))] == RatFun2(T * X)
    assert M[(m(1, 2), m(1, 3))] == RatFun2(T * X ** 2)
    assert M[(m(1, 2), m(1, 2, 3))] == tail(3)
    for s in (m(1, 3), m(1, 2, 3)):
        assert all(M[(s, v)].is_zero() for v in M.states)


def test_transfer_matrix_1():
    M = transfer_matrix(build_suffix_nfa((1,)))
    dense = M.dense()
    assert dense[0][1] == RatFun2(T * X, ONE - X)
    assert sum(not e.is_zero() for row in dense for e in row) == 1


def test_known_functions():
    assert gen_function((1, 2, 3)) == parse_expr("t^3*x^6/((1-x)^2*(1-x-t*x+t*x^3-t^2*x^4))")
    assert gen_function((2, 1, 2)) == parse_expr(
        "t^3*x^5*(1+t*x^2)/((1-x)*(1-x+t^2*x^3)*(1-x-t*x+t*x^2-t^2*x^3))")
    assert gen_function((1,)) == parse_expr("t*x/(1-x)")


def test_row_order_does_not_matter():
    nfa = build_suffix_nfa((2, 1, 3))
    nonfinal = [s for s in nfa.states if s not in nfa.finals]
    assert suffix_gf((2, 1, 3), list(reversed(nonfinal))) == suffix_gf((2, 1, 3))


def test_empty_word_rejected():
    with pytest.raises(ValueError):
        gen_function(())


@given(subjects)
def test_series_matches_brute_force(u):
    for stat in "SFA":
        assert series_expand(gen_function(u, stat), 8) == brute_series(u, stat, 8)


@given(subjects)
def test_identities_from_direct_automata(u):
    s = gen_function(u, "S")
    f = language_gf(build_nfa(u, "F"))
    a = language_gf(build_nfa(u, "A"))
    assert f == s * ALL_WORDS
    assert a == ALL_WORDS - f
    assert language_gf(build_nfa(u, "S")) == s


def test_all_words_counts_compositions():
    table = series_expand(ALL_WORDS, 7)
    assert all(table.total(n) == 2 ** (n - 1) for n in range(1, 8))


def test_pattern_function_matches_brute_force():
    p = Pattern.parse("[2,1],2")
    for stat in "SFA":
        assert series_expand(gen_function(p, stat), 9) == brute_pattern_series(p, stat, 9)


def test_finite_poset_examples():
    anti = FinitePoset.antichain("ab")
    assert finite_length_gf(("a",), anti, "S") == RatFun2(T, ONE - T)
    single = FinitePoset.antichain("a")
    assert finite_length_gf(("a", "a"), single, "A") == RatFun2(ONE + T)


@pytest.mark.parametrize("covers", [[], [("a", "b")], [("a", "b"), ("b", "c")], [("a", "c"), ("b", "c")]])
def test_finite_poset_against_enumeration(covers):
    from itertools import product
    from factororder.core import embedding_indices
    poset = FinitePoset.from_covers("abc", covers)
    u = ("b", "a")
    for stat in "SFA":
        r = finite_length_gf(u, poset, stat)
        counts = [0] * 7
        for n in range(7):
            for w in product("abc", repeat=n):
                em = embedding_indices(u, w, poset.leq) if n else frozenset()
                ok = {"S": em == {n - 1}, "F": bool(em), "A": not em}[stat]
                counts[n] += ok
        # compare with t-expansion: den * counts == num up to degree 6
        num = r.num
        for n in range(7):
            lhs = sum(r.den.coeff(i, 0) * counts[n - i] for i in range(n + 1))
            assert lhs == num.coeff(n, 0)
