import pytest
from hypothesis import given, strategies as st

from factororder.moebius import (dominant_inner, dominant_outer, failure_function, interval,
                                 is_factor, is_flat, mobius, mobius_oracle,
                                 non_regularity_witness, parse_alpha_word)

ab_words = st.text("ab", max_size=7)
abc_words = st.text("abc", max_size=6)


def test_dominant_factors():
    assert "".join(dominant_outer("abbaabb")) == "abb"
    assert "".join(dominant_inner("abbaabb")) == "bbaab"
    assert dominant_outer("ab") == () and dominant_inner("ab") == ()
    with pytest.raises(ValueError):
        dominant_inner("a")


def test_failure_function():
    assert failure_function("abab") == [0, 0, 1, 2]
    assert failure_function("aaa") == [0, 1, 2]


def test_factor_and_flat():
    assert is_factor("ba", "abbaabb") and not is_factor("aaa", "abbaabb")
    assert is_factor("", "ab")
    assert is_flat("bbb") and is_flat("") and not is_flat("ab")


def test_known_values():
    assert mobius("b", "abbaabb") == 1
    assert mobius("ab", "ba") == 0
    assert mobius("a", "a") == 1 and mobius("a", "ab") == -1
    assert mobius("a", "aaa") == 0
    assert mobius("a", "aba") == 1


def test_witness_family():
    assert non_regularity_witness(3) == ("abbbabbba", 1)
    assert non_regularity_witness(3, 2)[1] == 0
    word, mu = non_regularity_witness(1)
    assert word == "ababa" and mu == mobius_oracle("a", word)
    with pytest.raises(ValueError):
        non_regularity_witness(0)


@given(abc_words, abc_words)
def test_matches_oracle(u, w):
    if is_factor(u, w):
        assert mobius(u, w) == mobius_oracle(u, w)
    else:
        assert mobius(u, w) == 0


@given(ab_words, ab_words)
def test_delta_property(u, w):
    if not is_factor(u, w):
        return
    total = sum(mobius(u, z) for z in interval(u, w))
    assert total == (1 if u == w else 0)


def test_values_are_small():
    words = ["".join(p) for n in range(7) for p in __import__("itertools").product("ab", repeat=n)]
    for w in words:
        for u in words:
            if len(u) <= len(w):
                assert mobius(u, w) in (-1, 0, 1)


def test_parse_alpha_word():
    assert parse_alpha_word("abba", "ab") == ("a", "b", "b", "a")
    assert parse_alpha_word("e", "ab") == ()
    with pytest.raises(ValueError):
        parse_alpha_word("abc", "ab")
