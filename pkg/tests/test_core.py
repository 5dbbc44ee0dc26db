import pytest
from hypothesis import given, strategies as st

from factororder.core import (FinitePoset, IotaMap, apply_iota, collapse, composition,
                              embedding_indices, embeds, format_word, k_factorize,
                              parse_word, prepend_one, reverse, shift_down, shift_up,
                              unfactorize, weight)

words = st.lists(st.integers(1, 5), max_size=9).map(tuple)
nonempty = st.lists(st.integers(1, 5), min_size=1, max_size=4).map(tuple)


def test_weight():
    assert weight(parse_word("213221")) == (6, 11)
    assert weight(()) == (0, 0)
    assert weight((3, 2, 2)) == (3, 7)


def test_parse_and_format():
    assert parse_word("10,2,3") == (10, 2, 3)
    assert parse_word("e") == ()
    assert format_word((10, 2, 3)) == "10,2,3"
    assert format_word((2, 1, 4)) == "214"
    with pytest.raises(ValueError):
        parse_word("1320")
    with pytest.raises(ValueError):
        composition([1, -2])


def test_embedding_indices_examples():
    assert embedding_indices((3, 2, 2), parse_word("12213431")) == {5}
    assert embedding_indices((2, 1, 4, 3), parse_word("2143443")) == {1, 3, 4}
    assert embedding_indices((5,), (1, 2, 3, 4)) == frozenset()
    with pytest.raises(ValueError):
        embedding_indices((), (1, 2))


def test_embeds_with_custom_order():
    divides = lambda a, b: b % a == 0
    assert embeds((2, 3), (4, 9), divides)
    assert not embeds((2, 3), (3, 4), divides)


@given(nonempty, words)
def test_em_mirror(u, w):
    em = embedding_indices(u, w)
    mirrored = embedding_indices(reverse(u), reverse(w))
    assert mirrored == {len(w) - len(u) + 2 - j for j in em}


@given(nonempty, words)
def test_em_matches_definition(u, w):
    em = embedding_indices(u, w)
    for j in range(1, len(w) + 1):
        fits = j + len(u) - 1 <= len(w) and all(u[i] <= w[j + i - 1] for i in range(len(u)))
        assert (j in em) == fits


def test_k_factorize_examples():
    assert k_factorize((1, 3, 5, 1), 3) == [(1,), (3, 5), (1,)]
    assert k_factorize((2, 2), 3) == [(2, 2)]
    assert k_factorize((4, 4), 3) == [(), (4, 4), ()]


@given(words, st.integers(1, 6))
def test_k_factorize_structure(w, k):
    blocks = k_factorize(w, k)
    assert unfactorize(blocks) == w
    assert len(blocks) % 2 == 1
    for idx, b in enumerate(blocks):
        if idx % 2 == 0:
            assert all(p < k for p in b)
            if 0 < idx < len(blocks) - 1:
                assert b
        else:
            assert b and all(p >= k for p in b)


def test_transforms():
    assert reverse((1, 2, 3)) == (3, 2, 1)
    assert shift_up((1, 3, 2)) == (2, 4, 3)
    assert prepend_one((2, 3)) == (1, 2, 3)
    with pytest.raises(ValueError):
        shift_down((1, 2))


@given(words)
def test_shift_roundtrip(w):
    assert shift_down(shift_up(w, 2), 2) == w


FIB = IotaMap([3, 5, 8, 13, 21])


def test_collapse_example():
    assert collapse(parse_word("356749438"), FIB) == parse_word("122213113")


def test_iota_validation():
    with pytest.raises(ValueError):
        IotaMap([2, 2])
    with pytest.raises(ValueError):
        FIB(6)
    with pytest.raises(ValueError):
        FIB.collapse_letter(2)
    with pytest.raises(ValueError):
        FIB.collapse_letter(21)


@given(st.integers(3, 20), st.integers(1, 4))
def test_iota_galois(a, p):
    # collapse(a) >= p exactly when a >= iota(p)
    assert (FIB.collapse_letter(a) >= p) == (a >= FIB(p))


@given(st.lists(st.integers(1, 4), max_size=8))
def test_collapse_inverts_iota(w):
    assert collapse(apply_iota(w, FIB), FIB) == tuple(w)


def test_posets():
    anti = FinitePoset.from_covers("ab", [])
    assert not anti.leq("a", "b") and not anti.leq("b", "a")
    chain = FinitePoset.from_covers(["1", "2", "3"], [("1", "2"), ("2", "3")])
    assert chain.leq("1", "3")
    with pytest.raises(ValueError, match="cycle"):
        FinitePoset.from_covers("abc", [("a", "b"), ("b", "a")])
    with pytest.raises(ValueError, match="unknown"):
        FinitePoset.from_covers("ab", [("a", "z")])


def test_poset_json_roundtrip(tmp_path):
    p = FinitePoset.from_covers("abcd", [("a", "b"), ("b", "c"), ("a", "d")])
    assert FinitePoset.from_json(p.to_json()) == p
    path = tmp_path / "p.json"
    path.write_text('{"elements": ["x", "y"], "covers": [["x", "y"]]}')
    assert FinitePoset.from_json(str(path)).leq("x", "y")
    assert p.parse_word("abd") == ("a", "b", "d")
    with pytest.raises(ValueError):
        p.parse_word("abz")
