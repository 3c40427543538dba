from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from descalg.perm_core import (
    BudgetExceeded,
    ColoredPermutation,
    GroupDescriptor,
    InvalidInput,
    Permutation,
    SignedPermutation,
    complement_reverse,
    compose,
    descent_set,
    enumerate_group,
    enumerate_words,
    format_element,
    identity,
    invert,
    parse_element,
    statistic,
    word_statistic,
)

from conftest import colored_permutations, descents, permutations, signed_permutations

S = GroupDescriptor.symmetric
B = GroupDescriptor.hyperoctahedral
G = GroupDescriptor.colored


def P(text: str) -> Permutation:
    return Permutation(tuple(int(c) for c in text))


def CP(r: int, text: str) -> ColoredPermutation:
    return parse_element(text, G(r, len(text.split())))


SIGNED = SignedPermutation((-5, 1, 4, -2, 3))


# --- compose / invert ------------------------------------------------------


def test_compose_colored_example():
    sigma = CP(4, "3^1 1^1 5^0 2^1 4^3")
    pi = CP(4, "2^0 1^3 3^1 5^2 4^2")
    assert format_element(compose(sigma, pi)) == "1^1 3^0 5^1 4^1 2^3"


def test_compose_plain_by_hand():
    assert compose(P("132"), P("213")) == P("312")


def test_compose_identity_left():
    h = SignedPermutation((2, -3, 1))
    assert compose(identity(B(3)), h) == h


def test_compose_rejects_mismatched_groups():
    with pytest.raises(InvalidInput):
        compose(P("12"), P("123"))
    with pytest.raises(InvalidInput):
        compose(CP(3, "1^1"), CP(4, "1^1"))


def test_invert_examples():
    assert invert(P("231")) == P("312")
    assert invert(identity(S(4))) == identity(S(4))
    assert invert(CP(3, "1^1")) == CP(3, "1^2")


@pytest.mark.parametrize("d", [S(3), S(4), B(2), B(3), G(3, 2), G(4, 2)],
                         ids=str)
def test_group_axioms_exhaustive(d):
    elems = list(enumerate_group(d))
    e = identity(d)
    for g in elems:
        gi = invert(g)
        assert compose(g, gi) == e == compose(gi, g)
    if len(elems) <= 48:
        for a, b, c in itertools.product(elems, repeat=3):
            assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(colored_permutations(max_n=5), st.data())
def test_group_axioms_sampled(g, data):
    d = G(g.r, g.n)
    h = data.draw(colored_permutations(r=g.r, min_n=g.n, max_n=g.n))
    k = data.draw(colored_permutations(r=g.r, min_n=g.n, max_n=g.n))
    assert compose(compose(g, h), k) == compose(g, compose(h, k))
    assert compose(g, invert(g)) == identity(d)


def test_signed_compose_is_function_composition():
    g = SignedPermutation((2, -3, 1))
    h = SignedPermutation((-1, 3, -2))
    gh = compose(g, h)
    for i in range(1, 4):
        assert gh(i) == g(h(i))


# --- descent sets and statistics ----------------------------------------------


def test_plain_example():
    pi = P("51423")
    assert descent_set(pi, "des") == [1, 3]
    assert (statistic(pi, "des"), statistic(pi, "maj"), statistic(pi, "comaj")) == (2, 4, 6)


def test_signed_example():
    assert descent_set(SIGNED, "desA") == [3]
    assert descent_set(SIGNED, "desB") == [0, 3]
    assert descent_set(SIGNED, "ades") == [0, 3, 5]
    got = {s: statistic(SIGNED, s) for s in ("desA", "desB", "ades", "maj", "amaj", "fdes")}
    assert got == {"desA": 1, "desB": 2, "ades": 3, "maj": 3, "amaj": 8, "fdes": 3}


def test_colored_example():
    pi = CP(4, "3^1 1^1 4^0 2^3")
    assert descent_set(pi, "des") == [1, 2, 4]
    assert descent_set(pi, "intdes") == [1, 2]
    assert statistic(pi, "des") == 3
    assert statistic(pi, "maj") == 7


def test_flag_major_definitions():
    assert statistic(SIGNED, "fmaj") == 2 * 3 + 2
    assert statistic(SIGNED, "famaj") == 2 * 8 + 2


def test_statistic_group_mismatch():
    with pytest.raises(InvalidInput):
        statistic(P("21"), "ades")
    with pytest.raises(InvalidInput):
        statistic(SIGNED, "cdes")
    with pytest.raises(InvalidInput):
        statistic(P("21"), "nonsense")


def test_cdes_small_n_is_zero():
    assert statistic(P("1"), "cdes") == 0
    assert statistic(Permutation(()), "cdes") == 0


def test_inverse_statistics():
    pi = P("51423")
    inv = invert(pi)
    assert statistic(pi, "ides") == statistic(inv, "des")
    assert statistic(pi, "imaj") == statistic(inv, "maj")


@given(permutations(max_n=7))
def test_plain_descents_match_reference(pi):
    assert descent_set(pi, "des") == descents(pi.word)
    n = pi.n
    assert statistic(pi, "maj") + statistic(pi, "comaj") == n * statistic(pi, "des")


@given(permutations(min_n=2, max_n=7))
def test_cdes_bounds(pi):
    assert 1 <= statistic(pi, "cdes") <= pi.n - 1


@given(signed_permutations())
def test_signed_descent_relations(g):
    da, db, ad = (statistic(g, s) for s in ("desA", "desB", "ades"))
    assert db - da in (0, 1)
    assert ad - db in (0, 1)
    assert statistic(g, "fdes") == da + db
    # reference: type B pads with 0 on the left, augmented also on the right
    assert descent_set(g, "desB") == [i - 1 for i in descents((0,) + g.word)]
    assert descent_set(g, "ades") == [i - 1 for i in descents((0,) + g.word + (0,))]


@given(colored_permutations())
def test_colored_des_vs_intdes(g):
    last_colored = g.n > 0 and g.word[-1][1] != 0
    assert statistic(g, "des") == statistic(g, "intdes") + int(last_colored)


# --- complement-reverse -------------------------------------------------------------


def test_complement_reverse_examples():
    pi = P("51423")
    sigma = complement_reverse(pi)
    # sigma(i) = 6 - pi(6 - i), position by position
    assert sigma == P("34251")
    assert statistic(sigma, "maj") == statistic(pi, "comaj") == 6
    assert complement_reverse(P("1234")) == P("1234")
    assert complement_reverse(complement_reverse(P("2314"))) == P("2314")


@pytest.mark.parametrize("n", range(0, 7))
def test_complement_reverse_swaps_exhaustively(n):
    for pi in enumerate_group(S(n)):
        s = complement_reverse(pi)
        assert complement_reverse(s) == pi
        assert statistic(s, "des") == statistic(pi, "des")
        assert statistic(s, "maj") == statistic(pi, "comaj")
        assert statistic(s, "ides") == statistic(pi, "ides")
        assert statistic(s, "icomaj") == statistic(pi, "imaj")


# --- enumeration --------------------------------------------------------------------


@pytest.mark.parametrize("d,size", [(S(3), 6), (B(2), 8), (G(5, 3), 750), (S(0), 1), (G(1, 3), 6)],
                         ids=str)
def test_enumeration_counts(d, size):
    elems = list(enumerate_group(d))
    assert len(elems) == len(set(elems)) == size == d.order


def test_enumeration_is_lexicographic():
    words = [g.word for g in enumerate_group(B(2))]
    assert words == sorted(words)
    codes = [g.codes for g in enumerate_group(G(3, 2))]
    assert codes == sorted(codes)


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_group(S(6), budget=100))


def test_words():
    assert sorted(enumerate_words("multiset", (2, 1))) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert (2, 4, 1, 1, 3, 4) in set(enumerate_words("multiset", (2, 1, 1, 2)))
    assert len(list(enumerate_words("coloredMultiset", (1, 1), r=2))) == 8


@given(st.lists(st.integers(0, 2), min_size=1, max_size=3), st.integers(1, 3))
def test_word_counts(alpha, r):
    n = sum(alpha)
    base = math.factorial(n) // math.prod(math.factorial(a) for a in alpha)
    assert len(set(enumerate_words("multiset", alpha))) == base
    assert len(set(enumerate_words("signedMultiset", alpha))) == base * 2**n
    assert len(set(enumerate_words("coloredMultiset", alpha, r=r))) == base * r**n


def test_equal_letters_are_not_descents():
    assert word_statistic((2, 2, 1), "des") == 1
    assert word_statistic((1, 1, 1), "maj") == 0
    assert word_statistic(((1, 1), (1, 1)), "desColored") == 1  # the right pad 0_1


@given(permutations(max_n=6))
def test_word_statistics_agree_with_group(pi):
    for s in ("des", "maj", "comaj"):
        assert word_statistic(pi.word, s) == statistic(pi, s)


# --- text encodings ---------------------------------------------------------------------


def test_parse_round_trip():
    for d, text in [(S(5), "51423"), (B(5), "-5,1,4,-2,3"), (G(4, 4), "3^1 1^1 4^0 2^3")]:
        assert format_element(parse_element(text, d)) == text
    with pytest.raises(InvalidInput):
        parse_element("1123", S(4))
    with pytest.raises(InvalidInput):
        parse_element("1^4", G(4, 1))
    with pytest.raises(InvalidInput):
        parse_element("123", S(4))


def test_descriptor_parse():
    assert GroupDescriptor.parse("colored:3,2") == G(3, 2)
    assert GroupDescriptor.parse("S:4") == S(4)
    assert GroupDescriptor.parse("hyperoctahedral:3") == B(3)
