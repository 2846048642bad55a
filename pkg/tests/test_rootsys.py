from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2micro.rootsys import (
    CARTAN, WeylWord, coroot_of, format_word, g2, g2_weyl, pairing, parse_word, reflect,
    smith_normal_form, solve_integer_system, torus_component_group, weyl_apply,
)

W = g2_weyl()
words = st.lists(st.sampled_from([1, 2]), max_size=14).map(tuple)
vecs = st.tuples(st.integers(-20, 20), st.integers(-20, 20))


def test_cartan_and_rho():
    assert CARTAN == ((2, -1), (-3, 2))
    assert g2().rho == (3, 5)
    assert len(g2().roots) == 12


def test_simple_reflection_of_long_root():
    s2 = coroot_of((0, 1))
    assert reflect((0, 1), s2, (1, 0)) == (1, 3)


def test_group_order_and_longest():
    assert W.order == 12
    assert W.longest() == parse_word("s2s1s2s1s2s1")
    assert W.coxeter_order(1, 2) == 6


def test_word_round_trip():
    assert format_word(parse_word("s1s2s1")) == "s1s2s1"
    assert format_word(()) == "e"
    assert str(WeylWord.parse("s1s1s2").canonical_form) == "s2"
    with pytest.raises(ValueError):
        parse_word("s1t2")


@given(words)
def test_canonical_is_idempotent_and_preserves_action(w):
    c = W.canonical(w)
    assert W.canonical(c) == c
    assert W.matrix(c) == W.matrix(w)
    assert len(c) <= 6


@given(words, words)
def test_multiplication_is_matrix_product(u, v):
    assert W.matrix(W.multiply(u, v)) == W.matrix(u + v)


@given(words)
def test_inverse(w):
    assert W.canonical(W.multiply(w, W.inverse(w))) == ()


@given(words, vecs)
def test_action_preserves_pairing_with_roots(w, v):
    # W permutes the roots
    for r in g2().roots:
        assert tuple(W.apply(w, r)) in g2().roots
    assert weyl_apply(w, weyl_apply(W.inverse(w), v)) == tuple(Fraction(x) for x in v)


def test_pairing_with_simple_coroots():
    assert pairing((1, 0), (1, 0)) == 2
    assert pairing((0, 1), (1, 0)) == -3


def test_smith_and_integer_solve():
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    assert solve_integer_system([[2, 0]], [3]) is None
    assert solve_integer_system([[2, 0]], [4]) is not None


def test_component_groups():
    assert torus_component_group(()) == []  # w - 1 = 0, cokernel is free
    assert torus_component_group(W.longest()) == [2, 2]
