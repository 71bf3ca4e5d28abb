import pytest
from hypothesis import given
from hypothesis import strategies as st

from abcf.errors import DomainError
from abcf.moebius import IDENTITY, S, T, UnimodularMap, apply_word, moebius_apply, t_power, word_to_matrix
from abcf.surd import INF, Surd


def test_generator_examples():
    assert moebius_apply(S, Surd(2)) == Surd(-1, 0, 2)
    assert moebius_apply(t_power(3), INF) is INF
    assert moebius_apply(S, Surd(3, -1, 2, 5)) == Surd(-3, -1, 2, 5)
    assert moebius_apply(S, Surd(0)) is INF
    assert moebius_apply(S, INF) == 0


def test_word_examples():
    assert word_to_matrix([]) == IDENTITY
    assert word_to_matrix(["S", "S"]) == IDENTITY
    assert word_to_matrix(["T^2", "S"]) == UnimodularMap(2, -1, 1, 0)


def test_determinant_enforced():
    with pytest.raises(DomainError):
        UnimodularMap(1, 1, 1, 1)


letters = st.one_of(st.just("S"), st.integers(-6, 6).map(lambda k: f"T^{k}"))
words = st.lists(letters, max_size=20)
points = st.one_of(
    st.just(INF),
    st.builds(Surd, st.integers(-500, 500), st.integers(-20, 20), st.integers(1, 60), st.just(5)),
)


@given(words, words, points)
def test_action_is_a_homomorphism(w1, w2, x):
    m, n = word_to_matrix(w1), word_to_matrix(w2)
    assert moebius_apply(m @ n, x) == moebius_apply(m, moebius_apply(n, x))


@given(words, points)
def test_inverse_undoes_the_map(w, x):
    m = word_to_matrix(w)
    y = moebius_apply(m, x)
    assert moebius_apply(m.inverse(), y) == x
    assert y is INF or isinstance(y, Surd)
    if isinstance(y, Surd) and y.d:
        assert y.d == 5


@given(words)
def test_fixed_points_are_fixed(w):
    m = word_to_matrix(w)
    for xi in m.fixed_points():
        assert moebius_apply(m, xi) == xi


def test_apply_word_order():
    # [T, S] is T after S
    assert apply_word(["T", "S"], Surd(2)) == Surd(1, 0, 2)
    assert apply_word([T, S], Surd(2)) == Surd(1, 0, 2)
