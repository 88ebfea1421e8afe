import pytest
from hypothesis import given, settings, strategies as st

from alcovesys.braid import (AffineBraidGroup, BraidWord, EqualityVerdict, Letter, T,
                             Tinv, free_reduce, inverse, multiply, theta)
from alcovesys.errors import NotApplicable
from alcovesys.rootdata import parse_type, weyl_group

A1 = AffineBraidGroup(parse_type("A1"), 5)
A2 = AffineBraidGroup(parse_type("A2"), 5)

letters = st.one_of(
    st.builds(T, st.integers(0, 2)),
    st.builds(Tinv, st.integers(0, 2)),
    st.builds(lambda a, b: theta((a, b)), st.integers(-2, 2), st.integers(-2, 2)),
)
words = st.lists(letters, max_size=7).map(lambda ls: BraidWord(tuple(ls)))


def test_word_ops_examples():
    assert free_reduce(multiply(BraidWord((T(1),)), BraidWord((Tinv(1),)))) == BraidWord()
    assert free_reduce(BraidWord((theta((1, 0)), theta((0, 2))))) == BraidWord((theta((1, 2)),))
    assert inverse(BraidWord((T(1), theta((1, 0))))) == BraidWord((theta((-1, 0)), Tinv(1)))


def test_json_roundtrip():
    w = BraidWord((T(0), Tinv(2), theta((1, -1))))
    assert w.to_json() == [{"T": "s0"}, {"Tinv": "s2"}, {"theta": [1, -1]}]
    assert BraidWord.from_json(w.to_json()) == w
    assert Letter.from_json({"T": "s1"}) == T(1)


def test_verdict_requires_certificate():
    with pytest.raises(ValueError):
        EqualityVerdict("Equal")
    EqualityVerdict("Unknown")


def test_word_equal_examples():
    v = A2.word_equal(BraidWord.positive((1, 2, 1)), BraidWord.positive((2, 1, 2)))
    assert v.kind == "Equal" and v.certificate["method"] == "braid-moves"
    assert A2.word_equal(BraidWord((T(1),)), BraidWord((Tinv(1),))).kind == "Distinct"
    assert A2.word_equal(BraidWord(), BraidWord()).kind == "Equal"
    # same projection, different positive words
    v = A2.word_equal(BraidWord.positive((1, 1)), BraidWord.positive((2, 2)))
    assert v.kind == "Distinct"
    v = A2.word_equal(BraidWord.positive((0, 1, 2, 0)), BraidWord.positive((0, 2, 1, 0)))
    assert v.kind == "Distinct"


def test_projection_and_lifts():
    W = A1.W
    s0 = W.simple_reflections[0]
    assert A1.canonical_lift(W.identity()) == BraidWord()
    assert A1.canonical_lift(s0) == BraidWord((T(0),))
    trans = W.element_of_word((0, 1))
    assert trans.translation == (10,) and trans.linear == ((1,),)
    assert A1.canonical_lift(trans) == BraidWord((T(0), T(1)))
    assert A1.project(BraidWord((theta((2,)),))) == trans
    assert A1.dot_action(trans, (3,)) == (13,)


def test_bernstein_examples():
    assert A2.bernstein_check(1, (0, 1)).holds
    assert A1.bernstein_check(1, (1,)).holds
    assert A1.bernstein_check(1, (1,)).relation == "theta[1] = T1 theta[-1] T1"
    with pytest.raises(NotApplicable):
        A1.bernstein_check(1, (2,))


def test_canonical_section_a2():
    W = weyl_group(parse_type("A2"))
    aff = A2.W
    for w1 in W:
        for w2 in W:
            g = aff.element_of_word(w1.word) * aff.element_of_word(w2.word)
            if aff.length(g) != w1.length + w2.length:
                continue
            lhs = BraidWord.positive(w1.word) * BraidWord.positive(w2.word)
            v = A2.word_equal(lhs, A2.canonical_lift(g))
            assert v.kind == "Equal"


def test_search_bound_falls_through():
    tight = AffineBraidGroup(parse_type("A2"), 5, search_bound=1)
    v = tight.word_equal(BraidWord.positive((1, 2, 1, 0)), BraidWord.positive((2, 1, 2, 0)))
    assert v.kind == "Unknown"
    assert "bound" in v.reason


@settings(max_examples=80, deadline=None)
@given(words, words)
def test_projection_is_homomorphism(w1, w2):
    assert A2.project(w1 * w2) == A2.project(w1) * A2.project(w2)
    assert A2.project(w1.inverse()) == A2.project(w1).inverse()


@settings(max_examples=80, deadline=None)
@given(words)
def test_inverse_cancels(w):
    assert (w * w.inverse()).free_reduce() == BraidWord()
    assert w.inverse().inverse() == w
    assert w.free_reduce().free_reduce() == w.free_reduce()
    assert A2.word_equal(w * w.inverse(), BraidWord()).kind == "Equal"


@settings(max_examples=40, deadline=None)
@given(words, words)
def test_word_equal_sound_on_projection(w1, w2):
    v = A2.word_equal(w1, w2, radius=1)
    if v.kind == "Equal":
        assert A2.project(w1) == A2.project(w2)
        assert A2.shadow.operators_agree(w1, w2, A2.test_set(1))
