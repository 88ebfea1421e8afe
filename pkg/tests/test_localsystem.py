import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from alcovesys.arrangement import Alcove, build_arrangement
from alcovesys.braid import BraidWord, T
from alcovesys.errors import (IllTyped, InvalidParabolic, InvalidPath, NoValidParabolic,
                              NotALoop)
from alcovesys.functors import (Compose, FDCoh, Gamma, Identity, Inverse, Loc, Twist,
                                infer_type, simplify)
from alcovesys.localsystem import (LocalSystem, Path, PathToken, VerifyOptions,
                                   codim2_flats, parabolic_class, verify_local_system)
from alcovesys.rootdata import parse_type


def system(label, J=(), p=5):
    return LocalSystem(build_arrangement(parse_type(label), J, p))


A1 = system("A1")
A2 = system("A2")
LINE = system("A2", (1,))
A3 = system("A3", (1,))
k = lambda *xs: Alcove(tuple(xs))


def test_parabolic_classes():
    assert [P.name for P in A1.parabolics] == ["B", "B#1"]
    assert len(A2.parabolics) == 6       # Borels containing T
    assert [P.name for P in LINE.parabolics] == ["P{1}", "P{2}"]
    # the two parabolics with Levi GL2 x GL1 have opposite cones on the line
    assert [P.cone.generators for P in LINE.parabolics] == [((1,),), ((-1,),)]
    assert A2.P0.cone.generators == ((1, 0), (0, 1))
    assert len(A3.parabolics) == 6


def test_category_at():
    assert str(A1.category_at(k(0))) == "D^b(A_lambda-mod_0)[k=[0]]"
    assert A1.category_at(A1.P0).kind == "coh"
    with pytest.raises(InvalidParabolic):
        LINE.parabolic([3])
    with pytest.raises(InvalidParabolic):
        A1.category_at(LINE.P0)


def test_refine_crossing_examples():
    assert [P.name for P in A1.refine_crossing(k(0), k(1))] == ["B"]
    assert [P.name for P in A1.refine_crossing(k(1), k(0))] == ["B#1"]
    only_b = [P for P in A1.refine_crossing(k(1), k(0)) if P.name == "B"]
    assert only_b == []
    # every crossing on the restricted line is refined by exactly one parabolic
    for a in LINE.arr.alcoves_in_window(10):
        for _, b in LINE.arr.walls_and_neighbors(a):
            assert len(LINE.refine_crossing(a, b)) == 1


def test_functor_of_token_examples():
    steps = A1.trace(Path(k(0), (PathToken.to_point(A1.P0),)))
    expr = A1.functor_of_token(steps[0])
    lam = A1.weight(k(0))
    assert expr == Compose((FDCoh("B"), Twist((-lam[0],)), Loc("B", lam, (0,))))
    steps = A1.trace(Path(k(0), (PathToken.cross_pos(1),)))
    mu = A1.weight(k(1))
    assert A1.functor_of_token(steps[0]) == Compose(
        (Gamma("B", mu, (1,)), Twist((mu[0] - lam[0],)), Loc("B", lam, (0,))))


def test_no_valid_parabolic():
    # restrict the class to B: crossing k(1) -> k(0) has no valid parabolic
    ls = system("A1")
    ls.parabolics = ls.parabolics[:1]
    ls._order.clear()
    steps = ls.trace(Path(k(1), (PathToken.cross_pos(0),)))
    with pytest.raises(NoValidParabolic):
        ls.functor_of_token(steps[0])
    expr = ls.functor_of_token(steps[0], allow_kernel=True)
    src, tgt = infer_type(expr)
    assert src.alcove == (1,) and tgt.alcove == (0,)


def test_simplify_examples():
    e = A1.crossing_functor(k(0), k(1), A1.P0)
    assert simplify(Compose((e, Inverse(e)))) == Identity()
    a = (Fraction(3, 2),)
    assert simplify(Compose((Twist(a), Twist((-a[0],))))) == Identity()
    for a_, b_ in [(k(0), k(1)), (k(-1), k(0))]:
        if A1.order(A1.P0, a_, b_):
            assert simplify(A1.conjugated_crossing(a_, b_)) == Identity()


def test_ill_typed():
    bad = Compose((Loc("B", (1,), (0,)), Loc("B", (1,), (0,))))
    with pytest.raises(IllTyped):
        simplify(bad)
    with pytest.raises(IllTyped):
        infer_type(Compose((Gamma("B", (1,), (0,)), Loc("B", (2,), (0,)))))


def test_braid_word_examples():
    p1 = Path(k(0), (PathToken.cross_pos(1),))
    assert A1.braid_word_of_path(p1) == BraidWord((T(0),))
    back = Path(k(0), (PathToken.cross_pos(1), PathToken.cross_neg(0)))
    assert A1.braid_word_of_path(back).free_reduce() == BraidWord()
    loop = Path(k(0), (PathToken.cross_pos(1), PathToken.cross_pos(0)))
    assert A1.monodromy(loop) == (BraidWord((T(0), T(0))), True)
    assert A1.monodromy(Path(k(0))) == (BraidWord(), True)
    with pytest.raises(NotALoop):
        A1.monodromy(p1)


def test_refined_pair_compiles_like_crossing():
    for ls in (A1, A2, LINE):
        for a in ls.arr.alcoves_in_window(10):
            for idx, (_, b) in enumerate(ls.arr.walls_and_neighbors(a)):
                for P in ls.refine_crossing(a, b):
                    refined = Path(a, (PathToken.to_point(P), PathToken.from_point(P, b)))
                    assert ls.braid_word_of_path(refined) == ls.braid_word_of_path(
                        Path(a, (PathToken.cross_pos(idx),)))


def test_refinement_soundness():
    for ls in (A1, A2, LINE):
        for a in ls.arr.alcoves_in_window(10):
            for _, b in ls.arr.walls_and_neighbors(a):
                for P in ls.refine_crossing(a, b):
                    refined = Compose((ls.from_point_functor(P, b), ls.to_point_functor(a, P)))
                    assert simplify(refined) == simplify(ls.crossing_functor(a, b, P))


def test_p_independence_nonvacuous_a3():
    ls = A3
    seen = 0
    for a in ls.arr.alcoves_in_window(5):
        for _, b in ls.arr.walls_and_neighbors(a):
            valid = ls.refine_crossing(a, b)
            if len(valid) < 2:
                continue
            seen += 1
            forms = {ls.simplify(ls.crossing_functor(a, b, P)) for P in valid}
            assert len(forms) == 1
            words = {ls.segment_word(a, b, P) for P in valid}
            assert words == {ls.lift(a, b)}
    assert seen > 0


def test_path_json_and_errors():
    data = {"base": {"k": [0, 0]}, "tokens": [{"crossPos": {"wall": 0}}, {"toPoint": {"P": [1]}}]}
    path = LINE.path_from_json(data)
    assert path.to_json() == data
    with pytest.raises(InvalidPath):
        LINE.path_from_json({"base": {"k": [0, 0]}, "tokens": [{"jump": {}}]})
    with pytest.raises(InvalidPath):
        LINE.trace(Path(k(0, 0), (PathToken.cross_pos(7),)))
    with pytest.raises(InvalidPath):
        LINE.trace(Path(k(0, 0), (PathToken.from_point(LINE.P0, k(0, 0)),)))
    with pytest.raises(InvalidPath):
        LINE.trace(Path(k(0, 0), (PathToken.to_point(LINE.P0), PathToken.cross_pos(0))))


def _random_path(ls, rng, n):
    cur, tokens = ls.arr.fundamental_alcove(), []
    base = cur
    for _ in range(n):
        nbrs = ls.arr.walls_and_neighbors(cur)
        idx = rng.randrange(len(nbrs))
        nxt = nbrs[idx][1]
        r = rng.random()
        if r < 0.2:
            P = rng.choice(ls.parabolics)
            tokens += [PathToken.to_point(P), PathToken.from_point(P, nxt)]
        else:
            tokens.append(PathToken("crossPos" if r < 0.6 else "crossNeg", wall=idx))
        cur = nxt
    return Path(base, tuple(tokens))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "LINE"]), st.integers(0, 10**6), st.integers(0, 5), st.integers(0, 5))
def test_functoriality_and_reversal(which, seed, n1, n2):
    ls = A2 if which == "A2" else LINE
    rng = random.Random(seed)
    p1 = _random_path(ls, rng, n1)
    end = ls.endpoint(p1)
    p2 = _random_path(ls, rng, n2)
    p2 = Path(end, ()) if n2 == 0 else p2
    if p2.base != end:
        p2 = Path(end, ())
    whole = ls.concat(p1, p2)
    assert ls.braid_word_of_path(whole) == ls.braid_word_of_path(p1) * ls.braid_word_of_path(p2)
    assert ls.braid_word_of_path(ls.reverse(p1)) == ls.braid_word_of_path(p1).inverse()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A2", "LINE", "A3"]), st.integers(0, 10**6))
def test_random_loops_are_pure(which, seed):
    ls = {"A2": A2, "LINE": LINE, "A3": A3}[which]
    loop = ls.random_loop(random.Random(seed), 8)
    assert len(loop) <= 8
    word, pure = ls.monodromy(loop)
    assert pure


def test_codim2_flats_a2():
    flats = codim2_flats(A2.arr, 10)
    assert flats
    assert {len(c) for _, c in flats} == {6}
    assert codim2_flats(A1.arr, 10) == []


def test_verify_a1_has_no_relation_checks():
    rep = verify_local_system(A1.arr)
    assert rep.count("salvetti") == 0 and rep.ok


def test_verify_restricted_a3():
    rep = verify_local_system(A3.arr, VerifyOptions(window=3, loops=5))
    assert rep.ok
    assert rep.count("salvetti") > 0 and rep.count("independence") > 0
