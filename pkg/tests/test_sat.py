import pytest
from hypothesis import given, strategies as st

import oracle
from strategies import groups, models, sentences, this_formulas
from countersign.corpus import load_model
from countersign.kripke import Model, UngroundedSelfReference, UnknownWorld
from countersign.sat import (
    EvalDepthError, Evaluator, OpenTermError, eval_mutual, eval_says_k, evaluate, reach_plus,
    trace, tree_height,
)
from countersign.syntax import (
    And, Atom, Entails, Imp, Mutual, Not, Says, SaysK, Signs, This, Var, group_says, unfold,
)

P = Atom("p")
C = This("x", Imp(And(Signs("A", Var("x")), Signs("B", Var("x"))), P))
OFFER_A = Signs("A", Imp(Says("B", P), P))
OFFER_B = Signs("B", Imp(Says("A", P), P))


@pytest.fixture(scope="module")
def m1():
    return load_model("example1.model")


@pytest.fixture(scope="module")
def u():
    return load_model("selfref.model")


class TestExamples:
    def test_example1(self, m1):
        for w in m1.worlds:
            assert evaluate(m1, w, OFFER_A) and evaluate(m1, w, OFFER_B)
            assert not evaluate(m1, w, Says("A", P))
            assert not evaluate(m1, w, Says("B", P))

    def test_one_world_counterparts(self, u):
        assert evaluate(u, "u", C)
        assert evaluate(u, "u", Says("A", P))
        assert eval_mutual(u, "u", ("A", "B"), P)

    def test_says_k(self, m1):
        assert eval_says_k(m1, "w0", ("A", "B"), 2, OFFER_A)
        for w in m1.worlds:
            assert eval_says_k(m1, w, ("A", "B"), 1, P) == evaluate(m1, w, group_says("AB", P))

    def test_vacuous(self):
        m = Model(("w",), ("A", "B"), ("p",))
        assert eval_says_k(m, "w", ("A",), 3, P)
        assert reach_plus(m, ("A",), "w") == frozenset()
        assert eval_mutual(m, "w", ("A",), P)

    def test_mutual_example1(self, m1):
        assert reach_plus(m1, ("A", "B"), "w0") == {"w0", "w1"}
        assert not eval_mutual(m1, "w0", ("A", "B"), P)

    def test_height(self, m1):
        assert tree_height(m1, "w0", P) == 0
        assert tree_height(m1, "w0", Not(P)) == 1
        assert tree_height(m1, "w0", Says("A", Not(P))) == 2

    def test_errors(self, m1):
        with pytest.raises(OpenTermError):
            evaluate(m1, "w0", Signs("A", Var("x")))
        with pytest.raises(UnknownWorld):
            evaluate(m1, "nowhere", P)
        with pytest.raises(UngroundedSelfReference):
            evaluate(m1, "w0", This("x", Entails(Var("x"), P)))

    def test_recursion_limit(self, m1):
        f = P
        for _ in range(50):
            f = Not(f)
        with pytest.raises(EvalDepthError):
            Evaluator(m1, recursion_limit=20).check("w0", f)
        with pytest.raises(EvalDepthError):
            Evaluator(m1, memo=False, recursion_limit=20).check("w0", f)
        assert Evaluator(m1, recursion_limit=100).check("w0", Not(f))

    def test_trace(self, m1):
        tr = trace(m1, "w0", Says("A", Not(P)))
        assert tr.value is False and tr.height == 2
        assert [c.world for c in tr.children] == ["w0", "w1"]
        assert tr.sexpr().startswith("(judgment w0 (says A (not p)) false")


# -- agreement with the reference evaluator ---------------------------------

@given(models(), st.lists(sentences, min_size=1, max_size=5))
def test_matches_naive_oracle(m, fs):
    memo, plain, ref = Evaluator(m), Evaluator(m, memo=False), oracle.Naive(m)
    for f in fs:
        for w in m.worlds:
            expected = ref.sat(w, f)
            assert memo.check(w, f) == expected
            assert plain.check(w, f) == expected


@given(models(mode="explicit"), st.lists(sentences, min_size=1, max_size=5))
def test_matches_naive_oracle_explicit(m, fs):
    ev, ref = Evaluator(m), oracle.Naive(m)
    assert all(ev.check(w, f) == ref.sat(w, f) for f in fs for w in m.worlds)


@given(models(), this_formulas())
def test_unfolding_is_semantic(m, c):
    ev = Evaluator(m)
    assert all(ev.check(w, c) == ev.check(w, unfold(c)) for w in m.worlds)


# -- says^k and says^omega ---------------------------------------------------

@given(models(max_worlds=5), groups, sentences)
def test_mutual_stabilizes(m, g, f):
    ev = Evaluator(m)
    for w in m.worlds:
        bounded = all(eval_says_k(m, w, g, k, f, ev) for k in range(1, len(m.worlds) + 1))
        assert eval_mutual(m, w, g, f, ev) == bounded


@given(models(), groups, st.integers(1, 3), sentences)
def test_says_k_unrolls(m, g, k, f):
    nested = f
    for _ in range(k):
        nested = group_says(g, nested)
    ev = Evaluator(m)
    assert all(ev.check(w, SaysK(g, k, f)) == ev.check(w, nested) for w in m.worlds)


@given(models(), groups, sentences, sentences)
def test_mutual_properties(m, g, f, h):
    ev = Evaluator(m)
    ws = m.worlds
    # (1) validity is preserved
    if all(ev.check(w, f) for w in ws):
        assert all(eval_mutual(m, w, g, f, ev) for w in ws)
    # (2) closure under implication
    k = And(Mutual(g, f), Mutual(g, Imp(f, h)))
    assert all(ev.check(w, Imp(k, Mutual(g, h))) for w in ws)
    # (4) fixpoint unfolding
    unf = group_says(g, And(f, Mutual(g, f)))
    assert all(ev.check(w, Mutual(g, f)) == ev.check(w, unf) for w in ws)
    # (3) induction rule
    if all(ev.check(w, Imp(f, group_says(g, And(f, h)))) for w in ws):
        assert all(ev.check(w, Imp(f, Mutual(g, h))) for w in ws)


# -- the semantic tree -------------------------------------------------------

@given(st.lists(models(), min_size=2, max_size=4), sentences)
def test_height_ignores_the_model(ms, f):
    heights = {tree_height(m, w, f) for m in ms for w in m.worlds}
    assert len(heights) == 1


@given(models(), sentences)
def test_trace_heights_are_consistent(m, f):
    def check(t):
        if t.cache_hit:
            return
        if not t.children:
            assert t.height == 0
        else:
            assert t.height == 1 + max(c.height for c in t.children)
            for c in t.children:
                check(c)

    w = m.worlds[0]
    tr = trace(m, w, f)
    check(tr)
    assert tr.value == evaluate(m, w, f)
    assert tr.height == tree_height(m, w, f)
