import random
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from strategies import models, sentences
from countersign.corpus import load_model
from countersign.kripke import (
    Model, ModelError, UngroundedSelfReference, UnknownWorld, entailment_closure, entails_holds,
    extend_fixpoint, rel_equiv_k, validate_model,
)
from countersign.sat import OpenTermError, evaluate
from countersign.syntax import (
    Atom, Entails, Imp, Op, Says, Signs, This, Var, entailment_depth,
)

P, Q = Atom("p"), Atom("q")
K = Op("k")


@pytest.fixture(scope="module")
def m1():
    return load_model("example1.model")


class TestEntailsHolds:
    def test_example1(self, m1):
        assert entails_holds(m1, P, "w1")
        assert not entails_holds(m1, P, "w0")

    def test_explicit_membership(self):
        m = Model(("w0", "w1"), ("A",), ops={"k": 0}, entails=frozenset({(K, "w0")}))
        assert entails_holds(m, K, "w0")
        assert not entails_holds(m, K, "w1")

    def test_errors(self, m1):
        with pytest.raises(OpenTermError):
            entails_holds(m1, Signs("A", Var("x")), "w0")
        with pytest.raises(UnknownWorld):
            entails_holds(m1, P, "w7")


@given(models())
def test_tautology_entails_everywhere(m):
    assert all(entails_holds(m, Imp(P, P), w) for w in m.worlds)


class TestValidate:
    def test_example1_clean(self, m1):
        assert validate_model(m1).violations == []

    def test_sc2(self):
        m = Model(("w",), ("A",), ("p",), says=frozenset({("w", "A", "w")}),
                  signs=frozenset({("w", "A", P)}))
        rep = validate_model(m)
        assert [(v.constraint, v.witness) for v in rep.violations] == [("SC2", ("w", "A", P, "w"))]
        assert rep.sexpr() == "(violations (sc2 w A p w))"

    def test_sc3(self):
        m = Model(("w0", "w1"), ("A", "B"), ops={"k": 0},
                  says=frozenset({("w0", "A", "w1")}), signs=frozenset({("w0", "B", K)}),
                  entails=frozenset({(K, "w1")}))
        rep = validate_model(m)
        assert [(v.constraint, v.witness) for v in rep.violations] == \
            [("SC3", ("w0", "B", K, "A", "w1"))]

    def test_sc1_explicit(self):
        m = Model(("w0", "w1"), ("A",), ("p",), valuation={"w1": frozenset({"p"})},
                  entails=frozenset({(P, "w0"), (P, "w1")}))
        rep = validate_model(m)
        assert [(v.constraint, v.witness) for v in rep.violations] == [("SC1", (P, "w0"))]

    def test_fixedpoint_rejects_formula_pairs(self):
        with pytest.raises(ModelError):
            Model(("w",), ("A",), ("p",), entails=frozenset({(P, "w")}), mode="fixedpoint")


def _random_explicit_model(seed):
    rng = random.Random(seed)
    worlds = ("w0", "w1", "w2")[:rng.randint(1, 3)]
    agents = ("A", "B")
    terms = [K, P, Imp(P, Q), Says("A", P)]
    val = {w: frozenset(a for a in ("p", "q") if rng.random() < 0.5) for w in worlds}
    says = {(w, a, v) for w in worlds for a in agents for v in worlds if rng.random() < 0.4}
    signs = {(w, a, t) for w in worlds for a in agents for t in terms if rng.random() < 0.2}
    ent = {(t, w) for t in terms for w in worlds if rng.random() < 0.5}
    return Model(worlds, agents, ("p", "q"), {"k": 0}, val, frozenset(says),
                 frozenset(signs), frozenset(ent))


@given(st.integers(0, 10**6))
def test_reports_are_complete(seed):
    """Removing the tuple behind a violation removes exactly that violation."""
    m = _random_explicit_model(seed)
    rep = validate_model(m)
    for v in rep.violations[:4]:
        match v.constraint:
            case "SC1":
                t, w = v.witness
                fixed = replace(m, entails=m.entails - {(t, w)})
            case "SC2":
                w, a, _, u = v.witness
                fixed = replace(m, says=m.says - {(w, a, u)})
            case "SC3":
                w, _, _, a, u = v.witness
                fixed = replace(m, says=m.says - {(w, a, u)})
        assert v not in validate_model(fixed).violations


@given(models())
def test_generated_models_validate(m):
    assert validate_model(m).ok


class TestFixpoint:
    def test_example1_queries(self, m1):
        assert extend_fixpoint(m1, [P]) == {(P, "w1")}
        assert extend_fixpoint(m1, [Imp(P, P)]) == {(Imp(P, P), "w0"), (Imp(P, P), "w1")}
        e = Entails(P, P)
        assert extend_fixpoint(m1, [e]) >= {(e, w) for w in m1.worlds if evaluate(m1, w, e)}

    def test_closure(self):
        c = This("x", Imp(Signs("A", Var("x")), P))
        f = Entails(Imp(P, Q), Says("A", Signs("B", c)))
        closure = entailment_closure([f])
        assert {f, Imp(P, Q), c} <= closure

    def test_ungrounded(self, m1):
        bad = This("x", Entails(Var("x"), P))
        with pytest.raises(UngroundedSelfReference, match="ungrounded|left of an entailment"):
            extend_fixpoint(m1, [bad])

    def test_needs_fixedpoint_mode(self):
        with pytest.raises(ModelError):
            extend_fixpoint(Model(("w",), ("A",)), [P])


@given(models(), st.lists(sentences, max_size=4))
def test_fixpoint_is_monotone_in_queries(m, qs):
    whole = extend_fixpoint(m, qs)
    for i in range(len(qs)):
        assert extend_fixpoint(m, qs[:i]) <= whole


@given(models(), st.lists(sentences, min_size=1, max_size=4))
def test_fixpoint_stages_grow(m, qs):
    """Stopping the construction early gives a subset of the full result."""
    full = extend_fixpoint(m, qs)
    top = max(entailment_depth(f) for f in entailment_closure(qs))
    for d in range(1, top + 1):
        shallow = [f for f in entailment_closure(qs) if entailment_depth(f) <= d]
        part = extend_fixpoint(m, shallow)
        assert part <= full
        low = lambda r: {(f, w) for f, w in r if entailment_depth(f) <= d}  # noqa: E731
        assert low(part) == low(full)


class TestRelEquiv:
    universe = [K, P, Entails(P, P), Entails(Entails(P, P), P)]

    def test_examples(self):
        r = {(K, "w0"), (P, "w1")}
        assert all(rel_equiv_k(r, set(r), k, self.universe) for k in range(4))
        deep = Entails(Entails(P, P), P)
        r2 = r | {(deep, "w0")}
        assert rel_equiv_k(r, r2, 2, self.universe)
        assert not rel_equiv_k(r, r2, 3, self.universe)
        # depth 0 compares only non-formula terms
        assert rel_equiv_k(r, {(K, "w0")}, 0, self.universe)
        assert not rel_equiv_k(r, {(K, "w1")}, 0, self.universe)

    @given(st.sets(st.tuples(st.sampled_from(universe), st.sampled_from(("w0", "w1")))),
           st.sets(st.tuples(st.sampled_from(universe), st.sampled_from(("w0", "w1")))),
           st.integers(1, 3))
    def test_downward_closed(self, r1, r2, k):
        if rel_equiv_k(r1, r2, k, self.universe):
            assert rel_equiv_k(r1, r2, k - 1, self.universe)
        assert rel_equiv_k(r1, r2, k, self.universe) == rel_equiv_k(r2, r1, k, self.universe)
