import pytest
from hypothesis import given, strategies as st

import oracle
from strategies import VARS, closed_ops, formulas, open_terms, sentences
from countersign.surface import parse_term
from countersign.syntax import (
    Agent, And, Atom, CaptureError, Entails, Iff, Imp, Mutual, Not, Op, Or, Says, SaysK,
    Signs, This, Var, as_group_says, as_iff, as_imp, canonical_bytes, conj, entailment_depth,
    free_vars, group_says, is_sentence, substitute, this_depth, unfold,
)

P, Q = Atom("p"), Atom("q")
X, Y = Var("x"), Var("y")
C2 = This("x", Imp(And(Signs("A", X), Signs("B", X)), P))


class TestExamples:
    def test_free_vars(self):
        assert free_vars(P) == set()
        assert free_vars(Signs("A", X)) == {"x"}
        assert free_vars(This("x", Imp(Signs("A", X), P))) == set()

    def test_substitute(self):
        phi = Imp(Signs("A", X), P)
        assert substitute(This("x", phi), "x", Op("k")) == This("x", phi)
        assert substitute(Entails(X, P), "x", Q) == Entails(Q, P)
        c = This("x", phi)
        assert substitute(phi, "x", c) == Imp(Signs("A", c), P)
        assert unfold(c) == Imp(Signs("A", c), P)

    def test_is_sentence(self):
        assert is_sentence(P)
        assert not is_sentence(Signs("A", X))
        assert is_sentence(C2)

    def test_entailment_depth(self):
        assert entailment_depth(Entails(P, P)) == 2
        assert entailment_depth(Entails(Entails(P, P), P)) == 3
        assert entailment_depth(Says("A", Entails(P, Q))) == 2

    def test_this_depth(self):
        assert this_depth(P) == 0
        assert this_depth(This("x", Imp(Signs("A", X), P))) == 1
        assert this_depth(This("x", Says("A", This("y", P)))) == 2
        # binders in signed terms are syntax, not evaluation
        assert this_depth(Signs("A", C2)) == 0

    def test_canonical_bytes(self):
        assert canonical_bytes(P) == b"p"
        assert canonical_bytes(And(P, Q)) == b"(and p q)"

    def test_capture_guard(self):
        with pytest.raises(CaptureError):
            substitute(This("y", Signs("A", X)), "x", Y)

    def test_groups_are_normalized(self):
        assert Mutual(("B", "A"), P) == Mutual(("A", "B"), P)
        with pytest.raises(ValueError):
            Mutual((), P)
        with pytest.raises(ValueError):
            SaysK(("A", "A"), 1, P)
        with pytest.raises(ValueError):
            SaysK(("A",), 0, P)

    def test_abbreviations_round_trip(self):
        assert as_imp(Imp(P, Q)) == (P, Q)
        assert as_iff(Iff(P, Q)) == (P, Q)
        assert Or(P, Q) == Not(And(Not(P), Not(Q)))
        assert as_imp(And(P, Q)) is None
        assert conj([P, Q, P]) == And(P, And(Q, P))
        assert as_group_says(group_says(("B", "A"), P), ("A", "B")) == P
        assert as_group_says(And(Says("A", P), Says("B", Q)), ("A", "B")) is None


# -- properties --------------------------------------------------------------

@given(open_terms)
def test_free_vars_matches_oracle(t):
    assert free_vars(t) == oracle.free(t)


@given(open_terms)
def test_entailment_depth_matches_oracle(t):
    assert entailment_depth(t) == oracle.depth(t)


@given(formulas(VARS), st.sampled_from(VARS), st.one_of(closed_ops, sentences))
def test_substitution_preserves_this_depth(f, x, t):
    assert this_depth(substitute(f, x, t)) == this_depth(f)


@given(open_terms, st.sampled_from(VARS), open_terms)
def test_free_vars_after_substitution(u, x, t):
    try:
        out = substitute(u, x, t)
    except CaptureError:
        return
    expected = (free_vars(u) - {x}) | (free_vars(t) if x in free_vars(u) else set())
    assert free_vars(out) == expected
    assert out == oracle.subst(u, x, t)


@given(closed_ops)
def test_non_formula_depth_zero(t):
    assert entailment_depth(t) == 0
    assert entailment_depth(Agent("A")) == entailment_depth(X) == 0


@given(formulas(max_leaves=6))
def test_entails_free_formula_depth_one(f):
    stripped = _strip_entails(f)
    assert entailment_depth(stripped) == 1


def _strip_entails(f):
    match f:
        case Entails(_, b):
            return _strip_entails(b)
        case Not(b):
            return Not(_strip_entails(b))
        case And(l, r):
            return And(_strip_entails(l), _strip_entails(r))
        case Says(a, b):
            return Says(a, _strip_entails(b))
        case SaysK(g, k, b):
            return SaysK(g, k, _strip_entails(b))
        case Mutual(g, b):
            return Mutual(g, _strip_entails(b))
        case This(x, b):
            return This(x, _strip_entails(b))
    return f


@given(open_terms, open_terms)
def test_equality_agrees_with_canonical_bytes(a, b):
    assert (a == b) == (canonical_bytes(a) == canonical_bytes(b))
    assert parse_term(canonical_bytes(a).decode()) == a
