"""Hypothesis strategies for terms, sentences and models."""
from __future__ import annotations

from hypothesis import strategies as st

from countersign.gen import Gen, GenConfig
from countersign.syntax import (
    Agent, And, Atom, Entails, Imp, Mutual, Not, Op, Says, SaysK, Signs, This, Var,
)

AGENTS = ("A", "B", "C")
ATOMS = ("p", "q")
VARS = ("x", "y")
OPS = {"k": 0, "f": 1}

agents = st.sampled_from(AGENTS)
groups = st.lists(agents, min_size=1, max_size=3, unique=True).map(tuple)
atoms = st.sampled_from(ATOMS).map(Atom)

closed_ops = st.recursive(st.just(Op("k")), lambda inner: inner.map(lambda t: Op("f", (t,))),
                          max_leaves=3)


def formulas(bound=(), sentences_only=True, max_leaves=8):
    """Formulas whose free variables are drawn from ``bound``.

    Variables only appear as signed terms, and ``this`` binders always sign
    their variable, so the results evaluate under either entailment mode.
    """
    leaf_terms = closed_ops if not bound else st.one_of(closed_ops, st.sampled_from(bound).map(Var))
    leaves = st.one_of(atoms, st.builds(Signs, agents, leaf_terms))

    def extend(inner):
        return st.one_of(
            inner.map(Not),
            st.builds(And, inner, inner),
            st.builds(Imp, inner, inner),
            st.builds(Says, agents, inner),
            st.builds(Signs, agents, inner),
            st.builds(Entails, st.one_of(closed_ops, atoms), inner),
            st.builds(SaysK, groups, st.integers(1, 3), inner),
            st.builds(Mutual, groups, inner),
        )

    base = st.recursive(leaves, extend, max_leaves=max_leaves)
    if bound:
        return base
    return st.one_of(base, this_formulas(max_leaves))


def this_formulas(max_leaves=6):
    @st.composite
    def build(draw):
        x = draw(st.sampled_from(VARS))
        body = draw(formulas((x,), max_leaves=max_leaves))
        sig = Signs(draw(agents), Var(x))
        return This(x, draw(st.sampled_from((Imp(sig, body), And(sig, body)))))

    return build()


sentences = formulas()

open_terms = st.one_of(
    st.sampled_from(VARS).map(Var),
    agents.map(Agent),
    closed_ops,
    formulas(VARS),
)


def models(**kw):
    """Random models satisfying SC1-SC3, drawn from a seed."""
    return st.integers(0, 2**32 - 1).map(lambda s: Gen(s, GenConfig(agents=AGENTS)).model(**kw))
