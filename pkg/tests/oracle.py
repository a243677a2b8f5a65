"""Reference implementations used to cross-check the package.

Each one is the most literal reading of its definition, with no caching,
bitmasks or shared helpers from the package beyond the node classes.
"""
from __future__ import annotations

from itertools import product

from countersign.kripke import Model
from countersign.syntax import (
    Agent, And, Atom, Entails, Formula, Mutual, Not, Op, Says, SaysK, Signs, This, Var,
)


def free(t) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, (Agent, Atom)):
        return set()
    if isinstance(t, Op):
        return set().union(*(free(a) for a in t.args)) if t.args else set()
    if isinstance(t, This):
        return free(t.body) - {t.var}
    if isinstance(t, (Not, Says, SaysK, Mutual)):
        return free(t.body)
    if isinstance(t, And):
        return free(t.left) | free(t.right)
    if isinstance(t, Entails):
        return free(t.term) | free(t.body)
    if isinstance(t, Signs):
        return free(t.term)
    raise TypeError(t)


def subst(u, x: str, t):
    """Plain recursive substitution; binders of ``x`` stop it."""
    if isinstance(u, Var):
        return t if u.name == x else u
    if isinstance(u, (Agent, Atom)):
        return u
    if isinstance(u, Op):
        return Op(u.name, tuple(subst(a, x, t) for a in u.args))
    if isinstance(u, This):
        return u if u.var == x else This(u.var, subst(u.body, x, t))
    if isinstance(u, Not):
        return Not(subst(u.body, x, t))
    if isinstance(u, And):
        return And(subst(u.left, x, t), subst(u.right, x, t))
    if isinstance(u, Entails):
        return Entails(subst(u.term, x, t), subst(u.body, x, t))
    if isinstance(u, Signs):
        return Signs(u.agent, subst(u.term, x, t))
    if isinstance(u, Says):
        return Says(u.agent, subst(u.body, x, t))
    if isinstance(u, SaysK):
        return SaysK(u.group, u.k, subst(u.body, x, t))
    if isinstance(u, Mutual):
        return Mutual(u.group, subst(u.body, x, t))
    raise TypeError(u)


def depth(t) -> int:
    """Entailment depth straight from its recursion."""
    if not isinstance(t, Formula):
        return 0
    if isinstance(t, Entails):
        return max(depth(t.term), depth(t.body)) + 1
    if isinstance(t, (Atom, Signs)):
        return 1
    if isinstance(t, And):
        return max(depth(t.left), depth(t.right))
    return depth(t.body)


class Naive:
    """World-by-world satisfaction with no memo table."""

    def __init__(self, m: Model):
        self.m = m

    def ent(self, t) -> set:
        m = self.m
        if m.mode == "fixedpoint" and isinstance(t, Formula):
            return {w for w in m.worlds if self.sat(w, t)}
        if m.entails_base_all and not isinstance(t, Formula):
            return set(m.worlds)
        return {w for u, w in m.entails if u == t}

    def succ(self, w, a):
        return [v for (u, b, v) in self.m.says if u == w and b == a]

    def sat(self, w: str, f) -> bool:
        m = self.m
        if isinstance(f, Atom):
            return f.name in m.valuation.get(w, ())
        if isinstance(f, Signs):
            return (w, f.agent, f.term) in m.signs
        if isinstance(f, Not):
            return not self.sat(w, f.body)
        if isinstance(f, And):
            return self.sat(w, f.left) and self.sat(w, f.right)
        if isinstance(f, Entails):
            return all(self.sat(v, f.body) for v in self.ent(f.term))
        if isinstance(f, Says):
            return all(self.sat(v, f.body) for v in self.succ(w, f.agent))
        if isinstance(f, SaysK):
            # G says^1 f = G says f ; G says^(k+1) f = G says (G says^k f)
            inner = f.body if f.k == 1 else SaysK(f.group, f.k - 1, f.body)
            return all(self.sat(w, Says(a, inner)) for a in f.group)
        if isinstance(f, Mutual):
            return w in self.mutual_set(f.group, f.body)
        if isinstance(f, This):
            return self.sat(w, subst(f.body, f.var, f))
        raise TypeError(f)

    def mutual_set(self, group, body) -> set:
        """Greatest X with X = {w | every G-successor v has body and v in X}."""
        m = self.m
        good = {w for w in m.worlds if self.sat(w, body)}
        x = set(m.worlds)
        while True:
            nxt = {w for w in x
                   if all(v in good and v in x for a in group for v in self.succ(w, a))}
            if nxt == x:
                return x
            x = nxt


def letters(f, out=None) -> list:
    """Maximal non-boolean subformulas, in first-seen order."""
    out = [] if out is None else out
    if isinstance(f, Not):
        letters(f.body, out)
    elif isinstance(f, And):
        letters(f.left, out)
        letters(f.right, out)
    elif f not in out:
        out.append(f)
    return out


def tautology(f) -> bool:
    ls = letters(f)

    def val(g, env):
        if isinstance(g, Not):
            return not val(g.body, env)
        if isinstance(g, And):
            return val(g.left, env) and val(g.right, env)
        return env[g]

    return all(val(f, dict(zip(ls, bits))) for bits in product((False, True), repeat=len(ls)))
