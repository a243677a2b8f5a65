"""Satisfaction ``M, w |= f``.

``this x. f`` is evaluated by unfolding: the binder is substituted for its
own variable. Variables only ever occur inside ``sign`` terms and on the left
of ``entails``, where the semantics looks terms up syntactically, so the
unfolding never re-enters the binder it came from.

``saysk`` quantifies over worlds at the end of exactly-k group paths and
``mutual`` over worlds reachable by one or more group edges; on a finite
model the latter equals the conjunction of every ``saysk``.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .kripke import Model, UngroundedSelfReference, UnknownWorld
from .syntax import (
    And, Atom, Entails, Formula, Mutual, Not, Says, SaysK, Signs, This, is_sentence,
    unfold,
)


class OpenTermError(ValueError):
    """Satisfaction is only defined for sentences."""


class EvalDepthError(RuntimeError):
    """The recursion limit was reached before evaluation finished."""


def reach_exact(m: Model, w: str, group, k: int) -> frozenset:
    """Worlds at the end of some path of exactly ``k`` group-labelled edges."""
    frontier = frozenset((w,))
    for _ in range(k):
        frontier = m.step(frontier, group)
        if not frontier:
            break
    return frontier


def reach_plus(m: Model, group, w: str) -> frozenset:
    """Worlds reachable from ``w`` by one or more group-labelled edges."""
    seen = set()
    frontier = m.step((w,), group)
    while frontier:
        new = frontier - seen
        seen |= new
        frontier = m.step(new, group)
    return frozenset(seen)


@dataclass
class EvalTrace:
    world: str
    formula: Formula
    value: bool
    children: list = field(default_factory=list)
    height: int = 0
    cache_hit: bool = False
    vacuous: bool = False     # stands in for an empty quantifier range

    def sexpr(self, indent: int = 0) -> str:
        from .surface import print_term

        pad = "  " * indent
        head = f"{pad}(judgment {self.world} {print_term(self.formula)} " \
               f"{'true' if self.value else 'false'}"
        flags = (" cached" if self.cache_hit else "") + (" vacuous" if self.vacuous else "")
        if not self.children:
            return head + flags + ")"
        kids = "\n".join(c.sexpr(indent + 2) for c in self.children)
        return f"{head}{flags}\n{pad}  (children\n{kids}))"


class Evaluator:
    """Evaluates sentences against one model.

    With ``memo`` on, each formula's extension (the set of worlds where it
    holds) is computed once, bottom-up, as a bitmask and cached by formula;
    formulas hash structurally, which coincides with comparing their
    canonical printed form. With ``memo`` off, every judgment is recomputed
    world by world straight from the satisfaction clauses.
    """

    def __init__(self, model: Model, memo: bool = True, recursion_limit: int = 10_000):
        self.m = model
        self.memo = memo
        self._ent = {} if memo else None
        self._pending = set()
        self.limit = recursion_limit
        self._depth = 0
        self._ext = {}
        self._reach = {}
        self._bit = {w: 1 << i for i, w in enumerate(model.worlds)}
        self._full = (1 << len(model.worlds)) - 1
        self._succ_mask = {}
        for (w, a), vs in model.successors.items():
            self._succ_mask[(w, a)] = sum(self._bit[v] for v in vs)

    # -- entailment relation -------------------------------------------------

    def entailed_worlds(self, t) -> frozenset:
        """Worlds ``w`` with ``(t, w)`` in the entailment relation."""
        m = self.m
        if m.mode == "explicit" or not isinstance(t, Formula):
            return m.base_worlds(t)
        if self._ent is not None and t in self._ent:
            return self._ent[t]
        if t in self._pending:
            raise UngroundedSelfReference(
                "entailment of a formula depends on itself: " + _show(t))
        self._pending.add(t)
        try:
            if self.memo:
                mask = self.extension(t)
                ws = frozenset(w for w in m.worlds if mask & self._bit[w])
            else:
                ws = frozenset(w for w in m.worlds if self.holds(w, t))
        finally:
            self._pending.discard(t)
        if self._ent is not None:
            self._ent[t] = ws
        return ws

    def _mask(self, ws) -> int:
        bit = self._bit
        return sum(bit[w] for w in ws)

    # -- satisfaction --------------------------------------------------------

    def check(self, w: str, f: Formula) -> bool:
        """Public entry: validates the world and that ``f`` is a sentence."""
        if not isinstance(f, Formula):
            raise TypeError("only formulas can be evaluated")
        if not is_sentence(f):
            raise OpenTermError("satisfaction is only defined for sentences: " + _show(f))
        if not self.m.has_world(w):
            raise UnknownWorld(w)
        try:
            return self.holds(w, f)
        except RecursionError:
            raise EvalDepthError("Python stack exhausted during evaluation") from None

    def holds(self, w: str, f: Formula) -> bool:
        if self.memo:
            return bool(self.extension(f) & self._bit[w])
        self._depth += 1
        try:
            if self._depth > self.limit:
                raise EvalDepthError(f"evaluation deeper than {self.limit}")
            return self._holds(w, f)
        finally:
            self._depth -= 1

    def extension(self, f: Formula) -> int:
        """Bitmask of the worlds where ``f`` holds (bit i is ``worlds[i]``)."""
        hit = self._ext.get(f)
        if hit is not None:
            return hit
        self._depth += 1
        try:
            if self._depth > self.limit:
                raise EvalDepthError(f"evaluation deeper than {self.limit}")
            r = self._extension(f)
        finally:
            self._depth -= 1
        self._ext[f] = r
        return r

    def _box(self, ranges, body_mask) -> int:
        """Worlds whose range mask lies inside ``body_mask``."""
        out = 0
        for w, r in ranges:
            if not r & ~body_mask:
                out |= self._bit[w]
        return out

    def _extension(self, f) -> int:
        m = self.m
        match f:
            case Atom(p):
                return self._mask(w for w in m.worlds if m.holds_atom(w, p))
            case Not(b):
                return self._full & ~self.extension(b)
            case And(l, r):
                return self.extension(l) & self.extension(r)
            case Signs(a, t):
                return self._mask(w for w in m.worlds if (w, a, t) in m.signs)
            case Entails(t, b):
                e = self._mask(self.entailed_worlds(t))
                return self._full if not e & ~self.extension(b) else 0
            case Says(a, b):
                sm = self._succ_mask
                return self._box(((w, sm.get((w, a), 0)) for w in m.worlds), self.extension(b))
            case SaysK(g, k, b):
                return self._box(((w, self._reach_mask(w, g, k)) for w in m.worlds),
                                 self.extension(b))
            case Mutual(g, b):
                return self._box(((w, self._reach_mask(w, g, None)) for w in m.worlds),
                                 self.extension(b))
            case This():
                return self.extension(unfold(f))
        raise TypeError(f"not a formula: {f!r}")

    def _reach_mask(self, w, group, k) -> int:
        key = (w, group, k)
        hit = self._reach.get(key)
        if hit is None:
            ws = reach_plus(self.m, group, w) if k is None else reach_exact(self.m, w, group, k)
            hit = self._reach[key] = self._mask(ws)
        return hit

    def _holds(self, w, f) -> bool:
        m = self.m
        match f:
            case Atom(p):
                return m.holds_atom(w, p)
            case Not(b):
                return not self.holds(w, b)
            case And(l, r):
                return self.holds(w, l) and self.holds(w, r)
            case Signs(a, t):
                return (w, a, t) in m.signs
            case Entails(t, b):
                return all(self.holds(v, b) for v in self.entailed_worlds(t))
            case Says(a, b):
                return all(self.holds(v, b) for v in m.succ(w, a))
            case SaysK(g, k, b):
                return all(self.holds(v, b) for v in reach_exact(m, w, g, k))
            case Mutual(g, b):
                return all(self.holds(v, b) for v in reach_plus(m, g, w))
            case This():
                return self.holds(w, unfold(f))
        raise TypeError(f"not a formula: {f!r}")

    # -- the semantic tree ---------------------------------------------------

    def _children(self, w, f):
        """Child judgments of the semantic tree, and whether the range was empty."""
        m = self.m
        match f:
            case Atom() | Signs():
                return [], False
            case Not(b):
                return [(w, b)], False
            case And(l, r):
                return [(w, l), (w, r)], False
            case This():
                return [(w, unfold(f))], False
            case Entails(t, b):
                ws = self.entailed_worlds(t)
            case Says(a, b):
                ws = m.succ(w, a)
            case SaysK(g, k, b):
                ws = reach_exact(m, w, g, k)
            case Mutual(g, b):
                ws = reach_plus(m, g, w)
            case _:
                raise TypeError(f"not a formula: {f!r}")
        if not ws:
            # measured as one child at the current world; see tree_height
            return [(w, b)], True
        return [(v, b) for v in sorted(ws)], False

    def height(self, w: str, f: Formula, _memo=None) -> int:
        memo = {} if _memo is None else _memo
        key = (w, f)
        if key in memo:
            return memo[key]
        kids, _ = self._children(w, f)
        h = 0 if not kids else 1 + max(self.height(v, g, memo) for v, g in kids)
        memo[key] = h
        return h

    def trace(self, w: str, f: Formula, _seen=None) -> EvalTrace:
        seen = {} if _seen is None else _seen
        key = (w, f)
        if key in seen:
            prev = seen[key]
            return EvalTrace(w, f, prev.value, prev.children, prev.height, cache_hit=True)
        kids, vacuous = self._children(w, f)
        sub = [self.trace(v, g, seen) for v, g in kids]
        if vacuous:
            for s in sub:
                s.vacuous = True
        node = EvalTrace(w, f, self.holds(w, f), sub,
                         0 if not sub else 1 + max(s.height for s in sub))
        seen[key] = node
        return node


def _show(t):
    from .surface import print_term

    return print_term(t)


# -- module-level entry points ----------------------------------------------

def evaluate(m: Model, w: str, f: Formula, memo: bool = True,
             recursion_limit: int = 10_000) -> bool:
    """``M, w |= f``."""
    return Evaluator(m, memo=memo, recursion_limit=recursion_limit).check(w, f)


def eval_says_k(m: Model, w: str, group, k: int, f: Formula, evaluator=None) -> bool:
    if k < 1:
        raise ValueError("k must be at least 1")
    ev = evaluator or Evaluator(m)
    _validate(m, w, f)
    return all(ev.holds(v, f) for v in reach_exact(m, w, tuple(group), k))


def eval_mutual(m: Model, w: str, group, f: Formula, evaluator=None) -> bool:
    ev = evaluator or Evaluator(m)
    _validate(m, w, f)
    return all(ev.holds(v, f) for v in reach_plus(m, tuple(group), w))


def _validate(m, w, f):
    if not is_sentence(f):
        raise OpenTermError("satisfaction is only defined for sentences: " + _show(f))
    if not m.has_world(w):
        raise UnknownWorld(w)


def tree_height(m: Model, w: str, f: Formula) -> int:
    """Height of the semantic tree of ``M, w |= f``.

    Leaves are atoms and signatures. A quantifier node over an empty range of
    worlds is measured as if it had the single child ``M, w |= body``, so the
    height depends on the formula alone, never on the model or world.
    """
    _validate(m, w, f)
    try:
        return Evaluator(m).height(w, f)
    except RecursionError:
        raise EvalDepthError("Python stack exhausted while measuring") from None


def trace(m: Model, w: str, f: Formula) -> EvalTrace:
    _validate(m, w, f)
    return Evaluator(m).trace(w, f)


if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)
