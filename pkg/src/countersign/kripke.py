"""Finite Kripke models, the three semantic constraints and the
entailment fixed point.

A model carries an entailment *mode*. In ``explicit`` mode the entailment
relation is exactly the declared ``(term, world)`` pairs. In ``fixedpoint``
mode only pairs for non-formula terms are declared (the base relation) and a
formula is taken to entail exactly the worlds where it holds, which is the
limit of the depth-stratified construction computed by ``extend_fixpoint``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable

from .syntax import (
    Entails, Formula, Signs, Term, This, agents_of, atoms_of, entailment_depth,
    is_sentence, ops_of, self_entailing, unfold,
)

MODES = ("explicit", "fixedpoint")


class ModelError(ValueError):
    """A model refers to undeclared names or breaks a structural rule."""


class UnknownWorld(KeyError):
    pass


@dataclass(frozen=True, eq=True)
class Model:
    worlds: tuple
    agents: tuple
    atoms: tuple = ()
    ops: dict = field(default_factory=dict)
    valuation: dict = field(default_factory=dict)   # world -> frozenset of atoms
    says: frozenset = frozenset()                   # (w, agent, w')
    signs: frozenset = frozenset()                  # (w, agent, term)
    entails: frozenset = frozenset()                # (term, w)
    mode: str = "explicit"
    entails_base_all: bool = False                  # every non-formula term entails every world

    __hash__ = None

    def __post_init__(self):
        for name in ("worlds", "agents", "atoms"):
            vals = getattr(self, name)
            if len(set(vals)) != len(vals):
                raise ModelError(f"duplicate {name[:-1]} declaration")
        if self.mode not in MODES:
            raise ModelError(f"unknown entailment mode {self.mode!r}")
        ws, ag, at = set(self.worlds), set(self.agents), set(self.atoms)
        for w, ps in self.valuation.items():
            if w not in ws:
                raise ModelError(f"valuation for undeclared world {w}")
            if not set(ps) <= at:
                raise ModelError(f"undeclared atoms {sorted(set(ps) - at)} at {w}")
        for w, a, v in self.says:
            if w not in ws or v not in ws:
                raise ModelError(f"says edge ({w} {a} {v}) uses an undeclared world")
            if a not in ag:
                raise ModelError(f"says edge ({w} {a} {v}) uses undeclared agent {a}")
        for w, a, t in self.signs:
            if w not in ws or a not in ag:
                raise ModelError(f"signature ({w} {a} ...) uses undeclared names")
            self._check_term(t)
        for t, w in self.entails:
            if w not in ws:
                raise ModelError(f"entailment pair at undeclared world {w}")
            self._check_term(t)
            if self.mode == "fixedpoint" and isinstance(t, Formula):
                raise ModelError("fixedpoint mode only declares non-formula entailments")

    def _check_term(self, t: Term):
        if not is_sentence(t):
            raise ModelError("relations may only hold sentences and closed terms")
        if not agents_of(t) <= set(self.agents):
            raise ModelError(f"undeclared agents {sorted(agents_of(t) - set(self.agents))}")
        if not atoms_of(t) <= set(self.atoms):
            raise ModelError(f"undeclared atoms {sorted(atoms_of(t) - set(self.atoms))}")
        for name, n in ops_of(t).items():
            if self.ops.get(name) != n:
                raise ModelError(f"operator {name}/{n} is not declared")

    # -- indexes -------------------------------------------------------------

    @cached_property
    def successors(self) -> dict:
        """(world, agent) -> tuple of says-successors."""
        out = {}
        for w, a, v in sorted(self.says):
            out.setdefault((w, a), []).append(v)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _base_index(self) -> dict:
        out = {}
        for t, w in self.entails:
            out.setdefault(t, set()).add(w)
        return {t: frozenset(ws) for t, ws in out.items()}

    def succ(self, w: str, agent: str) -> tuple:
        return self.successors.get((w, agent), ())

    def step(self, ws: Iterable[str], group: Iterable[str]) -> frozenset:
        """Worlds one says-edge away from ``ws`` along any agent of ``group``."""
        group = tuple(group)
        return frozenset(v for w in ws for a in group for v in self.succ(w, a))

    def base_worlds(self, t: Term) -> frozenset:
        """Worlds related to ``t`` by the declared entailment relation."""
        if self.entails_base_all and not isinstance(t, Formula):
            return frozenset(self.worlds)
        return self._base_index.get(t, frozenset())

    def holds_atom(self, w: str, p: str) -> bool:
        return p in self.valuation.get(w, ())

    def has_world(self, w: str) -> bool:
        return w in self._world_set

    @cached_property
    def _world_set(self):
        return frozenset(self.worlds)

    def with_entails(self, pairs: Iterable[tuple], base_all: bool | None = None) -> "Model":
        """The same model with its entailment relation replaced, in explicit mode."""
        return replace(
            self, entails=frozenset(pairs), mode="explicit",
            entails_base_all=self.entails_base_all if base_all is None else base_all,
        )

    def signature(self):
        from .surface import Signature

        return Signature(frozenset(self.agents), frozenset(self.atoms), dict(self.ops))


# -- entailment membership ---------------------------------------------------

def entails_holds(m: Model, t: Term, w: str, evaluator=None) -> bool:
    """Whether ``(t, w)`` is in the model's entailment relation."""
    from .sat import Evaluator, OpenTermError

    if not is_sentence(t):
        raise OpenTermError("entailment is only defined for closed terms")
    if not m.has_world(w):
        raise UnknownWorld(w)
    ev = evaluator or Evaluator(m)
    return w in ev.entailed_worlds(t)


# -- constraints -------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    constraint: str         # SC1 | SC2 | SC3
    witness: tuple          # worlds / agents / terms, in the order of the sexpr form
    detail: str

    def sexpr(self) -> str:
        from .surface import print_term

        parts = [x if isinstance(x, str) else print_term(x) for x in self.witness]
        return f"({self.constraint.lower()} {' '.join(parts)})"


@dataclass
class ConstraintReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_constraint(self, name: str) -> list:
        return [v for v in self.violations if v.constraint == name]

    def sexpr(self) -> str:
        return "(violations" + "".join(" " + v.sexpr() for v in self.violations) + ")"

    def text(self) -> str:
        if self.ok:
            return "model satisfies SC1, SC2 and SC3"
        return "\n".join(f"{v.constraint}: {v.detail}" for v in self.violations)


def validate_model(m: Model, evaluator=None) -> ConstraintReport:
    """Check SC1-SC3 and list every violating tuple."""
    from .sat import Evaluator
    from .surface import print_term

    ev = evaluator or Evaluator(m)
    out = []
    if m.mode == "explicit":
        for t, w in sorted(m.entails, key=lambda e: (print_term(e[0]), e[1])):
            if isinstance(t, Formula) and not ev.holds(w, t):
                out.append(Violation("SC1", (t, w),
                                     f"{print_term(t)} is entailment-consistent with {w} "
                                     f"but false there"))
    else:
        # holds by construction; spot-check the signed formulas
        for t in sorted({t for _, _, t in m.signs if isinstance(t, Formula)}, key=print_term):
            ws = ev.entailed_worlds(t)
            for w in m.worlds:
                if (w in ws) != ev.holds(w, t):
                    out.append(Violation("SC1", (t, w),
                                         f"fixed point disagrees with truth of "
                                         f"{print_term(t)} at {w}"))
    signs = sorted(m.signs, key=lambda s: (s[0], s[1], print_term(s[2])))
    for w, a, t in signs:
        ws = ev.entailed_worlds(t)
        for v in m.succ(w, a):
            if v not in ws:
                out.append(Violation("SC2", (w, a, t, v),
                                     f"{a} signed {print_term(t)} at {w} but {v} is a "
                                     f"{a}-successor outside its entailment"))
    for w, b, t in signs:
        for a in m.agents:
            for v in m.succ(w, a):
                if (v, b, t) not in m.signs:
                    out.append(Violation("SC3", (w, b, t, a, v),
                                         f"{b} signed {print_term(t)} at {w} but not at "
                                         f"its {a}-successor {v}"))
    return ConstraintReport(out)


# -- the fixed-point construction --------------------------------------------

class UngroundedSelfReference(ValueError):
    """A ``this`` binder places its own variable on the left of an entailment.

    Against the fixed-point relation such a formula asks what it entails in
    terms of itself, so the depth stratification has no base case.
    """


def entailment_closure(queries: Iterable[Formula]) -> set:
    """Queries plus every formula reachable as an entailment left side or a
    signed term, transitively, looking through ``this`` unfoldings."""
    closure = set()
    todo = list(queries)
    seen_nodes = set()
    while todo:
        f = todo.pop()
        if f in closure:
            continue
        closure.add(f)
        stack = [f]
        while stack:
            g = stack.pop()
            if g in seen_nodes:
                continue
            seen_nodes.add(g)
            match g:
                case Entails(u, b):
                    if isinstance(u, Formula):
                        todo.append(u)
                    stack.append(b)
                case Signs(_, u):
                    if isinstance(u, Formula):
                        todo.append(u)
                case This():
                    if self_entailing(g):
                        raise UngroundedSelfReference(
                            "binder puts its own variable on the left of an entailment: "
                            + _show(g))
                    stack.append(unfold(g))
                case _:
                    stack.extend(c for c in _formula_children(g))
    return closure


def _formula_children(g):
    from .syntax import And, Mutual, Not, Says, SaysK

    match g:
        case Not(b) | Says(_, b) | SaysK(_, _, b) | Mutual(_, b):
            return (b,)
        case And(l, r):
            return (l, r)
    return ()


def _show(t):
    from .surface import print_term

    return print_term(t)


def extend_fixpoint(m: Model, queries: Iterable[Formula]) -> set:
    """The limit relation restricted to the entailment closure of ``queries``.

    Round ``i`` adds ``(f, w)`` for every closure formula of entailment depth
    ``i`` that holds at ``w`` in the model whose entailment relation is the
    result of round ``i - 1``.
    """
    from .sat import Evaluator

    if m.mode != "fixedpoint":
        raise ModelError("extend_fixpoint needs a fixedpoint-mode model")
    closure = entailment_closure(queries)
    layers = {}
    for f in closure:
        layers.setdefault(entailment_depth(f), []).append(f)
    rel = set(m.entails)
    derived = set()
    # stage models must admit every name the queries mention; extra agents
    # and atoms have no edges, signatures or truths, so nothing changes
    agents, atoms, ops = set(m.agents), set(m.atoms), dict(m.ops)
    for f in closure:
        agents |= agents_of(f)
        atoms |= atoms_of(f)
        for name, n in ops_of(f).items():
            ops.setdefault(name, n)
    base = replace(m, agents=m.agents + tuple(sorted(agents - set(m.agents))),
                   atoms=m.atoms + tuple(sorted(atoms - set(m.atoms))), ops=ops)
    for depth in range(1, max(layers, default=0) + 1):
        stage = base.with_entails(rel)
        ev = Evaluator(stage)
        new = {(f, w) for f in layers.get(depth, ()) for w in m.worlds if ev.holds(w, f)}
        rel |= new
        derived |= new
    return derived


def rel_equiv_k(r1: Iterable[tuple], r2: Iterable[tuple], k: int,
                universe: Iterable[Term]) -> bool:
    """Do two entailment relations agree on every universe term of depth <= k?"""
    r1, r2 = set(r1), set(r2)
    for t in universe:
        if entailment_depth(t) > k:
            continue
        if {w for u, w in r1 if u == t} != {w for u, w in r2 if u == t}:
            return False
    return True
