"""Random terms, formulas, models and axiom instances for property tests and
the experiment scripts.

Generated ``this`` binders only use their variable inside signed terms, so
they stay evaluable against a fixed-point entailment relation. Generated
models satisfy SC1-SC3 by construction: signatures are spread to every world
reachable from where they were made (SC3), non-formula signed terms entail
every successor the signer can see (SC2), and a signed formula is kept only if
the finished model still validates.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .kripke import Model, validate_model
from .syntax import (
    Agent, And, Atom, Entails, Formula, Iff, Imp, Mutual, Not, Op, Or, Says, SaysK, Signs,
    Term, This, Var, group_says, unfold,
)


@dataclass(frozen=True)
class GenConfig:
    agents: tuple = ("A", "B", "C")
    atoms: tuple = ("p", "q")
    ops: dict = field(default_factory=lambda: {"k": 0, "f": 1})
    depth: int = 2
    allow_this: bool = True
    allow_groups: bool = True

    __hash__ = None


class Gen:
    def __init__(self, rng: random.Random | int | None = None, cfg: GenConfig = GenConfig()):
        self.rng = rng if isinstance(rng, random.Random) else random.Random(rng)
        self.cfg = cfg
        self._fresh = 0

    # -- small pieces --------------------------------------------------------

    def agent(self) -> str:
        return self.rng.choice(self.cfg.agents)

    def group(self) -> tuple:
        k = self.rng.randint(1, min(2, len(self.cfg.agents)))
        return tuple(sorted(self.rng.sample(self.cfg.agents, k)))

    def _var(self) -> str:
        self._fresh += 1
        return "x" if self._fresh % 2 else "y"

    def closed_op(self, depth: int = 2) -> Term:
        """A closed operator term."""
        names = [n for n, a in self.cfg.ops.items() if a == 0 or depth > 0]
        name = self.rng.choice(names)
        n = self.cfg.ops[name]
        return Op(name, tuple(self.closed_op(depth - 1) for _ in range(n)))

    def closed_ops(self, depth: int = 2) -> list:
        """Every closed operator term up to ``depth`` nested applications."""
        out = [Op(n, ()) for n, a in self.cfg.ops.items() if a == 0]
        for _ in range(depth):
            layer = list(out)
            for n, a in self.cfg.ops.items():
                if a == 1:
                    layer += [Op(n, (t,)) for t in out]
            out = list(dict.fromkeys(layer))
        return out

    # -- terms and formulas --------------------------------------------------

    def term(self, depth: int | None = None, bound=()) -> Term:
        """A term for a signature or an entailment left side."""
        depth = self.cfg.depth if depth is None else depth
        r = self.rng.random()
        if bound and r < 0.3:
            v = Var(self.rng.choice(bound))
            if self.rng.random() < 0.3 and any(a == 1 for a in self.cfg.ops.values()):
                name = self.rng.choice([n for n, a in self.cfg.ops.items() if a == 1])
                return Op(name, (v,))
            return v
        if r < 0.6 or depth <= 0:
            return self.closed_op(1)
        return self.formula(depth - 1, bound)

    def formula(self, depth: int | None = None, bound=()) -> Formula:
        depth = self.cfg.depth if depth is None else depth
        rng = self.rng
        if depth <= 0:
            if rng.random() < 0.75:
                return Atom(rng.choice(self.cfg.atoms))
            return Signs(self.agent(), self.term(0, bound))
        kinds = ["atom", "not", "and", "and", "sign", "entails", "says", "says"]
        if self.cfg.allow_groups:
            kinds += ["saysk", "mutual"]
        if self.cfg.allow_this:
            kinds += ["this"]
        kind = rng.choice(kinds)
        d = depth - 1
        match kind:
            case "atom":
                return Atom(rng.choice(self.cfg.atoms))
            case "not":
                return Not(self.formula(d, bound))
            case "and":
                return And(self.formula(d, bound), self.formula(d, bound))
            case "sign":
                return Signs(self.agent(), self.term(d, bound))
            case "entails":
                # closed left side: a bound variable here would make the binder ungrounded
                return Entails(self.term(d, ()), self.formula(d, bound))
            case "says":
                return Says(self.agent(), self.formula(d, bound))
            case "saysk":
                return SaysK(self.group(), rng.randint(1, 3), self.formula(d, bound))
            case "mutual":
                return Mutual(self.group(), self.formula(d, bound))
            case "this":
                return self.this(d, bound)
        raise AssertionError(kind)

    def this(self, depth: int | None = None, bound=()) -> This:
        """A grounded binder that mentions its variable in a signature."""
        depth = self.cfg.depth if depth is None else depth
        x = self._var()
        inner = tuple(dict.fromkeys(bound + (x,)))
        body = self.formula(max(depth, 0), inner)
        sig = Signs(self.agent(), Var(x))
        return This(x, Imp(sig, body) if self.rng.random() < 0.7 else And(sig, body))

    def sentence(self, depth: int | None = None) -> Formula:
        return self.formula(depth)

    def nested_this(self, levels: int) -> Formula:
        """A sentence whose this-depth is exactly ``levels``."""
        f = self.formula(1, ())
        for _ in range(levels):
            x = self._var()
            f = This(x, Imp(And(Signs(self.agent(), Var(x)), f), Atom(self.rng.choice(self.cfg.atoms))))
        return f

    def any_term(self, depth: int = 3) -> Term:
        """Terms of every shape, open ones included, for printer round trips."""
        rng = self.rng
        r = rng.random()
        if r < 0.1:
            return Var(rng.choice(("x", "y", "z1")))
        if r < 0.15:
            return Agent(self.agent())
        if r < 0.3:
            return self.closed_op(2)
        return self.formula(depth, ("x", "y"))

    # -- axiom instances -----------------------------------------------------

    _TAUTOLOGIES = (
        lambda a, b, c: Imp(a, a),
        lambda a, b, c: Imp(a, Imp(b, a)),
        lambda a, b, c: Imp(Imp(a, Imp(b, c)), Imp(Imp(a, b), Imp(a, c))),
        lambda a, b, c: Imp(Imp(Not(b), Not(a)), Imp(a, b)),
        lambda a, b, c: Imp(And(a, b), b),
        lambda a, b, c: Imp(a, Imp(b, And(a, b))),
        lambda a, b, c: Iff(Not(Not(a)), a),
        lambda a, b, c: Or(a, Not(a)),
        lambda a, b, c: Imp(Imp(a, b), Imp(Imp(b, c), Imp(a, c))),
        lambda a, b, c: Imp(Imp(Imp(a, b), a), a),
        lambda a, b, c: Imp(And(a, Imp(a, b)), b),
        lambda a, b, c: Iff(Not(And(a, b)), Or(Not(a), Not(b))),
    )

    def instance(self, schema: int, depth: int = 1) -> Formula:
        """A random instance of axiom schema ``schema``."""
        f = lambda: self.formula(depth)      # noqa: E731
        a = self.agent
        match schema:
            case 1:
                return self.rng.choice(self._TAUTOLOGIES)(f(), f(), f())
            case 2:
                g = f()
                return Entails(g, g)
            case 3:
                t, x, y = self.term(depth), f(), f()
                return Imp(And(Entails(t, x), Entails(t, Imp(x, y))), Entails(t, y))
            case 4:
                t, x, ag = self.term(depth), f(), a()
                return Imp(And(Signs(ag, t), Entails(t, x)), Says(ag, x))
            case 5:
                x, y, ag = f(), f(), a()
                return Imp(And(Says(ag, x), Says(ag, Imp(x, y))), Says(ag, y))
            case 6:
                s = Signs(a(), self.term(depth))
                return Imp(s, Says(a(), s))
            case 7:
                e = Entails(self.term(depth), f())
                return Imp(e, Says(a(), e))
            case 8:
                c = self.this(depth)
                return Iff(c, unfold(c))
            case 9:
                m = Mutual(self.group(), f())
                return Iff(m, group_says(m.group, And(m.body, m)))
        raise ValueError(f"no schema ax{schema}")

    # -- models --------------------------------------------------------------

    def model(self, max_worlds: int = 4, max_agents: int = 3, mode: str = "fixedpoint",
              edge_p: float = 0.4, signed: int = 3) -> Model:
        """A random model satisfying SC1-SC3."""
        rng = self.rng
        n = rng.randint(1, max_worlds)
        worlds = tuple(f"w{i}" for i in range(n))
        agents = self.cfg.agents[:rng.randint(1, min(max_agents, len(self.cfg.agents)))]
        valuation = {w: frozenset(p for p in self.cfg.atoms if rng.random() < 0.5) for w in worlds}
        says = {(w, a, v) for w in worlds for a in agents for v in worlds if rng.random() < edge_p}
        succ = {}
        for w, a, v in says:
            succ.setdefault(w, set()).add(v)
        ops_terms = self.closed_ops(1)
        base = {(t, w) for t in ops_terms for w in worlds if rng.random() < 0.5}

        def reach(w):
            seen, todo = {w}, [w]
            while todo:
                for v in succ.get(todo.pop(), ()):
                    if v not in seen:
                        seen.add(v)
                        todo.append(v)
            return seen

        def build(signs, ent):
            return Model(worlds, agents, self.cfg.atoms, dict(self.cfg.ops), valuation,
                         frozenset(says), frozenset(signs), frozenset(ent), mode)

        local = Gen(rng, replace(self.cfg, agents=agents))
        signs = set()
        for _ in range(rng.randint(0, signed)):
            b = rng.choice(agents)
            spread = reach(rng.choice(worlds))
            if mode == "explicit" or rng.random() < 0.5:
                t = rng.choice(ops_terms)
                trial = signs | {(v, b, t) for v in spread}
                grown = base | {(t, u) for (w, a, u) in says if w in spread and a == b}
            else:
                t = local.formula(1)
                trial, grown = signs | {(v, b, t) for v in spread}, base
            # a new signature or entailment can falsify an earlier signed formula
            if validate_model(build(trial, grown)).ok:
                signs, base = trial, grown
        return build(signs, base)
