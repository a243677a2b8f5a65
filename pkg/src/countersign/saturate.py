"""Forward-chaining saturation of assent facts from a signature ledger.

Facts are formulas: ``(sign A t)`` for ledger signatures, ``(entails t f)``
for declared or derived entailments and ``(says A f)`` for assent. Each round
fires every rule against the facts known at the start of the round:

    ax4    (sign A t), (entails t f)            => (says A f)
    ax6    (sign B t)                           => (says X (sign B t))   every agent X
    ax7    declared (entails t f)               => (says X (entails t f))
    ax5    (says A a), (says A (imp a b))       => (says A b)
    split  (says A (and a b))                   => (says A a), (says A b)
    join   (says A a_i) for the conjunct leaves of an implication antecedent
                                                => (says A (and a_1 ...))
    lift   (says A (sign B t)), (entails t f)   => (says A (says B f))

and, before the first round, ``(entails f f)`` for every signed formula and
``(entails c <unfolding of c>)`` for every signed ``this`` term. Every derived
fact remembers its premises, so it can be replayed as a kernel proof.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .hilbert import ProofBuilder, ProofScript
from .syntax import (
    And, Entails, Formula, Says, Signs, This, as_imp, imp_chain,
    is_sentence, unfold, Imp,
)


@dataclass(frozen=True)
class Ledger:
    agents: tuple = ()
    signs: tuple = ()        # (agent, term)
    entails: tuple = ()      # (term, formula)
    ops: dict = field(default_factory=dict)

    __hash__ = None

    def __post_init__(self):
        for a, t in self.signs:
            if not is_sentence(t):
                raise ValueError(f"signed term of {a} has free variables")
        for t, f in self.entails:
            if not (is_sentence(t) and is_sentence(f) and isinstance(f, Formula)):
                raise ValueError("declared entailments relate closed terms to sentences")

    @property
    def all_agents(self) -> tuple:
        """Declared agents plus anyone who signed."""
        return tuple(sorted(set(self.agents) | {a for a, _ in self.signs}))

    def hypotheses(self) -> list:
        return [Signs(a, t) for a, t in self.signs] + [Entails(t, f) for t, f in self.entails]

    def merge(self, other: "Ledger") -> "Ledger":
        def union(xs, ys):
            return tuple(xs) + tuple(y for y in ys if y not in xs)

        return Ledger(union(self.agents, other.agents), union(self.signs, other.signs),
                      union(self.entails, other.entails), {**self.ops, **other.ops})


@dataclass(frozen=True)
class ChainStep:
    rule: str
    fact: Formula
    premises: tuple = ()     # positions of earlier steps in the same chain


@dataclass(frozen=True)
class AssentFact:
    agent: str
    formula: Formula
    chain: tuple             # ChainSteps in dependency order, ending with this fact
    ops: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def fact(self) -> Says:
        return Says(self.agent, self.formula)

    def sexpr(self) -> str:
        from .surface import print_term

        steps = []
        for s in self.chain:
            refs = "".join(f" {i + 1}" for i in s.premises)
            steps.append(f"({s.rule} {print_term(s.fact)}{refs})")
        return f"({self.agent} {print_term(self.formula)} (chain {' '.join(steps)}))"


@dataclass
class Saturation:
    assents: list            # AssentFact, sorted by agent then printed formula
    rounds: int
    bound_exceeded: bool

    def holds(self, agent: str, f: Formula) -> bool:
        return any(a.agent == agent and a.formula == f for a in self.assents)

    def get(self, agent: str, f: Formula) -> AssentFact | None:
        for a in self.assents:
            if a.agent == agent and a.formula == f:
                return a
        return None

    def sexpr(self) -> str:
        return "(assents" + "".join("\n  " + a.sexpr() for a in self.assents) + ")"


def _leaves(f):
    if type(f) is And:
        return _leaves(f.left) + _leaves(f.right)
    return [f]


def saturate(ledger: Ledger, bound: int = 6, chain_cap: int = 64) -> Saturation:
    if bound < 1:
        raise ValueError("bound must be at least 1")
    agents = ledger.all_agents
    steps = {}       # fact -> (rule, premise facts); insertion order is dependency order
    ancestry = {}    # fact -> frozenset of facts it rests on (itself included)
    ent = {}         # term -> list of formulas it entails

    def add(fact, rule, prem, into):
        if fact in steps or fact in into:
            return
        anc = frozenset().union(*(ancestry[p] for p in prem)) | {fact}
        if len(anc) > chain_cap:
            return
        into[fact] = (rule, tuple(prem))
        ancestry[fact] = anc

    def commit(batch):
        for fact, v in batch.items():
            steps[fact] = v
            if type(fact) is Entails:
                ent.setdefault(fact.term, []).append(fact.body)

    base = {}
    for a, t in ledger.signs:
        add(Signs(a, t), "sign", (), base)
    for t, f in ledger.entails:
        add(Entails(t, f), "declared", (), base)
    for _, t in ledger.signs:
        if isinstance(t, Formula):
            add(Entails(t, t), "ax2", (), base)
        if type(t) is This:
            add(Entails(t, unfold(t)), "ax8", (), base)
    commit(base)

    says = {a: set() for a in agents}
    rounds, exceeded = 0, False
    for r in range(1, bound + 1):
        new = {}
        for fact, (rule, _) in list(steps.items()):
            match fact:
                case Signs(a, t):
                    for f in ent.get(t, ()):
                        add(Says(a, f), "ax4", (fact, Entails(t, f)), new)
                    for x in agents:
                        add(Says(x, fact), "ax6", (fact,), new)
                case Entails() if rule == "declared":
                    for x in agents:
                        add(Says(x, fact), "ax7", (fact,), new)
                case Says(a, f):
                    known = says.setdefault(a, set())
                    if type(f) is And:
                        add(Says(a, f.left), "split", (fact,), new)
                        add(Says(a, f.right), "split", (fact,), new)
                    ab = as_imp(f)
                    if ab is not None:
                        alpha, beta = ab
                        if alpha in known:
                            add(Says(a, beta), "ax5", (Says(a, alpha), fact), new)
                        elif type(alpha) is And:
                            leaves = _leaves(alpha)
                            if all(x in known for x in leaves):
                                add(Says(a, alpha), "join", tuple(Says(a, x) for x in leaves), new)
                    if type(f) is Signs:
                        for g in ent.get(f.term, ()):
                            add(Says(a, Says(f.agent, g)), "lift",
                                (fact, Entails(f.term, g)), new)
        if not new:
            break
        rounds = r
        commit(new)
        for fact in new:
            if type(fact) is Says:
                says.setdefault(fact.agent, set()).add(fact.body)
        if r == bound:
            exceeded = True

    out = [_assent(fact, steps, ledger.ops) for fact in steps if type(fact) is Says]
    from .surface import print_term

    out.sort(key=lambda a: (a.agent, print_term(a.formula)))
    return Saturation(out, rounds, exceeded)


def _assent(fact, steps, ops) -> AssentFact:
    order = []
    pos = {}

    def visit(f):
        if f in pos:
            return
        for p in steps[f][1]:
            visit(p)
        pos[f] = len(order)
        order.append(f)

    visit(fact)
    chain = tuple(ChainStep(steps[f][0], f, tuple(pos[p] for p in steps[f][1])) for f in order)
    return AssentFact(fact.agent, fact.body, chain, dict(ops))


# -- replay ------------------------------------------------------------------

def replay(fact: AssentFact, max_letters: int = 20) -> ProofScript:
    """A kernel proof of ``(says A f)`` whose hypotheses are the ledger facts
    the chain rests on."""
    b = ProofBuilder(fact.ops, max_letters)
    lines = []
    for step in fact.chain:
        prem = [lines[i] for i in step.premises]
        lines.append(_replay_step(b, step, prem))
    return b.script(fact.fact)


def _replay_step(b: ProofBuilder, step: ChainStep, prem: list) -> int:
    f = step.fact
    match step.rule:
        case "sign" | "declared":
            return b.hyp(f)
        case "ax2":
            return b.axiom(2, f)
        case "ax8":
            return entails_unfolding(b, f.term)
        case "ax4":
            s, e = prem
            ax = b.axiom(4, Imp(And(b.formula(s), b.formula(e)), f))
            return b.consequence(f, [s, e, ax])
        case "ax6" | "ax7":
            (p,) = prem
            return b.mp(p, b.axiom(int(step.rule[2]), Imp(b.formula(p), f)))
        case "ax5":
            return b.ax5_step(f.agent, *prem)
        case "split" | "join":
            return b.says_derive(f.agent, prem, f.body)
        case "lift":
            ss, e = prem
            return lift_says(b, f.agent, ss, e)
    raise ValueError(f"unknown rule {step.rule}")


def entails_unfolding(b: ProofBuilder, c: This) -> int:
    """Pure derivation of ``(entails c <unfolding of c>)``."""
    u = unfold(c)
    ax8 = b.axiom(8, And(Imp(c, u), Imp(u, c)))
    forward = b.consequence(Imp(c, u), [ax8])
    nec = b.nec_entails(forward, c)
    refl = b.axiom(2, Entails(c, c))
    ax3 = b.axiom(3, Imp(And(Entails(c, c), Entails(c, Imp(c, u))), Entails(c, u)))
    return b.consequence(Entails(c, u), [refl, nec, ax3])


def lift_says(b: ProofBuilder, agent: str, signed: int, ent: int) -> int:
    """From ``(says A (sign B t))`` and ``(entails t f)`` derive ``(says A (says B f))``."""
    sb = b.formula(signed).body
    e = b.formula(ent)
    if b.is_pure(ent):
        said_ent = b.nec_says(ent, agent)
    else:
        said_ent = b.mp(ent, b.axiom(7, Imp(e, Says(agent, e))))
    target = Says(sb.agent, e.body)
    ax4 = b.axiom(4, Imp(And(sb, e), target))
    theorem = b.consequence(imp_chain([sb, e], target), [ax4])
    return b.says_mp(agent, [signed, said_ent], theorem)


# -- meeting of the minds ----------------------------------------------------

@dataclass
class MeetingReport:
    ok: bool
    goal: Formula
    parties: tuple
    missing: tuple
    facts: dict              # party -> AssentFact
    bound_exceeded: bool

    def sexpr(self) -> str:
        from .surface import print_term

        out = [f"(meeting-of-minds {'true' if self.ok else 'false'}",
               f"  (goal {print_term(self.goal)})",
               "  (missing" + "".join(" " + a for a in self.missing) + ")"]
        if self.ok:
            out.append("  (assents" + "".join(
                "\n    " + self.facts[a].sexpr() for a in self.parties) + ")")
        return "\n".join(out) + ")"

    def text(self) -> str:
        from .surface import print_term

        if self.ok:
            return (f"meeting of the minds on {print_term(self.goal)}: "
                    f"{', '.join(self.parties)} all assent")
        return (f"no meeting of the minds on {print_term(self.goal)}: "
                f"missing {', '.join(self.missing)}")


def meeting_of_minds(ledger: Ledger, parties, goal: Formula, bound: int = 6,
                     chain_cap: int = 64) -> MeetingReport:
    parties = tuple(sorted(set(parties)))
    sat = saturate(ledger, bound, chain_cap)
    facts = {a: sat.get(a, goal) for a in parties}
    missing = tuple(a for a in parties if facts[a] is None)
    return MeetingReport(not missing, goal, parties, missing,
                         {a: f for a, f in facts.items() if f is not None}, sat.bound_exceeded)
