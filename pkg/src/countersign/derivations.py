"""Proof recipes for the shipped corpus.

Each function builds a kernel proof by reasoning from signed facts as
hypotheses and then discharging them, so the result is a pure proof of
``(imp <facts> <conclusion>)``. ``scripts/build_corpus.py`` writes these to
the data directory; a test regenerates them and compares.
"""
from __future__ import annotations

from .hilbert import ProofBuilder, ProofScript, discharge
from .saturate import entails_unfolding, lift_says
from .syntax import (
    Agent, And, Atom, Entails, Formula, Imp, Mutual, Op, Says, Signs, This, Var, conj,
    group_says,
)

P = Atom("p")
PARTIES = ("A", "B", "C", "D")


# -- reusable steps ----------------------------------------------------------

def assent_from_entailment(b: ProofBuilder, sign: int, ent: int) -> int:
    """``(sign A t)`` and ``(entails t f)`` give ``(says A f)`` by ax4."""
    s, e = b.formula(sign), b.formula(ent)
    target = Says(s.agent, e.body)
    ax = b.axiom(4, Imp(And(s, e), target))
    return b.consequence(target, [sign, ent, ax])


def assent_to_signed(b: ProofBuilder, sign: int) -> int:
    """A signed formula is assented to by its signer (ax2 then ax4)."""
    f = b.formula(sign).term
    return assent_from_entailment(b, sign, b.axiom(2, Entails(f, f)))


def seen_by(b: ProofBuilder, sign: int, agent: str) -> int:
    """``(sign B t)`` gives ``(says agent (sign B t))`` by ax6."""
    s = b.formula(sign)
    return b.mp(sign, b.axiom(6, Imp(s, Says(agent, s))))


def says_all(b: ProofBuilder, agent: str, lines: list) -> int:
    """Join ``(says agent x_i)`` lines into ``(says agent (and x_1 ...))``."""
    if len(lines) == 1:
        return lines[0]
    return b.says_derive(agent, lines, conj([b.formula(i).body for i in lines]))


def counterpart_contract(parties, phi: Formula = P, var: str = "x") -> This:
    """``this x. ((and (sign A_i x) ...) -> phi)``."""
    return This(var, Imp(conj([Signs(a, Var(var)) for a in parties]), phi))


def _assent_via_counterpart(b, signs, ent, agent):
    """From the parties' signatures on ``c`` and ``c |= (sigs -> phi)``,
    derive ``(says agent phi)`` for a party ``agent``."""
    mine = next(i for i in signs if b.formula(i).agent == agent)
    cond = assent_from_entailment(b, mine, ent)
    joint = says_all(b, agent, [seen_by(b, i, agent) for i in signs])
    return b.ax5_step(agent, joint, cond)


# -- offer and acceptance ----------------------------------------------------

def offer_acceptance(phi: Formula = P) -> ProofScript:
    """A signs (B signs phi -> phi), B signs phi: both assent to phi."""
    b = ProofBuilder()
    accept = Signs("B", phi)
    offer = b.hyp(Signs("A", Imp(accept, phi)))
    acc = b.hyp(accept)
    a_cond = assent_to_signed(b, offer)
    a = b.ax5_step("A", seen_by(b, acc, "A"), a_cond)
    b.conj([a, assent_to_signed(b, acc)])
    return discharge(b.script())


def offer_acceptance_weak(phi: Formula = P) -> ProofScript:
    """The offer conditioned on B's assent rather than B's signature."""
    b = ProofBuilder()
    offer = b.hyp(Signs("A", Imp(Says("B", phi), phi)))
    acc = b.hyp(Signs("B", phi))
    b_says = assent_to_signed(b, acc)
    a_sees = seen_by(b, acc, "A")
    a_thinks_b_says = lift_says(b, "A", a_sees, b.axiom(2, Entails(phi, phi)))
    a = b.ax5_step("A", a_thinks_b_says, assent_to_signed(b, offer))
    b.conj([a, b_says])
    return discharge(b.script())


def chain_signatures(n: int, phi: Formula = P) -> list:
    """sigma_n = A_n signs phi; sigma_k = A_k signs ((and sigma_k+1..n) -> phi)."""
    agents = PARTIES[:n]
    sig = [None] * n
    sig[-1] = Signs(agents[-1], phi)
    for k in range(n - 2, -1, -1):
        sig[k] = Signs(agents[k], Imp(conj(sig[k + 1:]), phi))
    return sig


def chain(n: int, phi: Formula = P) -> ProofScript:
    """The n-party chain of conditional signatures gives everyone's assent."""
    if not 2 <= n <= len(PARTIES):
        raise ValueError(f"chain needs 2..{len(PARTIES)} parties")
    b = ProofBuilder()
    sig = chain_signatures(n, phi)
    hyps = [b.hyp(s) for s in sig]
    says = []
    for k, s in enumerate(sig):
        agent = s.agent
        cond = assent_to_signed(b, hyps[k])
        if k == n - 1:
            says.append(cond)
            continue
        later = says_all(b, agent, [seen_by(b, h, agent) for h in hyps[k + 1:]])
        says.append(b.ax5_step(agent, later, cond))
    b.conj(says)
    return discharge(b.script())


# -- counterparts ------------------------------------------------------------

def contract_sic(phi: Formula = P) -> Op:
    return Op("contract_sic", (Agent("A"), Agent("B"), phi))


def counterparts_abstract(phi: Formula = P) -> ProofScript:
    """With ``c |= ((A signs c and B signs c) -> phi)`` assumed, signatures
    in counterparts give both parties' assent."""
    c = contract_sic(phi)
    b = ProofBuilder({"contract_sic": 3})
    ent = b.hyp(Entails(c, Imp(And(Signs("A", c), Signs("B", c)), phi)))
    signs = [b.hyp(Signs("A", c)), b.hyp(Signs("B", c))]
    b.conj([_assent_via_counterpart(b, signs, ent, a) for a in ("A", "B")])
    return discharge(b.script())


def self_ref_entailment(phi: Formula = P) -> ProofScript:
    """The self-referential contract entails its own unfolding, as a theorem."""
    b = ProofBuilder()
    entails_unfolding(b, counterpart_contract(("A", "B"), phi))
    return b.script()


def counterparts_nparty(n: int, phi: Formula = P) -> ProofScript:
    """Every party signs the same self-referential contract; all assent."""
    parties = PARTIES[:n]
    c = counterpart_contract(parties, phi)
    b = ProofBuilder()
    signs = [b.hyp(Signs(a, c)) for a in parties]
    ent = entails_unfolding(b, c)
    b.conj([_assent_via_counterpart(b, signs, ent, a) for a in parties])
    return discharge(b.script())


def counterparts_self_ref(phi: Formula = P) -> ProofScript:
    return counterparts_nparty(2, phi)


# -- common assent -----------------------------------------------------------

GROUP = ("A", "B")
SOCIETY = ("A", "B", "H")


def _both_signed(b, c):
    return [b.hyp(Signs("A", c)), b.hyp(Signs("B", c))]


def _group_says_sigma_and(b, signs, group, extra):
    """``G says (and sigma x)`` where ``extra(agent)`` is a line ``(says agent x)``."""
    sigma = And(b.formula(signs[0]), b.formula(signs[1]))
    per_agent = []
    for agent in group:
        seen = says_all(b, agent, [seen_by(b, i, agent) for i in signs])
        x = extra(agent)
        per_agent.append(b.says_derive(agent, [seen, x], And(sigma, b.formula(x).body)))
    return b.conj(per_agent)


def mutual_assent(phi: Formula = P) -> ProofScript:
    """Signatures in counterparts give mutual assent of the parties, mutual
    assent of a larger group to that, and mutual assent to the contract's
    meaning."""
    c = counterpart_contract(GROUP, phi)
    sigma = And(Signs("A", c), Signs("B", c))

    # sigma -> G says (and sigma phi), then induction
    b = ProofBuilder()
    signs = _both_signed(b, c)
    ent = entails_unfolding(b, c)
    _group_says_sigma_and(b, signs, GROUP, lambda a: _assent_via_counterpart(b, signs, ent, a))
    part1 = discharge(b.script())
    b = ProofBuilder()
    b.extend(part1)
    parties_mutual = b.ind_omega(len(b.lines), GROUP)

    # sigma -> H says (and sigma (mutual G phi)), then induction
    pure = b.script()
    b2 = ProofBuilder()
    remap = b2.extend(pure)
    pm = remap[parties_mutual]
    signs = _both_signed(b2, c)

    def mutual_for(agent):
        joint = says_all(b2, agent, [seen_by(b2, i, agent) for i in signs])
        return b2.says_mp(agent, [joint], pm)

    _group_says_sigma_and(b2, signs, SOCIETY, mutual_for)
    part2 = discharge(b2.script())
    b = ProofBuilder()
    b.extend(part2)
    society = b.ind_omega(len(b.lines), SOCIETY)

    # the contract's meaning is common ground by necessitation
    meaning = b.nec_omega(entails_unfolding(b, c), SOCIETY)
    pm_line = next(i for i, ln in enumerate(b.lines, 1)
                   if ln.formula == Imp(sigma, Mutual(GROUP, phi)))
    b.conj([pm_line, society, meaning])
    return b.script()


def says_k(k: int, phi: Formula = P) -> ProofScript:
    """``sigma -> G says (G says ... phi)`` with ``k`` nested group assents."""
    c = counterpart_contract(GROUP, phi)
    b = ProofBuilder()
    signs = _both_signed(b, c)
    ent = entails_unfolding(b, c)
    b.conj([_assent_via_counterpart(b, signs, ent, a) for a in GROUP])
    proof = discharge(b.script())
    for _ in range(k - 1):
        b = ProofBuilder()
        remap = b.extend(proof)
        prev = remap[proof.lines[-1].index]
        signs = _both_signed(b, c)
        per_agent = []
        for a in GROUP:
            joint = says_all(b, a, [seen_by(b, i, a) for i in signs])
            per_agent.append(b.says_mp(a, [joint], prev))
        b.conj(per_agent)
        proof = discharge(b.script())
    return proof


def nested_group_says(k: int, phi: Formula = P, group=GROUP) -> Formula:
    f = phi
    for _ in range(k):
        f = group_says(group, f)
    return f


# -- smart contracts ---------------------------------------------------------

ACME = Op("acme", ())
CREATE = Op("create", (ACME,))
CALL = Op("call", (ACME, Op("buy", ())))
SHARES = Imp(Atom("shares_b_20"), Atom("owns_b_20"))
SMART_OPS = {"acme": 0, "buy": 0, "create": 1, "call": 2}


def creator_principle(create: Op = CREATE, psi: Formula = SHARES, creator: str = "A") -> Formula:
    """(A signs create(c) and A signs psi(c)) -> psi(c)."""
    return Imp(And(Signs(creator, create), Signs(creator, psi)), psi)


def smart_contract() -> ProofScript:
    """Creator and caller of a smart contract both assent to the creator's
    signed interpretation when the call entails the creator principle."""
    b = ProofBuilder(SMART_OPS)
    created = b.hyp(Signs("A", CREATE))
    meant = b.hyp(Signs("A", SHARES))
    called = b.hyp(Signs("B", CALL))
    rule = b.hyp(Entails(CALL, creator_principle()))
    a = assent_to_signed(b, meant)
    principle = assent_from_entailment(b, called, rule)
    facts = says_all(b, "B", [seen_by(b, created, "B"), seen_by(b, meant, "B")])
    b.conj([a, b.ax5_step("B", facts, principle)])
    return discharge(b.script())


# -- the corpus --------------------------------------------------------------

RECIPES = {
    "offer-acceptance": offer_acceptance,
    "offer-acceptance-weak": offer_acceptance_weak,
    "chain3": lambda: chain(3),
    "chain4": lambda: chain(4),
    "counterparts-abstract": counterparts_abstract,
    "self-ref-entailment": self_ref_entailment,
    "counterparts-self-ref": counterparts_self_ref,
    "nparty3": lambda: counterparts_nparty(3),
    "mutual-assent": mutual_assent,
    "smart-contract": smart_contract,
    "says2": lambda: says_k(2),
    "says3": lambda: says_k(3),
}
