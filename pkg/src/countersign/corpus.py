"""Built-in scenarios: shipped models, ledgers and proofs with the outcomes
each one is expected to produce."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable

from . import derivations as D
from .hilbert import check_proof
from .kripke import validate_model
from .sat import eval_mutual, eval_says_k, evaluate
from .saturate import meeting_of_minds, replay, saturate
from .surface import parse_formula, parse_ledger, parse_model, parse_proof
from .syntax import And, Entails, Imp, Mutual, Says, Signs, conj, group_says, unfold


class UnknownScenario(KeyError):
    pass


# -- artifacts ---------------------------------------------------------------

def data_path(name: str):
    return resources.files("countersign") / "data" / name


def read_artifact(name: str) -> str:
    p = data_path(name)
    if not p.is_file():
        raise FileNotFoundError(f"no shipped artifact {name}")
    return p.read_text(encoding="utf-8")


def artifact_names() -> list:
    return sorted(p.name for p in (resources.files("countersign") / "data").iterdir()
                  if p.name.rsplit(".", 1)[-1] in ("model", "ledger", "proof"))


@lru_cache(maxsize=None)
def load_model(name: str):
    return parse_model(read_artifact(name))


@lru_cache(maxsize=None)
def load_ledger(name: str):
    return parse_ledger(read_artifact(name))


@lru_cache(maxsize=None)
def load_proof(name: str):
    return parse_proof(read_artifact(name))


# -- expectations and reports ------------------------------------------------

@dataclass(frozen=True)
class Expectation:
    key: str                 # token-safe identifier, unique within a scenario
    description: str
    expected: object
    run: Callable[[], object] = field(compare=False)


@dataclass(frozen=True)
class Outcome:
    key: str
    description: str
    expected: object
    actual: object
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.actual == self.expected


def _show(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


@dataclass
class ScenarioReport:
    name: str
    topics: tuple
    outcomes: list

    @property
    def ok(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def text(self) -> str:
        lines = [f"scenario {self.name}: {'pass' if self.ok else 'FAIL'}"]
        for o in self.outcomes:
            mark = "pass" if o.passed else "FAIL"
            line = f"  {mark}  {o.description}"
            if not o.passed:
                line += f" (expected {_show(o.expected)}, got " + \
                    (f"error: {o.error})" if o.error else f"{_show(o.actual)})")
            lines.append(line)
        return "\n".join(lines)

    def sexpr(self) -> str:
        items = []
        for o in self.outcomes:
            actual = "error" if o.error else _show(o.actual)
            items.append(f"\n  (item {o.key} (expected {_show(o.expected)}) (actual {actual}) "
                         f"{'pass' if o.passed else 'fail'})")
        return f"(scenario {self.name} {'pass' if self.ok else 'fail'}{''.join(items)})"


@dataclass(frozen=True)
class Scenario:
    name: str
    summary: str
    topics: tuple            # which derivations the scenario covers
    artifacts: tuple
    expectations: Callable[[], list] = field(compare=False)


# -- reusable expectation builders ------------------------------------------

def _proof_accepts(name: str, goal=None) -> list:
    def verdict():
        return "accept" if check_proof(load_proof(name)).accepted else "reject"

    out = [Expectation(f"proof:{name}", f"{name} is accepted", "accept", verdict)]
    if goal is not None:
        out.append(Expectation(f"goal:{name}", f"{name} proves the stated goal", True,
                               lambda: load_proof(name).goal == goal))
    return out


def _meeting(ledger: str, parties, goal, expected=True) -> list:
    def run():
        return meeting_of_minds(load_ledger(ledger), parties, goal, bound=6).ok

    def chains_replay():
        rep = meeting_of_minds(load_ledger(ledger), parties, goal, bound=6)
        return all(check_proof(replay(f)).accepted for f in rep.facts.values())

    label = "meeting of the minds" if expected else "no meeting of the minds"
    out = [Expectation(f"meeting:{ledger}", f"{label} for {ledger}", expected, run)]
    if expected:
        out.append(Expectation(f"replay:{ledger}", f"derivation chains from {ledger} replay",
                               True, chains_replay))
    return out


def _valid_model(name: str) -> Expectation:
    return Expectation(f"constraints:{name}", f"{name} satisfies SC1-SC3", True,
                       lambda: validate_model(load_model(name)).ok)


def _eval(model: str, world: str, text: str, expected: bool) -> Expectation:
    def run():
        m = load_model(model)
        return evaluate(m, world, parse_formula(text, m.signature()))

    token = "_".join(text.replace("(", " ").replace(")", " ").split())
    return Expectation(f"eval:{model}:{world}:{token}",
                       f"{model}, {world} |= {text}", expected, run)


P = D.P
PSI = D.SHARES


def _offer_acceptance():
    return (
        _proof_accepts("offer-acceptance.proof", parse_formula(
            "(imp (and (sign A (imp (sign B p) p)) (sign B p)) (and (says A p) (says B p)))"))
        + _proof_accepts("offer-acceptance-weak.proof", parse_formula(
            "(imp (and (sign A (imp (says B p) p)) (sign B p)) (and (says A p) (says B p)))"))
        + _meeting("offer-acceptance.ledger", "AB", P)
        + _meeting("offer-acceptance-weak.ledger", "AB", P)
    )


def _chain_goal(n):
    sig = D.chain_signatures(n)
    return Imp(conj(sig), conj([Says(s.agent, P) for s in sig]))


def _nparty_chain():
    return (
        _proof_accepts("chain3.proof", _chain_goal(3))
        + _proof_accepts("chain4.proof", _chain_goal(4))
        + _meeting("chain3.ledger", "ABC", P)
        + _meeting("chain4.ledger", "ABCD", P)
    )


def _naive_counterparts():
    out = [_valid_model("example1.model")]
    for w in ("w0", "w1"):
        out += [
            _eval("example1.model", w, "(sign A (imp (says B p) p))", True),
            _eval("example1.model", w, "(sign B (imp (says A p) p))", True),
            _eval("example1.model", w, "(says A p)", False),
            _eval("example1.model", w, "(says B p)", False),
        ]

    def derived(agent):
        return lambda: saturate(load_ledger("naive-counterparts.ledger"), 6).holds(agent, P)

    out += [
        Expectation("saturate:naive:A", "saturation never derives (says A p)", False, derived("A")),
        Expectation("saturate:naive:B", "saturation never derives (says B p)", False, derived("B")),
    ]
    return out + _meeting("naive-counterparts.ledger", "AB", P, expected=False)


def _counterparts_abstract():
    goal = Imp(conj([parse_formula(
        "(entails (op contract_sic A B p) "
        "(imp (and (sign A (op contract_sic A B p)) (sign B (op contract_sic A B p))) p))"),
        parse_formula("(sign A (op contract_sic A B p))"),
        parse_formula("(sign B (op contract_sic A B p))")]),
        And(Says("A", P), Says("B", P)))
    return (_proof_accepts("counterparts-abstract.proof", goal)
            + _meeting("counterparts-abstract.ledger", "AB", P))


CONTRACT = "(this ?x (imp (and (sign A ?x) (sign B ?x)) p))"


def _counterparts_self_ref():
    c = parse_formula(CONTRACT)
    unfolding = parse_formula(f"(imp (and (sign A {CONTRACT}) (sign B {CONTRACT})) p)")
    both = parse_formula(f"(and (sign A {CONTRACT}) (sign B {CONTRACT}))")
    return (
        _proof_accepts("self-ref-entailment.proof", Entails(c, unfolding))
        + _proof_accepts("counterparts-self-ref.proof", Imp(both, And(Says("A", P), Says("B", P))))
        + [_valid_model("selfref.model"),
           _eval("selfref.model", "u", CONTRACT, True),
           _eval("selfref.model", "u", "(says A p)", True),
           _eval("selfref.model", "u", "(says B p)", True)]
        + _meeting("counterparts-self-ref.ledger", "AB", P)
    )


def _counterparts_nparty():
    m = D.counterpart_contract("ABC")
    goal = Imp(conj([Signs(a, m) for a in "ABC"]), conj([Says(a, P) for a in "ABC"]))
    return (_proof_accepts("nparty3.proof", goal)
            + _meeting("nparty3.ledger", "ABC", P)
            + _meeting("nparty4.ledger", "ABCD", P))


def _common_assent():
    c = D.counterpart_contract(D.GROUP)
    sigma = And(Signs("A", c), Signs("B", c))
    parties = Mutual(D.GROUP, P)
    mutual_goal = conj([Imp(sigma, parties),
                        Imp(sigma, Mutual(D.SOCIETY, parties)),
                        Mutual(D.SOCIETY, Entails(c, unfold(c)))])
    out = (_proof_accepts("mutual-assent.proof", mutual_goal)
           + _proof_accepts("says2.proof", Imp(sigma, D.nested_group_says(2)))
           + _proof_accepts("says3.proof", Imp(sigma, D.nested_group_says(3)))
           + [_valid_model("society.model")])

    def mutual(model, world, group, f):
        return lambda: eval_mutual(load_model(model), world, group, f)

    def says_k(model, world, group, k, f):
        return lambda: eval_says_k(load_model(model), world, group, k, f)

    out += [
        Expectation("mutual:society:u0:parties", "society.model, u0: {A,B} mutually assent to p",
                    True, mutual("society.model", "u0", D.GROUP, P)),
        Expectation("mutual:society:u0:society",
                    "society.model, u0: {A,B,H} mutually assent to the parties' mutual assent",
                    True, mutual("society.model", "u0", D.SOCIETY, parties)),
        Expectation("mutual:society:u1:society",
                    "society.model, u1: {A,B,H} mutually assent to the parties' mutual assent",
                    True, mutual("society.model", "u1", D.SOCIETY, parties)),
        Expectation("mutual:example1:w0", "example1.model, w0: no mutual assent to p", False,
                    mutual("example1.model", "w0", D.GROUP, P)),
        Expectation("mutual:selfref:u", "selfref.model, u: {A,B} mutually assent to p", True,
                    mutual("selfref.model", "u", D.GROUP, P)),
    ]
    for k in (1, 2, 3):
        out.append(Expectation(f"saysk:society:u0:{k}",
                               f"society.model, u0: {{A,B}} says^{k} p", True,
                               says_k("society.model", "u0", D.GROUP, k, P)))

    def unfolds(model, world):
        def run():
            m = load_model(model)
            return eval_mutual(m, world, D.GROUP, P) == evaluate(
                m, world, group_says(D.GROUP, And(P, parties)))
        return run

    for model, world in (("society.model", "u0"), ("society.model", "u1"),
                         ("example1.model", "w0"), ("example1.model", "w1")):
        out.append(Expectation(f"fixpoint:{model}:{world}",
                               f"{model}, {world}: mutual assent equals its one-step unfolding",
                               True, unfolds(model, world)))
    return out


def _smart_contract():
    goal = Imp(conj([Signs("A", D.CREATE), Signs("A", PSI), Signs("B", D.CALL),
                     Entails(D.CALL, D.creator_principle())]),
               And(Says("A", PSI), Says("B", PSI)))
    return (_proof_accepts("smart-contract.proof", goal)
            + _meeting("smart-contract.ledger", "AB", PSI))


SCENARIOS = {s.name: s for s in (
    Scenario("offer-acceptance",
             "Conditional offer and signed acceptance, in the strong and weak forms.",
             ("offer-acceptance",),
             ("offer-acceptance.proof", "offer-acceptance-weak.proof",
              "offer-acceptance.ledger", "offer-acceptance-weak.ledger"),
             _offer_acceptance),
    Scenario("nparty-chain",
             "Chained conditional signatures for three and four parties.",
             ("signature-chain",),
             ("chain3.proof", "chain4.proof", "chain3.ledger", "chain4.ledger"),
             _nparty_chain),
    Scenario("naive-counterparts",
             "Copies conditional on the other's assent: a two-world countermodel.",
             ("countermodel",),
             ("example1.model", "naive-counterparts.ledger"),
             _naive_counterparts),
    Scenario("counterparts-abstract",
             "Counterpart signatures with the contract's meaning assumed by convention.",
             ("counterparts-by-convention",),
             ("counterparts-abstract.proof", "counterparts-abstract.ledger"),
             _counterparts_abstract),
    Scenario("counterparts-self-ref",
             "A self-referential contract that entails its own signing condition.",
             ("self-reference", "counterparts-self-ref"),
             ("self-ref-entailment.proof", "counterparts-self-ref.proof", "selfref.model",
              "counterparts-self-ref.ledger"),
             _counterparts_self_ref),
    Scenario("counterparts-nparty",
             "The self-referential contract for more than two parties.",
             ("counterparts-nparty",),
             ("nparty3.proof", "nparty3.ledger", "nparty4.ledger"),
             _counterparts_nparty),
    Scenario("common-assent",
             "Mutual assent of the parties and of a wider group, in proofs and models.",
             ("mutual-assent",),
             ("mutual-assent.proof", "says2.proof", "says3.proof", "society.model",
              "selfref.model", "example1.model"),
             _common_assent),
    Scenario("smart-contract",
             "Creator and caller of a smart contract agree on the creator's interpretation.",
             ("smart-contract",),
             ("smart-contract.proof", "smart-contract.ledger"),
             _smart_contract),
)}


def list_scenarios() -> list:
    return list(SCENARIOS.values())


def run_scenario(name: str) -> ScenarioReport:
    try:
        sc = SCENARIOS[name]
    except KeyError:
        raise UnknownScenario(name) from None
    outcomes = []
    for e in sc.expectations():
        try:
            outcomes.append(Outcome(e.key, e.description, e.expected, e.run()))
        except Exception as exc:       # a crashing check is a failed check
            outcomes.append(Outcome(e.key, e.description, e.expected, None,
                                    f"{type(exc).__name__}: {exc}"))
    return ScenarioReport(sc.name, sc.topics, outcomes)
