"""Hilbert-style proof kernel.

A proof is a list of numbered lines, each justified by a hypothesis, an axiom
schema, modus ponens or one of the necessitation/induction rules. Lines
derived without hypotheses are *pure*; the necessitation and induction rules
only accept pure premises, so a proof from hypotheses never smuggles a
hypothesis under a modality.

Schemas (``imp``/``iff`` are the usual abbreviations)::

    ax1  substitution instances of propositional tautologies
    ax2  (entails f f)
    ax3  (imp (and (entails t a) (entails t (imp a b))) (entails t b))
    ax4  (imp (and (sign A t) (entails t a)) (says A a))
    ax5  (imp (and (says A a) (says A (imp a b))) (says A b))
    ax6  (imp (sign B t) (says A (sign B t)))
    ax7  (imp (entails t a) (says A (entails t a)))
    ax8  (iff (this ?x a) a[?x := (this ?x a)])
    ax9  (iff (mutual G a) (G says (and a (mutual G a))))

where ``G says f`` is the right-nested conjunction of ``(says X f)`` over the
sorted group. Rules: ``mp i j`` (line j is ``(imp <line i> <this line>)``),
``nec-entails i t``, ``nec-says i A``, ``nec-omega i G`` and ``ind-omega i``
(from ``(imp a (G says (and a b)))`` infer ``(imp a (mutual G b))``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    And, CaptureError, Entails, Formula, Mutual, Not, Says, Signs, Term, This, as_group_says,
    as_iff, as_imp, conj, group_says, imp_chain, is_sentence, unfold, Imp,
)


class TooManyAtoms(ValueError):
    pass


# -- propositional instances -------------------------------------------------

def abstract_letters(f: Formula) -> dict:
    """Map each maximal non-boolean subformula to a letter index."""
    letters = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if type(g) is Not:
            stack.append(g.body)
        elif type(g) is And:
            stack.append(g.right)
            stack.append(g.left)
        elif g not in letters:
            letters[g] = len(letters)
    return letters


def is_tautology_instance(f: Formula, max_letters: int = 20) -> bool:
    """Truth-table check after abstracting modal subformulas to letters."""
    letters = abstract_letters(f)
    n = len(letters)
    if n > max_letters:
        raise TooManyAtoms(f"{n} propositional letters exceeds the cap of {max_letters}")
    rows = 1 << n
    full = (1 << rows) - 1
    # column i is true on rows whose bit i is set
    cols = {}
    for g, i in letters.items():
        half = 1 << i
        pattern = ((1 << half) - 1) << half     # one period: 2^i zeros then 2^i ones
        width = half << 1
        while width < rows:                     # double until it covers every row
            pattern |= pattern << width
            width <<= 1
        cols[g] = pattern

    memo = {}

    def value(g):
        if g in cols:
            return cols[g]
        if g in memo:
            return memo[g]
        if type(g) is Not:
            v = full ^ value(g.body)
        else:
            v = value(g.left) & value(g.right)
        memo[g] = v
        return v

    return value(f) == full


# -- axiom schemas -----------------------------------------------------------

def _ax2(f):
    return type(f) is Entails and f.term == f.body


def _ax3(f):
    ab = as_imp(f)
    if not ab or type(ab[0]) is not And:
        return False
    e1, e2, e3 = ab[0].left, ab[0].right, ab[1]
    if not (type(e1) is Entails and type(e2) is Entails and type(e3) is Entails):
        return False
    inner = as_imp(e2.body)
    return (e1.term == e2.term == e3.term and inner is not None
            and inner[0] == e1.body and inner[1] == e3.body)


def _ax4(f):
    ab = as_imp(f)
    if not ab or type(ab[0]) is not And:
        return False
    s, e, c = ab[0].left, ab[0].right, ab[1]
    return (type(s) is Signs and type(e) is Entails and type(c) is Says
            and s.term == e.term and s.agent == c.agent and e.body == c.body)


def _ax5(f):
    ab = as_imp(f)
    if not ab or type(ab[0]) is not And:
        return False
    s1, s2, c = ab[0].left, ab[0].right, ab[1]
    if not (type(s1) is Says and type(s2) is Says and type(c) is Says):
        return False
    inner = as_imp(s2.body)
    return (s1.agent == s2.agent == c.agent and inner is not None
            and inner[0] == s1.body and inner[1] == c.body)


def _ax6(f):
    ab = as_imp(f)
    return (ab is not None and type(ab[0]) is Signs and type(ab[1]) is Says
            and ab[1].body == ab[0])


def _ax7(f):
    ab = as_imp(f)
    return (ab is not None and type(ab[0]) is Entails and type(ab[1]) is Says
            and ab[1].body == ab[0])


def _ax8(f):
    ab = as_iff(f)
    if not ab or type(ab[0]) is not This:
        return False
    try:
        return unfold(ab[0]) == ab[1]
    except CaptureError:
        return False


def _ax9(f):
    ab = as_iff(f)
    if not ab or type(ab[0]) is not Mutual:
        return False
    m = ab[0]
    return ab[1] == group_says(m.group, And(m.body, m))


_SCHEMAS = {2: _ax2, 3: _ax3, 4: _ax4, 5: _ax5, 6: _ax6, 7: _ax7, 8: _ax8, 9: _ax9}


def match_axiom(schema: int, f: Formula, max_letters: int = 20) -> bool:
    """Is ``f`` an instance of axiom schema ``schema`` (1-9)?"""
    if not is_sentence(f):
        return False
    if schema == 1:
        return is_tautology_instance(f, max_letters)
    try:
        return _SCHEMAS[schema](f)
    except KeyError:
        raise ValueError(f"no axiom schema ax{schema}") from None


# -- proof scripts -----------------------------------------------------------

@dataclass(frozen=True)
class Hyp:
    pass


@dataclass(frozen=True)
class HypRef:
    pass


@dataclass(frozen=True)
class Axiom:
    schema: int


@dataclass(frozen=True)
class MP:
    minor: int      # the antecedent line
    major: int      # the implication line


@dataclass(frozen=True)
class NecEntails:
    premise: int
    term: Term


@dataclass(frozen=True)
class NecSays:
    premise: int
    agent: str


@dataclass(frozen=True)
class NecOmega:
    premise: int
    group: tuple


@dataclass(frozen=True)
class IndOmega:
    premise: int


@dataclass(frozen=True)
class Line:
    index: int
    formula: Formula
    just: object


@dataclass(frozen=True)
class ProofScript:
    goal: Formula
    lines: tuple
    ops: dict = field(default_factory=dict, compare=True)

    __hash__ = None

    @property
    def hypotheses(self) -> list:
        return [ln.formula for ln in self.lines if isinstance(ln.just, Hyp)]


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    line: int | None = None
    reason: str | None = None       # short code, e.g. purity-violation
    detail: str = ""

    def sexpr(self) -> str:
        if self.accepted:
            return "(verdict accept)"
        return f"(verdict reject {self.line} {self.reason})"

    def text(self) -> str:
        if self.accepted:
            return "accept"
        return f"reject at line {self.line}: {self.reason}" + \
            (f" ({self.detail})" if self.detail else "")


class _Reject(Exception):
    def __init__(self, reason, detail=""):
        self.reason, self.detail = reason, detail


def check_proof(script: ProofScript, max_letters: int = 20) -> Verdict:
    """Check every line in order; the first failure names its line."""
    if not script.lines:
        return Verdict(False, 0, "empty-proof", "a proof needs at least one line")
    formulas, pure = {}, {}
    hyps = set()
    for ln in script.lines:
        try:
            pure[ln.index] = _check_line(ln, formulas, pure, hyps, max_letters)
        except _Reject as r:
            return Verdict(False, ln.index, r.reason, r.detail)
        formulas[ln.index] = ln.formula
        if isinstance(ln.just, Hyp):
            hyps.add(ln.formula)
    last = script.lines[-1]
    if last.formula != script.goal:
        return Verdict(False, last.index, "goal-mismatch", "last line is not the goal")
    return Verdict(True)


def _premise(i, formulas, pure, need_pure=False):
    if i not in formulas:
        raise _Reject("bad-reference", f"line {i} is not an earlier line")
    if need_pure and not pure[i]:
        raise _Reject("purity-violation", f"line {i} depends on a hypothesis")
    return formulas[i]


def _check_line(ln: Line, formulas, pure, hyps, max_letters) -> bool:
    f, j = ln.formula, ln.just
    if not is_sentence(f):
        raise _Reject("open-formula", "proof lines must be sentences")
    match j:
        case Hyp():
            return False
        case HypRef():
            if f not in hyps:
                raise _Reject("hyp-missing", "no earlier hypothesis states this formula")
            return False
        case Axiom(n):
            try:
                ok = match_axiom(n, f, max_letters)
            except TooManyAtoms as e:
                raise _Reject("too-many-letters", str(e))
            except ValueError as e:
                raise _Reject("schema-mismatch", str(e))
            if not ok:
                raise _Reject("schema-mismatch", f"not an instance of ax{n}")
            return True
        case MP(i, k):
            a = _premise(i, formulas, pure)
            b = _premise(k, formulas, pure)
            if as_imp(b) != (a, f):
                raise _Reject("mp-mismatch", f"line {k} is not (imp <line {i}> <this line>)")
            return pure[i] and pure[k]
        case NecEntails(i, t):
            a = _premise(i, formulas, pure, need_pure=True)
            if f != Entails(t, a):
                raise _Reject("rule-mismatch", "nec-entails must conclude (entails t <premise>)")
            return True
        case NecSays(i, agent):
            a = _premise(i, formulas, pure, need_pure=True)
            if f != Says(agent, a):
                raise _Reject("rule-mismatch", "nec-says must conclude (says A <premise>)")
            return True
        case NecOmega(i, group):
            a = _premise(i, formulas, pure, need_pure=True)
            if f != Mutual(group, a):
                raise _Reject("rule-mismatch", "nec-omega must conclude (mutual G <premise>)")
            return True
        case IndOmega(i):
            a = _premise(i, formulas, pure, need_pure=True)
            concl = as_imp(f)
            if concl is None or type(concl[1]) is not Mutual:
                raise _Reject("rule-mismatch", "ind-omega concludes (imp a (mutual G b))")
            alpha, m = concl
            if a != Imp(alpha, group_says(m.group, And(alpha, m.body))):
                raise _Reject("rule-mismatch",
                              "ind-omega premise must be (imp a (G says (and a b)))")
            return True
    raise _Reject("bad-justification", f"unknown justification {j!r}")


# -- building proofs ---------------------------------------------------------

class ProofBuilder:
    """Accumulates checked proof lines; every method returns a line index.

    Lines are checked as they are added, so a recipe that goes wrong fails at
    the step that introduced the error.
    """

    def __init__(self, ops: dict | None = None, max_letters: int = 20):
        self.lines = []
        self.ops = dict(ops or {})
        self.max_letters = max_letters
        self._formulas = {}
        self._pure = {}
        self._hyps = set()
        self._by_formula = {}       # formula -> index of its best line

    def formula(self, i: int) -> Formula:
        return self._formulas[i]

    def is_pure(self, i: int) -> bool:
        return self._pure[i]

    def _add(self, f: Formula, just, reuse=True) -> int:
        if reuse and f in self._by_formula:
            prev = self._by_formula[f]
            if self._pure[prev] or isinstance(just, (Hyp, HypRef)):
                return prev
        ln = Line(len(self.lines) + 1, f, just)
        try:
            p = _check_line(ln, self._formulas, self._pure, self._hyps, self.max_letters)
        except _Reject as r:
            from .surface import print_term

            raise ValueError(f"invalid step {r.reason}: {r.detail}: {print_term(f)}") from None
        self.lines.append(ln)
        self._formulas[ln.index] = f
        self._pure[ln.index] = p
        if isinstance(just, Hyp):
            self._hyps.add(f)
        prev = self._by_formula.get(f)
        if prev is None or (p and not self._pure[prev]):
            self._by_formula[f] = ln.index
        return ln.index

    def extend(self, script: ProofScript) -> dict:
        """Append another script's lines; returns old index -> new index."""
        remap = {}
        for ln in script.lines:
            j = ln.just
            match j:
                case MP(i, k):
                    j = MP(remap[i], remap[k])
                case NecEntails(i, t):
                    j = NecEntails(remap[i], t)
                case NecSays(i, a):
                    j = NecSays(remap[i], a)
                case NecOmega(i, g):
                    j = NecOmega(remap[i], g)
                case IndOmega(i):
                    j = IndOmega(remap[i])
            remap[ln.index] = self._add(ln.formula, j)
        self.ops.update(script.ops)
        return remap

    # primitive steps
    def hyp(self, f: Formula) -> int:
        return self._add(f, Hyp())

    def axiom(self, n: int, f: Formula) -> int:
        return self._add(f, Axiom(n))

    def taut(self, f: Formula) -> int:
        return self.axiom(1, f)

    def mp(self, minor: int, major: int) -> int:
        ab = as_imp(self.formula(major))
        if ab is None:
            raise ValueError(f"line {major} is not an implication")
        return self._add(ab[1], MP(minor, major))

    def nec_entails(self, i: int, t: Term) -> int:
        return self._add(Entails(t, self.formula(i)), NecEntails(i, t))

    def nec_says(self, i: int, agent: str) -> int:
        return self._add(Says(agent, self.formula(i)), NecSays(i, agent))

    def nec_omega(self, i: int, group) -> int:
        g = tuple(sorted(group))
        return self._add(Mutual(g, self.formula(i)), NecOmega(i, g))

    def ind_omega(self, i: int, group) -> int:
        ab = as_imp(self.formula(i))
        if ab is None:
            raise ValueError(f"line {i} is not an implication")
        alpha, rhs = ab
        body = as_group_says(rhs, group)
        if type(body) is not And or body.left != alpha:
            raise ValueError(f"line {i} is not (imp a (G says (and a b)))")
        return self._add(Imp(alpha, Mutual(group, body.right)), IndOmega(i))

    # derived steps
    def consequence(self, target: Formula, premises=()) -> int:
        """``target`` from premise lines by one tautology and modus ponens."""
        premises = list(premises)
        if not premises:
            return self.taut(target)
        cur = self.taut(imp_chain([self.formula(p) for p in premises], target))
        for p in premises:
            cur = self.mp(p, cur)
        return cur

    def ax5_step(self, agent: str, minor: int, major: int) -> int:
        """``(says A a)`` and ``(says A (imp a b))`` give ``(says A b)``."""
        a = self.formula(minor).body
        ab = as_imp(self.formula(major).body)
        if ab is None or ab[0] != a:
            raise ValueError("ax5_step needs (says A a) and (says A (imp a b))")
        ax = self.axiom(5, Imp(And(self.formula(minor), self.formula(major)), Says(agent, ab[1])))
        return self.consequence(Says(agent, ab[1]), [minor, major, ax])

    def says_mp(self, agent: str, premises, theorem: int) -> int:
        """From ``(says A x_i)`` lines and a pure ``x_1 -> ... -> y``, get ``(says A y)``."""
        cur = self.nec_says(theorem, agent)
        for p in premises:
            cur = self.ax5_step(agent, p, cur)
        return cur

    def says_derive(self, agent: str, premises, target: Formula) -> int:
        """``(says A target)`` when ``x_1 -> ... -> target`` is a tautology."""
        xs = [self.formula(p).body for p in premises]
        return self.says_mp(agent, premises, self.taut(imp_chain(xs, target)))

    def conj(self, lines) -> int:
        return self.consequence(conj([self.formula(i) for i in lines]), lines)

    def script(self, goal: Formula | None = None) -> ProofScript:
        """The proof so far; the last line is restated if it is not the goal."""
        if goal is None:
            goal = self.lines[-1].formula
        if self.lines[-1].formula != goal:
            i = self._by_formula.get(goal)
            if i is None:
                raise ValueError("goal was never derived")
            self._restate(i)
        return ProofScript(goal=goal, lines=tuple(self.lines), ops=dict(self.ops))

    def _restate(self, i: int):
        f = self.formula(i)
        t = self._add(Imp(f, f), Axiom(1))
        self._add(f, MP(i, t), reuse=False)


def discharge(script: ProofScript, max_letters: int = 20) -> ProofScript:
    """Deduction theorem: turn a proof of ``g`` from hypotheses ``h_1..h_n``
    into a pure proof of ``(imp (and h_1 (and ... h_n)) g)``.

    Pure lines are copied; each impure line ``f`` becomes ``(imp H f)``.
    Necessitation only ever touches pure lines, so it is copied unchanged.
    """
    hyps = script.hypotheses
    if not hyps:
        return script
    H = conj(hyps)
    b = ProofBuilder(script.ops, max_letters)
    new = {}        # old index -> (new index, lifted?)
    old_pure = {}

    def lifted(i):
        k, is_lifted = new[i]
        if is_lifted:
            return k
        return b.consequence(Imp(H, b.formula(k)), [k])

    for ln in script.lines:
        f, j = ln.formula, ln.just
        match j:
            case Hyp() | HypRef():
                new[ln.index] = (b.taut(Imp(H, f)), True)
                old_pure[ln.index] = False
            case Axiom(n):
                new[ln.index] = (b.axiom(n, f), False)
                old_pure[ln.index] = True
            case MP(i, k):
                if old_pure[i] and old_pure[k]:
                    new[ln.index] = (b.mp(new[i][0], new[k][0]), False)
                    old_pure[ln.index] = True
                else:
                    li, lk = lifted(i), lifted(k)
                    new[ln.index] = (b.consequence(Imp(H, f), [li, lk]), True)
                    old_pure[ln.index] = False
            case NecEntails(i, t):
                new[ln.index] = (b.nec_entails(new[i][0], t), False)
                old_pure[ln.index] = True
            case NecSays(i, a):
                new[ln.index] = (b.nec_says(new[i][0], a), False)
                old_pure[ln.index] = True
            case NecOmega(i, g):
                new[ln.index] = (b.nec_omega(new[i][0], g), False)
                old_pure[ln.index] = True
            case IndOmega(i):
                k = new[i][0]
                ab = as_imp(f)
                new[ln.index] = (b.ind_omega(k, ab[1].group), False)
                old_pure[ln.index] = True
            case _:
                raise ValueError(f"cannot discharge {j!r}")
    lifted(script.lines[-1].index)
    return b.script(Imp(H, script.goal))
