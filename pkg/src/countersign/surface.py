"""S-expression surface syntax.

Terms and formulas::

    term    := AGENT | ?VAR | (op NAME term*) | formula
    formula := ATOM | (not f) | (and f f) | (or f f) | (imp f f) | (iff f f)
             | (entails term f) | (sign AGENT term) | (says AGENT f)
             | (saysk (AGENT+) NAT f) | (mutual (AGENT+) f) | (this ?VAR f)

Atoms are lowercase identifiers, agents start with an uppercase letter and
variables start with ``?``. ``;`` starts a comment. The printer emits the
canonical form: lowercase keywords, single spaces, ``imp``/``iff`` wherever
the primitive tree has that shape.
"""
from __future__ import annotations

import gc
import re
from bisect import bisect_left
from functools import wraps
from dataclasses import dataclass
from typing import Iterable

from .syntax import (
    Agent, And, Atom, Entails, Formula, Iff, Imp, Mutual, Not, Op, Or, Says, SaysK,
    Signs, Term, This, Var, as_iff, as_imp, is_sentence,
)

KEYWORDS = frozenset(
    "not and or imp iff entails sign says saysk mutual this op".split()
)

_VAR = re.compile(r"\?[A-Za-z_][A-Za-z0-9_\-]*\Z")
_AGENT = re.compile(r"[A-Z][A-Za-z0-9_\-]*\Z")
_LOWER = re.compile(r"[a-z][A-Za-z0-9_\-]*\Z")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*\Z")
_NAT = re.compile(r"[0-9]+\Z")


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan | None = None):
        self.message = message
        self.span = span
        super().__init__(f"{span}: {message}" if span else message)


# -- reader ------------------------------------------------------------------

class Sym:
    __slots__ = ("text", "start", "end", "_pos")

    def __init__(self, text, start, end, pos):
        self.text, self.start, self.end, self._pos = text, start, end, pos

    @property
    def span(self) -> SourceSpan:
        return self._pos.span(self.start, self.end)


class SList:
    __slots__ = ("items", "start", "end", "_pos")

    def __init__(self, items, start, end, pos):
        self.items, self.start, self.end, self._pos = items, start, end, pos

    @property
    def span(self) -> SourceSpan:
        return self._pos.span(self.start, self.end)

    @property
    def head(self):
        if self.items and isinstance(self.items[0], Sym):
            return self.items[0].text
        return None


_TOKEN = re.compile(r";[^\n]*|\(|\)|[^\s();]+")


class _Positions:
    """Line and column lookup for character offsets, built on first use."""

    def __init__(self, text: str):
        self.text = text
        self._newlines = None

    def span(self, start: int, end: int) -> SourceSpan:
        if self._newlines is None:
            self._newlines = [m.start() for m in re.finditer("\n", self.text)]
        k = bisect_left(self._newlines, start)
        col = start - (self._newlines[k - 1] if k else -1)
        return SourceSpan(start, end, k + 1, col)


def _gc_paused(fn):
    """Parsing allocates many small acyclic objects; collection passes over
    them only cost time."""
    @wraps(fn)
    def run(*args, **kwargs):
        if not gc.isenabled():
            return fn(*args, **kwargs)
        gc.disable()
        try:
            return fn(*args, **kwargs)
        finally:
            gc.enable()
    return run


@_gc_paused
def read_sexpr(text: str):
    """Read exactly one s-expression from ``text``."""
    pos = _Positions(text)
    stack = []           # (items, start offset) of the open lists
    result = None
    for m in _TOKEN.finditer(text):
        tok = m.group()
        c = tok[0]
        if c == ";":
            continue
        start = m.start()
        if result is not None:
            raise ParseError("trailing input after expression", pos.span(start, len(text)))
        if c == "(":
            stack.append(([], start))
            continue
        if c == ")":
            if not stack:
                raise ParseError("unbalanced parenthesis: unexpected ')'",
                                 pos.span(start, start + 1))
            items, open_at = stack.pop()
            node = SList(items, open_at, start + 1, pos)
        else:
            if not tok.isascii():
                raise ParseError(f"non-ASCII token {tok!r}", pos.span(start, m.end()))
            node = Sym(tok, start, m.end(), pos)
        if stack:
            stack[-1][0].append(node)
        else:
            result = node
    if stack:
        open_at = stack[-1][1]
        raise ParseError("unbalanced parenthesis: '(' never closed",
                         pos.span(open_at, open_at + 1))
    if result is None:
        raise ParseError("unexpected end of input", pos.span(len(text), len(text)))
    return result


# -- terms and formulas ------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Declared names; ``None`` means the corresponding class is unchecked."""
    agents: frozenset | None = None
    atoms: frozenset | None = None
    ops: dict | None = None


def _err(node, msg):
    return ParseError(msg, node.span)


def _expect_list(node, what):
    if not isinstance(node, SList):
        raise _err(node, f"expected {what}")
    return node


def _agent(node, sig: Signature) -> str:
    if not isinstance(node, Sym) or not _AGENT.match(node.text):
        raise _err(node, "expected an agent name")
    if sig.agents is not None and node.text not in sig.agents:
        raise _err(node, f"undeclared agent {node.text}")
    return node.text


def _group(node, sig):
    node = _expect_list(node, "an agent list")
    agents = [_agent(a, sig) for a in node.items]
    if not agents:
        raise _err(node, "agent group must be non-empty")
    if len(set(agents)) != len(agents):
        raise _err(node, "agent group has duplicates")
    return agents


def _arity(node: SList, n: int, kw: str):
    if len(node.items) - 1 != n:
        raise _err(node, f"{kw} takes {n} argument{'s' if n != 1 else ''}, "
                         f"got {len(node.items) - 1}")


def term_from_sexpr(node, sig: Signature = Signature()) -> Term:
    if isinstance(node, Sym):
        t = node.text
        if _VAR.match(t):
            return Var(t[1:])
        if _AGENT.match(t):
            return Agent(_agent(node, sig))
        return formula_from_sexpr(node, sig)
    if node.head == "op":
        if len(node.items) < 2 or not isinstance(node.items[1], Sym) \
                or not _LOWER.match(node.items[1].text):
            raise _err(node, "op needs a lowercase operator name")
        name = node.items[1].text
        args = tuple(term_from_sexpr(a, sig) for a in node.items[2:])
        if sig.ops is not None:
            if name not in sig.ops:
                raise _err(node.items[1], f"unknown operator {name}")
            if sig.ops[name] != len(args):
                raise _err(node, f"operator {name} has arity {sig.ops[name]}, "
                                 f"got {len(args)} arguments")
        return Op(name, args)
    return formula_from_sexpr(node, sig)


def formula_from_sexpr(node, sig: Signature = Signature()) -> Formula:
    if isinstance(node, Sym):
        t = node.text
        if _VAR.match(t):
            raise _err(node, f"variable {t} in formula position")
        if _AGENT.match(t):
            raise _err(node, f"agent {t} in formula position")
        if t in KEYWORDS:
            raise _err(node, f"keyword {t} used as an atom")
        if not _LOWER.match(t):
            raise _err(node, f"bad atom name {t!r}")
        if sig.atoms is not None and t not in sig.atoms:
            raise _err(node, f"undeclared atom {t}")
        return Atom(t)
    kw = node.head
    items = node.items
    f = lambda n: formula_from_sexpr(n, sig)  # noqa: E731
    if kw == "not":
        _arity(node, 1, kw)
        return Not(f(items[1]))
    if kw in ("and", "or", "imp", "iff"):
        _arity(node, 2, kw)
        build = {"and": And, "or": Or, "imp": Imp, "iff": Iff}[kw]
        return build(f(items[1]), f(items[2]))
    if kw == "entails":
        _arity(node, 2, kw)
        return Entails(term_from_sexpr(items[1], sig), f(items[2]))
    if kw == "sign":
        _arity(node, 2, kw)
        return Signs(_agent(items[1], sig), term_from_sexpr(items[2], sig))
    if kw == "says":
        _arity(node, 2, kw)
        return Says(_agent(items[1], sig), f(items[2]))
    if kw == "saysk":
        _arity(node, 3, kw)
        group = _group(items[1], sig)
        k = items[2]
        if not isinstance(k, Sym) or not _NAT.match(k.text) or int(k.text) < 1:
            raise _err(k, "saysk needs a natural number k >= 1")
        return SaysK(group, int(k.text), f(items[3]))
    if kw == "mutual":
        _arity(node, 2, kw)
        return Mutual(_group(items[1], sig), f(items[2]))
    if kw == "this":
        _arity(node, 2, kw)
        v = items[1]
        if not isinstance(v, Sym) or not _VAR.match(v.text):
            raise _err(v, "this binds a ?variable")
        return This(v.text[1:], f(items[2]))
    if kw == "op":
        raise _err(node, "operator application in formula position")
    raise _err(node, f"unknown connective {kw!r}" if kw else "expected a formula")


@_gc_paused
def parse_term(text: str, sig: Signature = Signature()) -> Term:
    return term_from_sexpr(read_sexpr(text), sig)


@_gc_paused
def parse_formula(text: str, sig: Signature = Signature()) -> Formula:
    return formula_from_sexpr(read_sexpr(text), sig)


def parse_sentence(text: str, sig: Signature = Signature()) -> Formula:
    node = read_sexpr(text)
    f = formula_from_sexpr(node, sig)
    if not is_sentence(f):
        raise _err(node, "formula has free variables")
    return f


# -- printer -----------------------------------------------------------------

def print_term(t: Term) -> str:
    out = []
    _emit(t, out)
    return "".join(out)


def _emit(t, out):
    match t:
        case Agent(n) | Atom(n):
            out.append(n)
        case Var(n):
            out.append("?" + n)
        case Op(n, args):
            out.append("(op " + n)
            for a in args:
                out.append(" ")
                _emit(a, out)
            out.append(")")
        case Not(b):
            ab = as_imp(t)
            if ab:
                _emit_app("imp", ab, out)
            else:
                _emit_app("not", (b,), out)
        case And(l, r):
            ab = as_iff(t)
            if ab:
                _emit_app("iff", ab, out)
            else:
                _emit_app("and", (l, r), out)
        case Entails(u, b):
            _emit_app("entails", (u, b), out)
        case Signs(a, u):
            out.append(f"(sign {a} ")
            _emit(u, out)
            out.append(")")
        case Says(a, b):
            out.append(f"(says {a} ")
            _emit(b, out)
            out.append(")")
        case SaysK(g, k, b):
            out.append(f"(saysk ({' '.join(g)}) {k} ")
            _emit(b, out)
            out.append(")")
        case Mutual(g, b):
            out.append(f"(mutual ({' '.join(g)}) ")
            _emit(b, out)
            out.append(")")
        case This(x, b):
            out.append(f"(this ?{x} ")
            _emit(b, out)
            out.append(")")
        case _:
            raise TypeError(f"not a term: {t!r}")


def _emit_app(kw, args, out):
    out.append("(" + kw)
    for a in args:
        out.append(" ")
        _emit(a, out)
    out.append(")")


# -- file helpers ------------------------------------------------------------

def _ident(node, what):
    if not isinstance(node, Sym) or not _IDENT.match(node.text) or node.text in KEYWORDS:
        raise _err(node, f"expected {what}")
    return node.text


def _declared_names(clause: SList, pattern, what):
    out = []
    for n in clause.items[1:]:
        if not isinstance(n, Sym) or not pattern.match(n.text) or n.text in KEYWORDS:
            raise _err(n, f"expected {what}")
        if n.text in out:
            raise _err(n, f"duplicate {what} {n.text}")
        out.append(n.text)
    return out


def _ops_clause(clause: SList) -> dict:
    ops = {}
    for d in clause.items[1:]:
        d = _expect_list(d, "(name arity)")
        if len(d.items) != 2 or not isinstance(d.items[0], Sym) \
                or not _LOWER.match(d.items[0].text) \
                or not isinstance(d.items[1], Sym) or not _NAT.match(d.items[1].text):
            raise _err(d, "operator declaration must be (name arity)")
        name = d.items[0].text
        if name in ops:
            raise _err(d, f"duplicate operator {name}")
        ops[name] = int(d.items[1].text)
    return ops


def _print_ops(ops: dict) -> str:
    return "(ops" + "".join(f" ({n} {a})" for n, a in ops.items()) + ")"


def _top(text: str, head: str) -> SList:
    node = read_sexpr(text)
    if not isinstance(node, SList) or node.head != head:
        raise ParseError(f"expected a ({head} ...) form", node.span)
    return node


def _sentence(node, sig, what="term"):
    t = term_from_sexpr(node, sig)
    if not is_sentence(t):
        raise _err(node, f"{what} has free variables")
    return t


# -- model files -------------------------------------------------------------

@_gc_paused
def parse_model(text: str, max_worlds: int | None = None):
    from .kripke import Model, ModelError

    top = _top(text, "model")
    worlds, agents, atoms, ops = [], [], [], {}
    seen = set()
    deferred = []
    mode = "explicit"
    base_all = False
    for clause in top.items[1:]:
        clause = _expect_list(clause, "a model clause")
        kw = clause.head
        if kw in ("worlds", "agents", "atoms", "ops", "entails-mode", "entails-base"):
            if kw in seen:
                raise _err(clause, f"duplicate ({kw} ...) clause")
            seen.add(kw)
        if kw == "worlds":
            worlds = _declared_names(clause, _IDENT, "world id")
        elif kw == "agents":
            agents = _declared_names(clause, _AGENT, "agent name")
        elif kw == "atoms":
            atoms = _declared_names(clause, _LOWER, "atom name")
        elif kw == "ops":
            ops = _ops_clause(clause)
        elif kw == "entails-mode":
            _arity(clause, 1, kw)
            m = clause.items[1]
            if not isinstance(m, Sym) or m.text not in ("explicit", "fixedpoint"):
                raise _err(m, "entails-mode is explicit or fixedpoint")
            mode = m.text
        elif kw == "entails-base":
            _arity(clause, 1, kw)
            m = clause.items[1]
            if not isinstance(m, Sym) or m.text not in ("all", "declared"):
                raise _err(m, "entails-base is all or declared")
            base_all = m.text == "all"
        elif kw in ("true-at", "says-edge", "sign", "entails"):
            deferred.append(clause)
        else:
            raise _err(clause, f"unknown model clause {kw!r}")
    if "worlds" not in seen:
        raise _err(top, "model needs a (worlds ...) clause")
    if max_worlds is not None and len(worlds) > max_worlds:
        raise _err(top, f"{len(worlds)} worlds exceeds the cap of {max_worlds}")
    sig = Signature(frozenset(agents), frozenset(atoms), ops)
    wset = set(worlds)

    def world(n):
        w = _ident(n, "a world id")
        if w not in wset:
            raise _err(n, f"undeclared world {w}")
        return w

    val = {w: set() for w in worlds}
    says, signs, ents = set(), set(), set()
    for clause in deferred:
        kw = clause.head
        if kw == "true-at":
            _arity(clause, 2, kw)
            w = world(clause.items[1])
            a = formula_from_sexpr(clause.items[2], sig)
            if type(a) is not Atom:
                raise _err(clause.items[2], "true-at takes an atom")
            val[w].add(a.name)
        elif kw == "says-edge":
            _arity(clause, 3, kw)
            says.add((world(clause.items[1]), _agent(clause.items[2], sig),
                      world(clause.items[3])))
        elif kw == "sign":
            _arity(clause, 3, kw)
            signs.add((world(clause.items[1]), _agent(clause.items[2], sig),
                       _sentence(clause.items[3], sig)))
        elif kw == "entails":
            _arity(clause, 2, kw)
            t = _sentence(clause.items[1], sig)
            if mode == "fixedpoint" and isinstance(t, Formula):
                raise _err(clause.items[1],
                           "fixedpoint mode derives the entailments of formulas; "
                           "only non-formula terms may be declared")
            ws = clause.items[2]
            if isinstance(ws, Sym) and ws.text == "*":
                for w in worlds:
                    ents.add((t, w))
            else:
                ents.add((t, world(ws)))
    try:
        return Model(
            worlds=tuple(worlds), agents=tuple(agents), atoms=tuple(atoms), ops=ops,
            valuation={w: frozenset(v) for w, v in val.items()},
            says=frozenset(says), signs=frozenset(signs), entails=frozenset(ents),
            mode=mode, entails_base_all=base_all,
        )
    except ModelError as e:
        raise ParseError(str(e), top.span) from e


def print_model(m) -> str:
    parts = [
        "(worlds" + "".join(" " + w for w in m.worlds) + ")",
        "(agents" + "".join(" " + a for a in m.agents) + ")",
        "(atoms" + "".join(" " + p for p in m.atoms) + ")",
    ]
    if m.ops:
        parts.append(_print_ops(m.ops))
    parts.append(f"(entails-mode {m.mode})")
    if m.entails_base_all:
        parts.append("(entails-base all)")
    order = {w: i for i, w in enumerate(m.worlds)}
    for w in m.worlds:
        for p in sorted(m.valuation.get(w, ())):
            parts.append(f"(true-at {w} {p})")
    for w, a, v in sorted(m.says, key=lambda e: (order[e[0]], e[1], order[e[2]])):
        parts.append(f"(says-edge {w} {a} {v})")
    for w, a, t in sorted(((w, a, print_term(t)) for w, a, t in m.signs),
                          key=lambda e: (order[e[0]], e[1], e[2])):
        parts.append(f"(sign {w} {a} {t})")
    for t, w in sorted(((print_term(t), w) for t, w in m.entails),
                       key=lambda e: (e[0], order[e[1]])):
        parts.append(f"(entails {t} {w})")
    return "(model\n  " + "\n  ".join(parts) + ")\n"


@_gc_paused
def parse_queries(text: str, sig: Signature = Signature()) -> list:
    top = _top(text, "queries")
    out = []
    for n in top.items[1:]:
        q = _sentence(n, sig, "query")
        if not isinstance(q, Formula):
            raise _err(n, "queries must be formulas")
        out.append(q)
    return out


def print_queries(qs: Iterable[Formula]) -> str:
    return "(queries" + "".join("\n  " + print_term(q) for q in qs) + ")\n"


# -- ledger files ------------------------------------------------------------

@_gc_paused
def parse_ledger(text: str):
    from .saturate import Ledger

    top = _top(text, "ledger")
    agents, ops = [], {}
    seen = set()
    deferred = []
    for clause in top.items[1:]:
        clause = _expect_list(clause, "a ledger clause")
        kw = clause.head
        if kw in ("agents", "ops"):
            if kw in seen:
                raise _err(clause, f"duplicate ({kw} ...) clause")
            seen.add(kw)
            if kw == "agents":
                agents = _declared_names(clause, _AGENT, "agent name")
            else:
                ops = _ops_clause(clause)
        elif kw in ("sign", "entails"):
            deferred.append(clause)
        else:
            raise _err(clause, f"unknown ledger clause {kw!r}")
    sig = Signature(frozenset(agents), None, ops)
    signs, ents = [], []
    for clause in deferred:
        _arity(clause, 2, clause.head)
        if clause.head == "sign":
            fact = (_agent(clause.items[1], sig), _sentence(clause.items[2], sig))
            if fact not in signs:
                signs.append(fact)
        else:
            t = _sentence(clause.items[1], sig)
            f = formula_from_sexpr(clause.items[2], sig)
            if not is_sentence(f):
                raise _err(clause.items[2], "entailed formula has free variables")
            if (t, f) not in ents:
                ents.append((t, f))
    return Ledger(agents=tuple(agents), signs=tuple(signs), entails=tuple(ents), ops=ops)


def print_ledger(led) -> str:
    parts = ["(agents" + "".join(" " + a for a in led.agents) + ")"]
    if led.ops:
        parts.append(_print_ops(led.ops))
    parts += [f"(sign {a} {print_term(t)})" for a, t in led.signs]
    parts += [f"(entails {print_term(t)} {print_term(f)})" for t, f in led.entails]
    return "(ledger\n  " + "\n  ".join(parts) + ")\n"


# -- proof files -------------------------------------------------------------

_RULES_WITH_INDEX = {"mp", "nec-entails", "nec-says", "nec-omega", "ind-omega"}


@_gc_paused
def parse_proof(text: str):
    from . import hilbert as H

    top = _top(text, "proof")
    ops = None
    goal_node = None
    body = []
    for clause in top.items[1:]:
        clause = _expect_list(clause, "a proof clause")
        kw = clause.head
        if kw == "goal":
            if goal_node is not None:
                raise _err(clause, "duplicate (goal ...) clause")
            _arity(clause, 1, kw)
            goal_node = clause.items[1]
        elif kw == "ops":
            if ops is not None:
                raise _err(clause, "duplicate (ops ...) clause")
            ops = _ops_clause(clause)
        elif kw in ("hyp", "line"):
            body.append(clause)
        else:
            raise _err(clause, f"unknown proof clause {kw!r}")
    if goal_node is None:
        raise _err(top, "proof needs a (goal ...) clause")
    sig = Signature(None, None, ops)
    goal = formula_from_sexpr(goal_node, sig)
    indices = set()
    for clause in body:
        if len(clause.items) < 2 or not isinstance(clause.items[1], Sym) \
                or not _NAT.match(clause.items[1].text):
            raise _err(clause, "expected a line number")
        n = int(clause.items[1].text)
        if n in indices:
            raise _err(clause.items[1], f"duplicate line number {n}")
        indices.add(n)

    def ref(node):
        if not isinstance(node, Sym) or not _NAT.match(node.text):
            raise _err(node, "expected a line number")
        n = int(node.text)
        if n not in indices:
            raise _err(node, f"reference to undefined line {n}")
        return n

    lines = []
    for clause in body:
        n = int(clause.items[1].text)
        if clause.head == "hyp":
            _arity(clause, 2, "hyp")
            lines.append(H.Line(n, formula_from_sexpr(clause.items[2], sig), H.Hyp()))
            continue
        _arity(clause, 3, "line")
        f = formula_from_sexpr(clause.items[2], sig)
        j = _expect_list(clause.items[3], "a justification")
        rule = j.head
        args = j.items[1:]

        def need(k):
            if len(args) != k:
                raise _err(j, f"{rule} takes {k} argument{'s' if k != 1 else ''}")

        if rule and re.fullmatch(r"ax[1-9]", rule):
            need(0)
            just = H.Axiom(int(rule[2]))
        elif rule == "hyp-ref":
            need(0)
            just = H.HypRef()
        elif rule == "mp":
            need(2)
            just = H.MP(ref(args[0]), ref(args[1]))
        elif rule == "nec-entails":
            need(2)
            just = H.NecEntails(ref(args[0]), _sentence(args[1], sig))
        elif rule == "nec-says":
            need(2)
            just = H.NecSays(ref(args[0]), _agent(args[1], sig))
        elif rule == "nec-omega":
            need(2)
            just = H.NecOmega(ref(args[0]), tuple(sorted(_group(args[1], sig))))
        elif rule == "ind-omega":
            need(1)
            just = H.IndOmega(ref(args[0]))
        else:
            raise _err(j, f"unknown justification {rule!r}")
        lines.append(H.Line(n, f, just))
    return H.ProofScript(goal=goal, lines=tuple(lines), ops=ops or {})


def print_justification(j) -> str:
    from . import hilbert as H

    match j:
        case H.Axiom(n):
            return f"(ax{n})"
        case H.HypRef():
            return "(hyp-ref)"
        case H.MP(i, k):
            return f"(mp {i} {k})"
        case H.NecEntails(i, t):
            return f"(nec-entails {i} {print_term(t)})"
        case H.NecSays(i, a):
            return f"(nec-says {i} {a})"
        case H.NecOmega(i, g):
            return f"(nec-omega {i} ({' '.join(g)}))"
        case H.IndOmega(i):
            return f"(ind-omega {i})"
    raise TypeError(f"not a justification: {j!r}")


def print_proof(p) -> str:
    from . import hilbert as H

    parts = [f"(goal {print_term(p.goal)})"]
    if p.ops:
        parts.append(_print_ops(p.ops))
    for ln in p.lines:
        if isinstance(ln.just, H.Hyp):
            parts.append(f"(hyp {ln.index} {print_term(ln.formula)})")
        else:
            parts.append(f"(line {ln.index} {print_term(ln.formula)} "
                         f"{print_justification(ln.just)})")
    return "(proof\n  " + "\n  ".join(parts) + ")\n"


def print_any(text: str) -> str:
    """Canonical form of a model, ledger, proof, query list or single term."""
    node = read_sexpr(text)
    head = node.head if isinstance(node, SList) else None
    if head == "model":
        return print_model(parse_model(text))
    if head == "ledger":
        return print_ledger(parse_ledger(text))
    if head == "proof":
        return print_proof(parse_proof(text))
    if head == "queries":
        return print_queries(parse_queries(text))
    return print_term(term_from_sexpr(node)) + "\n"
