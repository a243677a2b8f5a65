"""Terms and formulas of the signature logic.

Every formula is also a term, so the formula classes subclass ``Formula``
which itself subclasses ``Term``. Nodes are frozen dataclasses and compare
structurally; ``This`` binders are compared without alpha-renaming.

Implication, disjunction and the biconditional are not stored: ``Imp``,
``Or`` and ``Iff`` build the equivalent ``Not``/``And`` tree, and the
printer recovers the short forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from operator import attrgetter
from typing import Iterable, Iterator


class CaptureError(ValueError):
    """Substitution would capture a free variable of the substituted term."""


class Term:
    __slots__ = ()


class Formula(Term):
    __slots__ = ()


def _cached_hash(self):
    try:
        return self._h
    except AttributeError:
        h = hash((self._tag, self._key(self)))
        object.__setattr__(self, "_h", h)
        return h


def _node(cls):
    # frozen dataclass whose structural hash is computed once
    fields = tuple(cls.__annotations__)
    cls = dataclass(frozen=True, slots=False)(cls)
    cls._fields = fields
    cls._tag = cls.__name__
    cls._key = staticmethod(attrgetter(*fields))
    cls.__hash__ = _cached_hash
    return cls


@_node
class Agent(Term):
    name: str


@_node
class Var(Term):
    name: str


@_node
class Op(Term):
    name: str
    args: tuple = ()


@_node
class Atom(Formula):
    name: str


@_node
class Not(Formula):
    body: Formula


@_node
class And(Formula):
    left: Formula
    right: Formula


@_node
class Entails(Formula):
    term: Term
    body: Formula


@_node
class Signs(Formula):
    agent: str
    term: Term


@_node
class Says(Formula):
    agent: str
    body: Formula


@_node
class This(Formula):
    var: str
    body: Formula


def _group(agents: Iterable[str]) -> tuple:
    agents = tuple(agents)
    if not agents:
        raise ValueError("agent group must be non-empty")
    if len(set(agents)) != len(agents):
        raise ValueError(f"agent group has duplicates: {agents}")
    return tuple(sorted(agents))


@_node
class SaysK(Formula):
    group: tuple
    k: int
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "group", _group(self.group))
        if self.k < 1:
            raise ValueError("says^k needs k >= 1")


@_node
class Mutual(Formula):
    group: tuple
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "group", _group(self.group))


# -- abbreviations -----------------------------------------------------------

def Imp(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def Or(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def as_imp(f: Term):
    """Return ``(a, b)`` if ``f`` is ``Imp(a, b)``, else None."""
    if type(f) is Not and type(f.body) is And and type(f.body.right) is Not:
        return f.body.left, f.body.right.body
    return None


def as_iff(f: Term):
    if type(f) is And:
        l, r = as_imp(f.left), as_imp(f.right)
        if l and r and l[0] == r[1] and l[1] == r[0]:
            return l
    return None


def conj(fs: Iterable[Formula]) -> Formula:
    """Right-nested conjunction of a non-empty sequence."""
    fs = list(fs)
    if not fs:
        raise ValueError("empty conjunction")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def imp_chain(premises: Iterable[Formula], conclusion: Formula) -> Formula:
    """``p1 -> (p2 -> ... -> conclusion)``."""
    out = conclusion
    for p in reversed(list(premises)):
        out = Imp(p, out)
    return out


def group_says(group: Iterable[str], f: Formula) -> Formula:
    """The conjunction of ``A says f`` over the (sorted) group."""
    return conj(Says(a, f) for a in _group(group))


def as_group_says(f: Formula, group: Iterable[str]):
    """Return the body if ``f`` is ``group_says(group, body)``, else None."""
    group = _group(group)
    node = f
    body = None
    for i, a in enumerate(group):
        head = node if i == len(group) - 1 else (node.left if type(node) is And else None)
        if type(head) is not Says or head.agent != a:
            return None
        if body is None:
            body = head.body
        elif head.body != body:
            return None
        if i < len(group) - 1:
            node = node.right
    return body


# -- traversal ---------------------------------------------------------------

def children(t: Term) -> tuple:
    """Direct subterms, in field order."""
    match t:
        case Op(_, args):
            return args
        case Not(b) | Says(_, b) | This(_, b) | SaysK(_, _, b) | Mutual(_, b):
            return (b,)
        case And(l, r):
            return (l, r)
        case Entails(u, b):
            return (u, b)
        case Signs(_, u):
            return (u,)
    return ()


def walk(t: Term) -> Iterator[Term]:
    """Pre-order traversal of every subterm, including ``t``."""
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        stack.extend(reversed(children(u)))


def size(t: Term) -> int:
    return sum(1 for _ in walk(t))


def agents_of(t: Term) -> set:
    out = set()
    for u in walk(t):
        match u:
            case Agent(n):
                out.add(n)
            case Signs(a, _) | Says(a, _):
                out.add(a)
            case SaysK(g, _, _) | Mutual(g, _):
                out.update(g)
    return out


def atoms_of(t: Term) -> set:
    return {u.name for u in walk(t) if type(u) is Atom}


def ops_of(t: Term) -> dict:
    """Operator name -> arity for every operator application in ``t``."""
    return {u.name: len(u.args) for u in walk(t) if type(u) is Op}


# -- variables and substitution ----------------------------------------------

@lru_cache(maxsize=1 << 16)
def free_vars(t: Term) -> frozenset:
    match t:
        case Var(n):
            return frozenset((n,))
        case This(x, body):
            return free_vars(body) - {x}
        case Agent() | Atom():
            return frozenset()
    out = frozenset()
    for c in children(t):
        out |= free_vars(c)
    return out


def is_sentence(f: Term) -> bool:
    return not free_vars(f)


def substitute(u: Term, x: str, t: Term) -> Term:
    """Replace the free occurrences of variable ``x`` in ``u`` by ``t``.

    Raises CaptureError instead of renaming when a binder inside ``u`` would
    capture a free variable of ``t``.
    """
    return _subst(u, x, t, free_vars(t))


def _subst(u, x, t, fv_t):
    if x not in free_vars(u):
        return u
    match u:
        case Var():
            return t
        case Op(n, args):
            return Op(n, tuple(_subst(a, x, t, fv_t) for a in args))
        case Not(b):
            return Not(_subst(b, x, t, fv_t))
        case And(l, r):
            return And(_subst(l, x, t, fv_t), _subst(r, x, t, fv_t))
        case Entails(v, b):
            return Entails(_subst(v, x, t, fv_t), _subst(b, x, t, fv_t))
        case Signs(a, v):
            return Signs(a, _subst(v, x, t, fv_t))
        case Says(a, b):
            return Says(a, _subst(b, x, t, fv_t))
        case SaysK(g, k, b):
            return SaysK(g, k, _subst(b, x, t, fv_t))
        case Mutual(g, b):
            return Mutual(g, _subst(b, x, t, fv_t))
        case This(y, b):
            # y == x cannot reach here: x would not be free in u
            if y in fv_t:
                raise CaptureError(f"substituting for ?{x} would capture ?{y}")
            return This(y, _subst(b, x, t, fv_t))
    raise TypeError(f"not a term: {u!r}")


def unfold(f: This) -> Formula:
    """``body[var := this var. body]``."""
    return substitute(f.body, f.var, f)


# -- depth measures ----------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def entailment_depth(t: Term) -> int:
    """Nesting depth of entailment; 0 exactly on non-formula terms."""
    match t:
        case Agent() | Var() | Op():
            return 0
        case Atom() | Signs():
            return 1
        case Not(b) | Says(_, b) | This(_, b) | SaysK(_, _, b) | Mutual(_, b):
            return entailment_depth(b)
        case And(l, r):
            return max(entailment_depth(l), entailment_depth(r))
        case Entails(u, b):
            return max(entailment_depth(u), entailment_depth(b)) + 1
    raise TypeError(f"not a term: {t!r}")


@lru_cache(maxsize=1 << 16)
def this_depth(f: Formula) -> int:
    """Nesting of ``this`` binders in evaluated positions.

    Binders inside the term argument of ``sign`` or on the left of
    ``entails`` are syntax and do not count.
    """
    match f:
        case Atom() | Signs():
            return 0
        case Not(b) | Says(_, b) | SaysK(_, _, b) | Mutual(_, b) | Entails(_, b):
            return this_depth(b)
        case And(l, r):
            return max(this_depth(l), this_depth(r))
        case This(_, b):
            return this_depth(b) + 1
    raise TypeError(f"not a formula: {f!r}")


def self_entailing(f: This) -> bool:
    """True if the bound variable sits directly on the left of an entailment.

    Evaluating such a binder against a fixed-point entailment relation asks
    whether the formula entails something in terms of itself, which the
    depth-stratified construction cannot ground.
    """
    x = f.var

    def visit(g, bound):
        match g:
            case Entails(u, b):
                if type(u) is Var and u.name == x and x not in bound:
                    return True
                return (isinstance(u, Formula) and visit(u, bound)) or visit(b, bound)
            case Not(b) | Says(_, b) | SaysK(_, _, b) | Mutual(_, b):
                return visit(b, bound)
            case And(l, r):
                return visit(l, bound) or visit(r, bound)
            case This(y, b):
                return visit(b, bound | {y})
        return False

    return visit(f.body, frozenset())


def canonical_bytes(t: Term) -> bytes:
    """The canonical printed form, ASCII-encoded."""
    from .surface import print_term

    return print_term(t).encode("ascii")
