"""A logic of signed contracts and assent: syntax, Kripke semantics, a proof
kernel and a saturation engine, with a corpus of worked scenarios."""

from .hilbert import ProofScript, Verdict, check_proof, is_tautology_instance, match_axiom
from .kripke import Model, extend_fixpoint, validate_model
from .sat import eval_mutual, eval_says_k, evaluate, tree_height
from .saturate import Ledger, meeting_of_minds, replay, saturate
from .surface import ParseError, parse_formula, parse_model, parse_term, print_term
from .syntax import (
    Agent, And, Atom, Entails, Iff, Imp, Mutual, Not, Op, Or, Says, SaysK, Signs, This, Var,
)

__all__ = [
    "ProofScript", "Verdict", "check_proof", "is_tautology_instance", "match_axiom",
    "Model", "extend_fixpoint", "validate_model",
    "eval_mutual", "eval_says_k", "evaluate", "tree_height",
    "Ledger", "meeting_of_minds", "replay", "saturate",
    "ParseError", "parse_formula", "parse_model", "parse_term", "print_term",
    "Agent", "And", "Atom", "Entails", "Iff", "Imp", "Mutual", "Not", "Op", "Or", "Says",
    "SaysK", "Signs", "This", "Var",
]

__version__ = "0.1.0"
