"""Unification modulo a partial theory of modular exponentiation."""

from .flatten import E1SymbolInDecidableFragment, flatten_problem
from .graphs import FailReason
from .solver import FuelExhausted, Verdict, extract_unifier, solve
from .terms import (
    CMul, Const, Exp, G, IInv, Inv, Mul, One, ParseError, Var, apply_subst, format_term,
    parse_equation, parse_term,
)

__version__ = "0.1.0"
