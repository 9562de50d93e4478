"""Purification of term equations into flat equations."""

from __future__ import annotations

from typing import Sequence

from .state import FlatEquation, ProblemState, fresh_var
from .terms import (
    CMul, Const, Exp, G, Mul, Term, Var, format_term, has_group_symbols, name_key, term_vars,
)

__all__ = ["E1SymbolInDecidableFragment", "flatten_problem", "check_fragment"]


class E1SymbolInDecidableFragment(ValueError):
    """inv, i or 1 appeared in a problem for the free-multiplication solver."""


def check_fragment(eqs: Sequence[tuple[Term, Term]]) -> None:
    for s, t in eqs:
        for side in (s, t):
            if has_group_symbols(side):
                raise E1SymbolInDecidableFragment(
                    f"{format_term(side)!r} uses inv, i or 1, which only the abelian-group oracle accepts"
                )


def flatten_problem(eqs: Sequence[tuple[Term, Term]]) -> ProblemState:
    """Introduce one fresh variable per non-variable proper subterm.

    Fresh variables are allocated outermost-first, left to right, and each
    defining equation precedes the definitions of its own arguments.
    """
    check_fragment(eqs)
    originals: dict[str, None] = {}
    for s, t in eqs:
        for v in term_vars(s) + term_vars(t):
            originals.setdefault(v)
    state = ProblemState(originals=tuple(sorted(originals, key=name_key)))

    def name_for(t: Term, pending: list[tuple[str, Term]]) -> str:
        if isinstance(t, Var):
            return t.name
        v = fresh_var(state)
        pending.append((v, t))
        return v

    def define(lhs: str, t: Term) -> None:
        pending: list[tuple[str, Term]] = []
        match t:
            case Var() | Const():
                rhs = t
            case Exp(a, b):
                rhs = Exp(Var(name_for(a, pending)), Var(name_for(b, pending)))
            case Mul(a, b):
                rhs = Mul(Var(name_for(a, pending)), Var(name_for(b, pending)))
            case CMul(a, b):
                rhs = CMul(Var(name_for(a, pending)), Var(name_for(b, pending)))
            case G(a):
                rhs = G(Var(name_for(a, pending)))
            case _:
                raise TypeError(f"unexpected term {t!r}")
        state.add_active(FlatEquation(lhs, rhs))
        for v, sub in pending:
            define(v, sub)

    for s, t in eqs:
        if isinstance(s, Var):
            define(s.name, t)
        elif isinstance(t, Var):
            define(t.name, s)
        else:
            u = fresh_var(state)
            define(u, s)
            define(u, t)
    return state
