"""Unification modulo the partial theory of exponentiation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .engine import apply_f, apply_g, saturate_a_to_e
from .flatten import flatten_problem
from .graphs import FailReason, find_failure
from .state import ProblemState, TraceEvent
from .terms import CMul, Const, Exp, G, Mul, Term, Var, is_fresh_name, name_key, term_vars

__all__ = ["Verdict", "FuelExhausted", "InternalNonDAG", "solve", "run", "extract_unifier", "default_fuel"]


class FuelExhausted(RuntimeError):
    """The step budget ran out. Termination is guaranteed, so this means a bug."""


class InternalNonDAG(RuntimeError):
    pass


@dataclass
class Verdict:
    status: str  # "unifiable" or "fail"
    unifier: dict[str, Term] = field(default_factory=dict)
    full: dict[str, Term] = field(default_factory=dict)
    reason: FailReason | None = None
    free_parameters: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    state: ProblemState | None = field(default=None, repr=False, compare=False)

    @property
    def unifiable(self) -> bool:
        return self.status == "unifiable"


def default_fuel(n_equations: int) -> int:
    return 10 * n_equations * n_equations + 1000


def extract_unifier(state: ProblemState) -> dict[str, Term]:
    """Substitute definitions bottom-up; returns bindings for every defined or aliased variable.

    Call on a terminal state, where each variable has at most one active
    definition.
    """
    defs = {}
    for eq in state.active:
        defs.setdefault(eq.lhs, eq.rhs)
    memo: dict[str, Term] = {}
    visiting: set[str] = set()

    def resolve(v: str) -> Term:
        if v in state.aliases:
            return resolve(state.aliases[v])
        if v in memo:
            return memo[v]
        if v not in defs:
            return Var(v)
        if v in visiting:
            raise InternalNonDAG(f"definition of {v} depends on itself")
        visiting.add(v)
        rhs = defs[v]
        match rhs:
            case Var(w):
                t = resolve(w)
            case Const():
                t = rhs
            case Exp(Var(a), Var(b)):
                t = Exp(resolve(a), resolve(b))
            case Mul(Var(a), Var(b)):
                t = Mul(resolve(a), resolve(b))
            case CMul(Var(a), Var(b)):
                t = CMul(resolve(a), resolve(b))
            case G(Var(a)):
                t = G(resolve(a))
            case _:
                raise TypeError(f"unexpected rhs {rhs!r}")
        visiting.discard(v)
        memo[v] = t
        return t

    names = set(defs) | set(state.aliases)
    full = {}
    for v in sorted(names, key=name_key):
        t = resolve(v)
        if t != Var(v):
            full[v] = t
    return full


def run(state: ProblemState) -> Verdict:
    """Run the main loop on an already-flattened state."""
    iterations = 0
    peak = len(state.active) + len(state.cold)
    while True:
        iterations += 1
        reason = find_failure(state)
        if reason is not None:
            return _finish(state, "fail", iterations, peak, reason=reason)
        changed = saturate_a_to_e(state)
        peak = max(peak, len(state.active) + len(state.cold))
        if changed:
            continue
        fired = apply_f(state, checked=True) or apply_g(state, checked=True)
        if not fired:
            return _finish(state, "unifiable", iterations, peak)
        peak = max(peak, len(state.active) + len(state.cold))
        if state.fuel < 0:
            raise FuelExhausted(f"step budget exhausted after {iterations} iterations")


def _finish(state: ProblemState, status: str, iterations: int, peak: int, reason=None) -> Verdict:
    stats = {
        "iterations": iterations,
        "rule_counts": {r: state.rule_counts[r] for r in sorted(state.rule_counts)},
        "peak_equations": peak,
    }
    if status == "fail":
        return Verdict("fail", reason=reason, stats=stats, state=state)
    full = extract_unifier(state)
    unifier = {v: full[v] for v in state.originals if v in full}
    free: dict[str, None] = {}
    for t in unifier.values():
        for v in term_vars(t):
            if is_fresh_name(v):
                free.setdefault(v)
    return Verdict(
        "unifiable", unifier=unifier, full=full, free_parameters=sorted(free, key=name_key),
        stats=stats, state=state,
    )


def solve(
    eqs: Sequence[tuple[Term, Term]],
    *,
    fuel: int | None = None,
    trace: Callable[[TraceEvent], None] | None = None,
) -> Verdict:
    state = flatten_problem(eqs)
    state.fuel = default_fuel(len(state.active)) if fuel is None else fuel
    state.trace = trace
    return run(state)
