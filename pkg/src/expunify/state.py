"""Flat equations and the mutable solver state."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .terms import CMul, Const, Exp, G, Mul, Term, Var, format_term

__all__ = ["FlatEquation", "ProblemState", "TraceEvent", "fresh_var", "rhs_args", "root_of"]


@dataclass(frozen=True, slots=True)
class FlatEquation:
    """``lhs =? rhs`` where every argument of ``rhs`` is a variable.

    ``marked`` equations sit in cold storage: they never fire a rule but still
    contribute edges to the dependency graphs.
    """

    lhs: str
    rhs: Term
    marked: bool = False

    @property
    def key(self) -> tuple[str, Term]:
        return (self.lhs, self.rhs)

    def __str__(self) -> str:
        return f"{self.lhs} =? {format_term(self.rhs)}"


def root_of(rhs: Term) -> str:
    match rhs:
        case Var():
            return "var"
        case Const():
            return "const"
        case Exp():
            return "exp"
        case G():
            return "g"
        case Mul():
            return "*"
        case CMul():
            return "@"
    raise TypeError(f"not a flat right-hand side: {rhs!r}")


def rhs_args(rhs: Term) -> tuple[str, ...]:
    match rhs:
        case Var(v):
            return (v,)
        case Exp(Var(a), Var(b)) | Mul(Var(a), Var(b)) | CMul(Var(a), Var(b)):
            return (a, b)
        case G(Var(a)):
            return (a,)
    return ()


@dataclass(frozen=True, slots=True)
class TraceEvent:
    rule: str
    consumed: tuple[FlatEquation, ...]
    produced: tuple[FlatEquation, ...]

    def __str__(self) -> str:
        c = ", ".join(map(str, self.consumed))
        p = ", ".join(map(str, self.produced))
        return f"({self.rule}) {{{c}}} => {{{p}}}"


@dataclass
class ProblemState:
    active: list[FlatEquation] = field(default_factory=list)
    cold: list[FlatEquation] = field(default_factory=list)
    aliases: dict[str, str] = field(default_factory=dict)
    fresh_counter: int = 0
    fuel: int = 0
    originals: tuple[str, ...] = ()
    rule_counts: Counter = field(default_factory=Counter)
    trace: Callable[[TraceEvent], None] | None = None

    def emit(self, rule: str, consumed: Iterable[FlatEquation], produced: Iterable[FlatEquation]) -> None:
        self.rule_counts[rule] += 1
        if self.trace is not None:
            self.trace(TraceEvent(rule, tuple(consumed), tuple(produced)))

    def equations(self) -> Iterator[FlatEquation]:
        yield from self.active
        yield from self.cold

    def variables(self) -> set[str]:
        names = set(self.originals)
        names.update(self.aliases)
        names.update(self.aliases.values())
        for eq in self.equations():
            names.add(eq.lhs)
            names.update(rhs_args(eq.rhs))
        return names

    def add_active(self, eq: FlatEquation) -> FlatEquation | None:
        """Append unless an identical equation is already active. Trivial ``V =? V`` is dropped."""
        if isinstance(eq.rhs, Var) and eq.rhs.name == eq.lhs:
            return None
        key = eq.key
        if any(e.key == key for e in self.active):
            return None
        self.cold = [e for e in self.cold if e.key != key]
        self.active.append(eq)
        return eq

    def to_cold(self, eq: FlatEquation) -> None:
        self.active.remove(eq)
        key = eq.key
        if not any(e.key == key for e in self.cold):
            self.cold.append(FlatEquation(eq.lhs, eq.rhs, True))

    def copy(self) -> ProblemState:
        return ProblemState(
            list(self.active), list(self.cold), dict(self.aliases), self.fresh_counter,
            self.fuel, self.originals, Counter(self.rule_counts), self.trace,
        )


def fresh_var(state: ProblemState) -> str:
    """A generated name not occurring anywhere in ``state``."""
    taken = state.variables()
    while True:
        name = f"_v{state.fresh_counter}"
        state.fresh_counter += 1
        if name not in taken:
            return name
