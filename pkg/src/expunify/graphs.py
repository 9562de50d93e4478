"""Variable dependency graph D, propagation graph P, and the failure checks.

Both graphs are built from active and cold equations. Rule (a) rewrites
eliminated variables out of every equation, so aliases never show up here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import kernels
from .state import FlatEquation, ProblemState, root_of
from .terms import CMul, Exp, G, Mul, Var, name_key

__all__ = [
    "DGraph", "PGraph", "FailReason", "FAIL_CODES", "build_D", "build_P", "find_D_cycle",
    "find_P_cycle", "check_root_clashes", "check_gm_clash", "find_failure",
    "d_to_dot", "p_to_dot",
]

FAIL_CODES = ("F1", "F2", "F3", "F4", "CONST_CLASH", "D_CYCLE", "P_CYCLE", "GM_CLASH")
MUL_LABELS = frozenset({"l*", "r*"})


@dataclass(frozen=True)
class FailReason:
    code: str
    witness: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.code}: {'; '.join(self.witness)}"


@dataclass(frozen=True)
class DGraph:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]

    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.nodes)}


@dataclass(frozen=True)
class PGraph:
    classes: tuple[tuple[str, ...], ...]
    edges: tuple[tuple[int, int], ...]

    def class_of(self) -> dict[str, int]:
        return {v: i for i, cls in enumerate(self.classes) for v in cls}


def _eq_edges(eq: FlatEquation) -> list[tuple[str, str, str]]:
    u = eq.lhs
    match eq.rhs:
        case Exp(Var(b), Var(e)):
            return [(u, b, "b"), (u, e, "e")]
        case Mul(Var(l), Var(r)):
            return [(u, l, "l*"), (u, r, "r*")]
        case CMul(Var(l), Var(r)):
            return [(u, l, "l⊛"), (u, r, "r⊛")]
        case G(Var(a)):
            return [(u, a, "g")]
    return []


def build_D(state: ProblemState) -> DGraph:
    names: set[str] = set()
    edges: list[tuple[str, str, str]] = []
    for eq in state.equations():
        names.add(eq.lhs)
        if isinstance(eq.rhs, Var):
            names.add(eq.rhs.name)
        for edge in _eq_edges(eq):
            names.add(edge[1])
            edges.append(edge)
    return DGraph(tuple(sorted(names, key=name_key)), tuple(edges))


def find_D_cycle(d: DGraph) -> list[str] | None:
    idx = d.index()
    cyc = kernels.find_cycle(
        len(d.nodes), [idx[s] for s, _, _ in d.edges], [idx[t] for _, t, _ in d.edges]
    )
    return None if cyc is None else [d.nodes[i] for i in cyc]


def build_P(state: ProblemState, d: DGraph | None = None) -> PGraph:
    if d is None:
        d = build_D(state)
    idx = d.index()
    base = [(idx[s], idx[t]) for s, t, lab in d.edges if lab == "b"]
    labels = kernels.components(len(d.nodes), [a for a, _ in base], [b for _, b in base])
    reps = sorted(set(labels))
    rep_pos = {r: i for i, r in enumerate(reps)}
    members: list[list[str]] = [[] for _ in reps]
    for i, v in enumerate(d.nodes):
        members[rep_pos[labels[i]]].append(v)
    edges = sorted({
        (rep_pos[labels[idx[s]]], rep_pos[labels[idx[t]]])
        for s, t, lab in d.edges if lab in MUL_LABELS
    })
    return PGraph(tuple(tuple(m) for m in members), tuple(edges))


def find_P_cycle(p: PGraph) -> list[tuple[str, ...]] | None:
    cyc = kernels.find_cycle(len(p.classes), [a for a, _ in p.edges], [b for _, b in p.edges])
    return None if cyc is None else [p.classes[i] for i in cyc]


_CLASHES = {
    frozenset({"exp", "@"}): "F1",
    frozenset({"g", "@"}): "F2",
    frozenset({"g", "*"}): "F3",
    frozenset({"@", "*"}): "F4",
}


def _by_lhs(eqs: list[FlatEquation]) -> dict[str, list[FlatEquation]]:
    groups: dict[str, list[FlatEquation]] = {}
    for eq in eqs:
        groups.setdefault(eq.lhs, []).append(eq)
    return groups


def check_root_clashes(state: ProblemState) -> FailReason | None:
    """F1-F4 on two active equations sharing a left-hand side, plus constant clashes.

    When several clashes are present the lowest code wins, so the answer does
    not depend on equation order.
    """
    found: dict[str, FailReason] = {}
    for group in _by_lhs(state.active).values():
        for e1, e2 in combinations(group, 2):
            r1, r2 = root_of(e1.rhs), root_of(e2.rhs)
            if "var" in (r1, r2):
                continue
            if "const" in (r1, r2):
                code = "CONST_CLASH" if e1.rhs != e2.rhs else None
            else:
                code = _CLASHES.get(frozenset({r1, r2}))
            if code is not None:
                found.setdefault(code, FailReason(code, (str(e1), str(e2))))
    for code in FAIL_CODES:
        if code in found:
            return found[code]
    return None


def check_gm_clash(state: ProblemState, p: PGraph | None = None) -> FailReason | None:
    """A single ~-class holding both a product definition and a g definition."""
    if p is None:
        p = build_P(state)
    cls = p.class_of()
    first_mul: dict[int, FlatEquation] = {}
    first_g: dict[int, FlatEquation] = {}
    for eq in state.equations():
        if isinstance(eq.rhs, Mul):
            first_mul.setdefault(cls[eq.lhs], eq)
        elif isinstance(eq.rhs, G):
            first_g.setdefault(cls[eq.lhs], eq)
    for c in sorted(first_mul.keys() & first_g.keys()):
        return FailReason("GM_CLASH", (str(first_mul[c]), str(first_g[c])))
    return None


def _fmt_class(cls: tuple[str, ...]) -> str:
    return "{" + ",".join(cls) + "}"


def find_failure(state: ProblemState) -> FailReason | None:
    d = build_D(state)
    cyc = find_D_cycle(d)
    if cyc is not None:
        return FailReason("D_CYCLE", tuple(cyc))
    p = build_P(state, d)
    pcyc = find_P_cycle(p)
    if pcyc is not None:
        return FailReason("P_CYCLE", tuple(_fmt_class(c) for c in pcyc))
    return check_root_clashes(state) or check_gm_clash(state, p)


def _dot_quote(s: str) -> str:
    return '"' + s.replace('"', r"\"") + '"'


def d_to_dot(d: DGraph) -> str:
    lines = ["digraph D {"]
    lines += [f"  {_dot_quote(v)};" for v in d.nodes]
    lines += [f"  {_dot_quote(s)} -> {_dot_quote(t)} [label={_dot_quote(lab)}];" for s, t, lab in d.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def p_to_dot(p: PGraph) -> str:
    lines = ["digraph P {"]
    lines += [f"  c{i} [label={_dot_quote(_fmt_class(c))}];" for i, c in enumerate(p.classes)]
    lines += [f"  c{a} -> c{b};" for a, b in p.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
