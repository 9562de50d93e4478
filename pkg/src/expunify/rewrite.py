"""Independent checks for the free-multiplication theory.

The two axioms, oriented left to right, form a convergent rewrite system::

    exp(g(X), Y)   -> g(X @ Y)
    exp(X * Y, Z)  -> exp(X, Z) * exp(Y, Z)

Two terms are equal in the theory iff their normal forms are identical.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Sequence

from .terms import CMul, Const, Exp, G, IInv, Inv, Mul, Substitution, Term, Var, apply_subst, term_vars

__all__ = [
    "BudgetExceeded", "normalize_R", "normalize_R_steps", "redex_positions", "rewrite_at",
    "normalize_random", "verify_unifier", "ground_terms", "enumerate_unifiers",
]

DEFAULT_CAP = 10**7


class BudgetExceeded(RuntimeError):
    pass


def _exp_nf(base: Term, e: Term) -> tuple[Term, int]:
    match base:
        case G(x):
            return G(CMul(x, e)), 1
        case Mul(x, y):
            lx, nx = _exp_nf(x, e)
            ly, ny = _exp_nf(y, e)
            return Mul(lx, ly), 1 + nx + ny
    return Exp(base, e), 0


@lru_cache(maxsize=1 << 18)
def normalize_R_steps(t: Term) -> tuple[Term, int]:
    """Innermost normal form together with the number of rewrite steps used."""
    match t:
        case Exp(b, e):
            nb, sb = normalize_R_steps(b)
            ne, se = normalize_R_steps(e)
            r, s = _exp_nf(nb, ne)
            return r, sb + se + s
        case Mul(a, b) | CMul(a, b):
            na, sa = normalize_R_steps(a)
            nb, sb = normalize_R_steps(b)
            return type(t)(na, nb), sa + sb
        case G(a) | Inv(a) | IInv(a):
            na, sa = normalize_R_steps(a)
            return type(t)(na), sa
    return t, 0


def normalize_R(t: Term) -> Term:
    return normalize_R_steps(t)[0]


def _children(t: Term) -> tuple[Term, ...]:
    match t:
        case Exp(a, b) | Mul(a, b) | CMul(a, b):
            return (a, b)
        case G(a) | Inv(a) | IInv(a):
            return (a,)
    return ()


def _rebuild(t: Term, children: Sequence[Term]) -> Term:
    return type(t)(*children)


def redex_positions(t: Term, here: tuple[int, ...] = ()) -> list[tuple[int, ...]]:
    """Positions (child-index paths) where either rule applies."""
    out = []
    if isinstance(t, Exp) and isinstance(t.base, (G, Mul)):
        out.append(here)
    for i, c in enumerate(_children(t)):
        out.extend(redex_positions(c, here + (i,)))
    return out


def rewrite_at(t: Term, pos: tuple[int, ...]) -> Term:
    """One rewrite step at ``pos``."""
    if pos:
        kids = list(_children(t))
        kids[pos[0]] = rewrite_at(kids[pos[0]], pos[1:])
        return _rebuild(t, kids)
    match t:
        case Exp(G(x), y):
            return G(CMul(x, y))
        case Exp(Mul(x, y), z):
            return Mul(Exp(x, z), Exp(y, z))
    raise ValueError("no redex at this position")


def normalize_random(t: Term, rng: random.Random, max_steps: int = 10**6) -> tuple[Term, int]:
    """Rewrite at a uniformly chosen redex until none is left."""
    steps = 0
    while True:
        positions = redex_positions(t)
        if not positions:
            return t, steps
        if steps >= max_steps:
            raise RuntimeError("rewriting did not terminate within the step cap")
        t = rewrite_at(t, rng.choice(positions))
        steps += 1


def verify_unifier(s: Substitution, eqs: Sequence[tuple[Term, Term]]) -> bool:
    return all(normalize_R(apply_subst(s, l)) == normalize_R(apply_subst(s, r)) for l, r in eqs)


# ---------------------------------------------------------------- enumeration

@lru_cache(maxsize=None)
def ground_terms(max_depth: int, constant: str = "a") -> tuple[Term, ...]:
    """Every ground term over {g, exp, *, @, constant} of depth <= max_depth (the constant has depth 1)."""
    if max_depth < 1:
        return ()
    a = Const(constant)
    if max_depth == 1:
        return (a,)
    smaller = ground_terms(max_depth - 1, constant)
    out: list[Term] = [a]
    out.extend(G(t) for t in smaller)
    for s, t in itertools.product(smaller, repeat=2):
        out.append(Exp(s, t))
        out.append(Mul(s, t))
        out.append(CMul(s, t))
    return tuple(out)


class _Values:
    """Hash-consed ground normal forms.

    Each normal form is a node ``(op, child ids...)`` numbered by first
    appearance, so combining values costs a dictionary lookup rather than a
    walk over a whole term.
    """

    def __init__(self):
        self.ids: dict[tuple, int] = {}
        self.nodes: list[tuple] = []
        self._exp: dict[tuple[int, int], int] = {}
        self._terms: dict[int, Term] = {}

    def node(self, key: tuple) -> int:
        i = self.ids.get(key)
        if i is None:
            i = self.ids[key] = len(self.nodes)
            self.nodes.append(key)
        return i

    def exp(self, base: int, e: int) -> int:
        r = self._exp.get((base, e))
        if r is None:
            n = self.nodes[base]
            if n[0] == "g":
                r = self.node(("g", self.node(("@", n[1], e))))
            elif n[0] == "*":
                r = self.node(("*", self.exp(n[1], e), self.exp(n[2], e)))
            else:
                r = self.node(("exp", base, e))
            self._exp[(base, e)] = r
        return r

    def apply(self, op: str, *args: int) -> int:
        return self.exp(*args) if op == "exp" else self.node((op, *args))

    def of_term(self, t: Term) -> int:
        """Normal form id of a ground term."""
        match t:
            case Const(name):
                return self.node(("const", name))
            case Exp(b, e):
                return self.exp(self.of_term(b), self.of_term(e))
            case Mul(a, b) | CMul(a, b):
                return self.node((_OP_NAME[type(t)], self.of_term(a), self.of_term(b)))
            case G(a) | Inv(a) | IInv(a):
                return self.node((_OP_NAME[type(t)], self.of_term(a)))
        raise ValueError(f"not a ground term: {t!r}")

    def term(self, i: int) -> Term:
        t = self._terms.get(i)
        if t is None:
            op, *kids = self.nodes[i]
            t = Const(kids[0]) if op == "const" else _OP_TYPE[op](*(self.term(k) for k in kids))
            self._terms[i] = t
        return t


_OP_TYPE = {"exp": Exp, "g": G, "*": Mul, "@": CMul, "inv": Inv, "i": IInv}
_OP_NAME = {v: k for k, v in _OP_TYPE.items()}


def _evaluate(t: Term, order: dict[str, int], domain: Sequence[int], values: _Values):
    """Normal-form ids of ``t`` for every assignment of its variables.

    Returns (variables, table) where table maps a tuple of value ids, one per
    variable in ``variables``, to the id of the instantiated normal form.
    """
    match t:
        case Var(name):
            return (name,), {(d,): d for d in domain}
        case Exp(a, b) | Mul(a, b) | CMul(a, b):
            kids = (a, b)
        case G(a) | Inv(a) | IInv(a):
            kids = (a,)
        case _:
            return (), {(): values.of_term(t)}
    evaluated = [_evaluate(k, order, domain, values) for k in kids]
    names = tuple(sorted({v for vs, _ in evaluated for v in vs}, key=order.__getitem__))
    proj = [[names.index(v) for v in vs] for vs, _ in evaluated]
    op = _OP_NAME[type(t)]
    table = {}
    for combo in itertools.product(domain, repeat=len(names)):
        ids = [tab[tuple(combo[p] for p in pr)] for (_, tab), pr in zip(evaluated, proj)]
        table[combo] = values.apply(op, *ids)
    return names, table


def _equation_relation(l: Term, r: Term, order: dict[str, int], domain: Sequence[int], values: _Values):
    lv, left = _evaluate(l, order, domain, values)
    rv, right = _evaluate(r, order, domain, values)
    by_nf: dict[int, list[tuple]] = {}
    for combo, nf in right.items():
        by_nf.setdefault(nf, []).append(combo)
    names = tuple(dict.fromkeys(lv + rv))
    rows: set[tuple] = set()
    for lcombo, nf in left.items():
        lmap = dict(zip(lv, lcombo))
        for rcombo in by_nf.get(nf, ()):
            rmap = dict(zip(rv, rcombo))
            if all(rmap[v] == lmap[v] for v in rmap.keys() & lmap.keys()):
                merged = {**lmap, **rmap}
                rows.add(tuple(merged[v] for v in names))
    return names, rows


def enumerate_unifiers(
    eqs: Sequence[tuple[Term, Term]],
    max_depth: int,
    *,
    cap: int = DEFAULT_CAP,
    constant: str = "a",
) -> list[dict[str, Term]]:
    """All ground unifiers with values of depth <= ``max_depth``, up to equality in the theory.

    Candidate values are the distinct normal forms of the ground terms of
    bounded depth; since only normal forms matter to ``verify_unifier``, the
    result is exhaustive over the bound. Raises BudgetExceeded when the
    candidate space (values ** variables) is larger than ``cap``.
    """
    names: list[str] = []
    for l, r in eqs:
        for v in term_vars(l) + term_vars(r):
            if v not in names:
                names.append(v)
    values = _Values()
    domain = list(dict.fromkeys(values.of_term(t) for t in ground_terms(max_depth, constant)))
    space = len(domain) ** len(names)
    if space > cap:
        raise BudgetExceeded(f"{space} candidates exceed the cap of {cap}")

    order = {v: i for i, v in enumerate(names)}
    partial: list[dict[str, int]] = [{}]
    for l, r in eqs:
        cols, rows = _equation_relation(l, r, order, domain, values)
        joined = []
        for p in partial:
            for row in rows:
                if all(p.get(v, val) == val for v, val in zip(cols, row)):
                    joined.append({**p, **dict(zip(cols, row))})
        partial = joined
        if not partial:
            return []
    out = []
    for p in partial:
        free = [v for v in names if v not in p]
        for combo in itertools.product(domain, repeat=len(free)):
            full = {**p, **dict(zip(free, combo))}
            out.append({v: values.term(full[v]) for v in names})
    return out
