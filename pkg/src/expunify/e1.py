"""Normal forms when ``*`` and ``@`` are abelian groups, and the gadget witnesses.

``<*, inv, 1>`` and ``<@, i, 1>`` are abelian groups sharing the unit ``1``.
Together with the exponentiation rules::

    exp(X, 1) -> X              exp(1, Z) -> 1
    exp(inv(Z), X) -> inv(exp(Z, X))
    exp(g(X), Y) -> g(X @ Y)    exp(X * Y, Z) -> exp(X, Z) * exp(Y, Z)

this is AC-convergent, so flattened, sorted, cancelled products give
canonical representatives. Only checking is offered here; unification in this
theory is undecidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Sequence

from .terms import (
    CMul, Const, Exp, G, IInv, Inv, Mul, One, Substitution, Term, Var, apply_subst,
)

__all__ = [
    "ACMul", "ACCMul", "ACTerm", "e1_normalize", "e1_equal", "ac_to_term", "circ",
    "check_g_injectivity", "step_equation", "step_witness", "transfer_equations",
    "transfer_witness", "build_mult_gadget", "build_add_gadget", "check_assignment",
]


@dataclass(frozen=True, slots=True)
class ACMul:
    args: tuple


@dataclass(frozen=True, slots=True)
class ACCMul:
    args: tuple


ACTerm = object  # a Term whose products are ACMul/ACCMul nodes


@dataclass(frozen=True)
class _Group:
    prod: type
    inv: type


_STAR = _Group(ACMul, Inv)
_CIRC = _Group(ACCMul, IInv)

_RANK = {One: 0, Const: 1, Var: 2, G: 3, Exp: 4, Inv: 5, IInv: 6, ACMul: 7, ACCMul: 8}


@lru_cache(maxsize=1 << 16)
def _order_key(t) -> tuple:
    match t:
        case Var(name) | Const(name):
            return (_RANK[type(t)], name, 0, ())
        case One():
            return (0, "", 0, ())
        case Exp(a, b):
            kids = (a, b)
        case G(a) | Inv(a) | IInv(a):
            kids = (a,)
        case ACMul(args) | ACCMul(args):
            kids = args
        case _:
            raise TypeError(f"not an AC term: {t!r}")
    return (_RANK[type(t)], "", len(kids), tuple(_order_key(k) for k in kids))


def _product(group: _Group, items) -> object:
    counts: dict[object, int] = {}
    for item in items:
        factors = item.args if isinstance(item, group.prod) else (item,)
        for f in factors:
            if isinstance(f, One):
                continue
            if isinstance(f, group.inv):
                counts[f.arg] = counts.get(f.arg, 0) - 1
            else:
                counts[f] = counts.get(f, 0) + 1
    out = []
    for base, n in counts.items():
        out.extend([base] * n if n > 0 else [group.inv(base)] * -n)
    if not out:
        return One()
    if len(out) == 1:
        return out[0]
    return group.prod(tuple(sorted(out, key=_order_key)))


def _inverse(group: _Group, t) -> object:
    if isinstance(t, One):
        return t
    if isinstance(t, group.inv):
        return t.arg
    if isinstance(t, group.prod):
        return _product(group, [_inverse(group, a) for a in t.args])
    return group.inv(t)


def _exp(base, e) -> object:
    if isinstance(e, One):
        return base
    match base:
        case One():
            return base
        case Inv(z):
            return _inverse(_STAR, _exp(z, e))
        case G(x):
            return G(_product(_CIRC, [x, e]))
        case ACMul(args):
            return _product(_STAR, [_exp(a, e) for a in args])
    return Exp(base, e)


@lru_cache(maxsize=1 << 16)
def e1_normalize(t) -> object:
    """Canonical normal form; accepts plain terms or already-normalized AC terms."""
    match t:
        case Var() | Const() | One():
            return t
        case G(a):
            return G(e1_normalize(a))
        case Exp(b, e):
            return _exp(e1_normalize(b), e1_normalize(e))
        case Mul(a, b):
            return _product(_STAR, [e1_normalize(a), e1_normalize(b)])
        case CMul(a, b):
            return _product(_CIRC, [e1_normalize(a), e1_normalize(b)])
        case Inv(a):
            return _inverse(_STAR, e1_normalize(a))
        case IInv(a):
            return _inverse(_CIRC, e1_normalize(a))
        case ACMul(args):
            return _product(_STAR, [e1_normalize(a) for a in args])
        case ACCMul(args):
            return _product(_CIRC, [e1_normalize(a) for a in args])
    raise TypeError(f"not a term: {t!r}")


def e1_equal(s: Term, t: Term) -> bool:
    return e1_normalize(s) == e1_normalize(t)


def ac_to_term(t) -> Term:
    """Back to binary syntax, products as left-nested chains."""
    match t:
        case ACMul(args):
            return reduce(Mul, map(ac_to_term, args))
        case ACCMul(args):
            return reduce(CMul, map(ac_to_term, args))
        case Exp(a, b):
            return Exp(ac_to_term(a), ac_to_term(b))
        case G(a) | Inv(a) | IInv(a):
            return type(t)(ac_to_term(a))
    return t


def check_assignment(s: Substitution, eqs: Sequence[tuple[Term, Term]]) -> bool:
    return all(e1_equal(apply_subst(s, l), apply_subst(s, r)) for l, r in eqs)


def check_g_injectivity(s: Term, t: Term) -> bool:
    """g(s) = g(t) implies s = t. Expected to hold for every pair."""
    return not e1_equal(G(s), G(t)) or e1_equal(s, t)


# ---------------------------------------------------------------- gadgets

B, C = Const("b"), Const("c")


def circ(u: Term, i: int) -> Term:
    """The i-fold @-power of u; negative powers use i(u), and circ(u, 0) is 1."""
    if i == 0:
        return One()
    x = u if i > 0 else IInv(u)
    return reduce(CMul, [x] * abs(i))


def _star_product(factors: Sequence[Term]) -> Term:
    return reduce(Mul, factors) if factors else One()


def _monomial(p: int, q: int) -> Term:
    """circ(b, p) @ circ(c, q), dropping unit factors."""
    parts = [t for t in (circ(B, p), circ(C, q)) if not isinstance(t, One)]
    return reduce(CMul, parts) if parts else One()


def step_equation(m: int, base: Term = B) -> tuple[Term, Term]:
    """X * g(Y) =? exp(X, base) * g(circ(base, m))."""
    return (Mul(Var("X"), G(Var("Y"))), Mul(Exp(Var("X"), base), G(circ(base, m))))


def step_witness(n: int, m: int, base: Term = B) -> dict[str, Term]:
    """Telescoping solution of ``step_equation(m)`` with Y = circ(base, n)."""
    if n > m:
        x = _star_product([G(circ(base, k)) for k in range(n - 1, m - 1, -1)])
    elif n < m:
        x = Inv(_star_product([G(circ(base, k)) for k in range(n, m)]))
    else:
        x = One()
    return {"X": x, "Y": circ(base, n)}


def _scaling_witness(j: int, k: int) -> Term:
    # solves exp(W, circ(c, k)) * g(circ(b, j)) = exp(W, b) * g(circ(c, j*k))
    return _star_product([G(_monomial(p, k * (j - 1 - p))) for p in range(j)])


def _counter_witness(n: int) -> Term:
    # solves W * g(circ(c, n)) = exp(W, c) * g(1)
    return _star_product([G(circ(C, q)) for q in range(n)])


def transfer_equations(j: int) -> list[tuple[Term, Term]]:
    """Two equations forcing U = circ(c, j) from the b-power circ(b, j)."""
    x, u, z = Var("X"), Var("U"), Var("Z")
    return [
        (Mul(Exp(x, C), G(circ(B, j))), Mul(Exp(x, B), G(u))),
        (Mul(z, G(u)), Mul(Exp(z, C), G(One()))),
    ]


def transfer_witness(j: int) -> dict[str, Term]:
    if j < 0:
        raise ValueError("j must be non-negative")
    return {"X": _scaling_witness(j, 1), "U": circ(C, j), "Z": _counter_witness(j)}


def build_mult_gadget(i: int, j: int) -> tuple[list[tuple[Term, Term]], dict[str, Term]]:
    """Equations forcing Z = circ(b, i*j), with a satisfying assignment."""
    if i < 1 or j < 1:
        raise ValueError("i and j must be at least 1")
    w1, w2, w3, w4, w5 = (Var(f"W{k}") for k in range(1, 6))
    x2, z2, z = Var("X2"), Var("Z2"), Var("Z")
    g1 = G(One())
    eqs = [
        (Mul(Exp(w1, C), G(circ(B, i))), Mul(Exp(w1, B), G(x2))),
        (Mul(w2, G(x2)), Mul(Exp(w2, C), g1)),
        (Mul(Exp(w3, x2), G(circ(B, j))), Mul(Exp(w3, B), G(z2))),
        (Mul(w4, G(z2)), Mul(Exp(w4, C), g1)),
        (Mul(Exp(w5, C), G(z)), Mul(Exp(w5, B), G(z2))),
    ]
    witness = {
        "W1": _scaling_witness(i, 1),
        "W2": _counter_witness(i),
        "W3": _scaling_witness(j, i),
        "W4": _counter_witness(i * j),
        "W5": _scaling_witness(i * j, 1),
        "X2": circ(C, i),
        "Z2": circ(C, i * j),
        "Z": circ(B, i * j),
    }
    return eqs, witness


def build_add_gadget(i: int, j: int) -> tuple[Term, Term]:
    return CMul(circ(B, i), circ(B, j)), circ(B, i + j)
