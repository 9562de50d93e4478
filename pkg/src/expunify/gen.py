"""Seeded random terms and problems for fuzzing and property tests."""

from __future__ import annotations

import random
import string

from .terms import CMul, Const, Exp, G, IInv, Inv, Mul, One, Term, Var

__all__ = ["random_term", "random_problem", "random_peak_problem", "random_e1_term"]

VAR_NAMES = tuple(string.ascii_uppercase)
_OPS = ("exp", "exp", "g", "*", "*", "@")


def random_term(
    rng: random.Random,
    names: tuple[str, ...],
    max_depth: int,
    *,
    constants: tuple[str, ...] = (),
    leaf_prob: float = 0.35,
) -> Term:
    """A term of depth <= max_depth (leaves have depth 1) over exp/g/*/@."""
    if max_depth <= 1 or rng.random() < leaf_prob:
        if constants and rng.random() < 0.1:
            return Const(rng.choice(constants))
        return Var(rng.choice(names))
    sub = lambda: random_term(rng, names, max_depth - 1, constants=constants, leaf_prob=leaf_prob)  # noqa: E731
    match rng.choice(_OPS):
        case "exp":
            return Exp(sub(), sub())
        case "g":
            return G(sub())
        case "*":
            return Mul(sub(), sub())
        case _:
            return CMul(sub(), sub())


def random_problem(
    rng: random.Random,
    *,
    max_equations: int = 10,
    max_vars: int = 12,
    max_depth: int = 4,
    constants: tuple[str, ...] = (),
    peak_bias: float = 0.5,
) -> list[tuple[Term, Term]]:
    """Random equations; with probability ``peak_bias`` an equation pits an
    exp-rooted term against a g- or *-rooted one, which is what drives the
    (f) and (g) rules."""
    n_vars = rng.randint(1, max_vars)
    names = VAR_NAMES[:n_vars]
    eqs = []
    for _ in range(rng.randint(1, max_equations)):
        if max_depth >= 2 and rng.random() < peak_bias:
            sub = lambda: random_term(rng, names, max_depth - 1, constants=constants)  # noqa: E731
            left = Exp(sub(), sub())
            right = G(sub()) if rng.random() < 0.5 else Mul(sub(), sub())
            eqs.append((left, right))
            continue
        if rng.random() < 0.5:
            left: Term = Var(rng.choice(names))
        else:
            left = random_term(rng, names, max_depth, constants=constants)
        right = random_term(rng, names, max_depth, constants=constants)
        eqs.append((left, right))
    return eqs


def random_peak_problem(rng: random.Random, *, max_depth: int = 2, n_vars: int = 26) -> list[tuple[Term, Term]]:
    """One exp-vs-g and one exp-vs-product equation over a wide variable pool.

    Leaves rarely coincide, so most instances are solvable and reach a state
    with an (f)-peak and a (g)-peak side by side.
    """
    names = VAR_NAMES[:n_vars]
    sub = lambda: random_term(rng, names, max_depth)  # noqa: E731
    eqs = [(Exp(sub(), sub()), G(sub())), (Exp(sub(), sub()), Mul(sub(), sub()))]
    rng.shuffle(eqs)
    return eqs


def random_e1_term(rng: random.Random, max_depth: int, names: tuple[str, ...] = ("b", "c")) -> Term:
    """Ground term over the full group signature, constants drawn from ``names``."""
    if max_depth <= 1 or rng.random() < 0.3:
        return One() if rng.random() < 0.15 else Const(rng.choice(names))
    sub = lambda: random_e1_term(rng, max_depth - 1, names)  # noqa: E731
    match rng.randrange(7):
        case 0:
            return Exp(sub(), sub())
        case 1:
            return G(sub())
        case 2:
            return Mul(sub(), sub())
        case 3:
            return CMul(sub(), sub())
        case 4:
            return Inv(sub())
        case 5:
            return IInv(sub())
        case _:
            return Exp(G(sub()), sub())
