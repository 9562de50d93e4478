"""Inference rules (a)-(g) over a ProblemState, mutated in place."""

from __future__ import annotations

from .graphs import find_failure
from .state import FlatEquation, ProblemState, fresh_var, root_of
from .terms import CMul, Exp, G, Mul, Var, apply_subst, name_key

__all__ = [
    "apply_var_elim", "apply_merge", "apply_f", "apply_g", "saturate_a_to_e", "is_reduced",
    "f_peaks", "g_peaks",
]

_MERGE_RULE = {"*": "b", "@": "c", "exp": "d", "g": "e"}


def _rename(eq: FlatEquation, old: str, new: str) -> FlatEquation:
    lhs = new if eq.lhs == old else eq.lhs
    return FlatEquation(lhs, apply_subst({old: Var(new)}, eq.rhs), eq.marked)


def apply_var_elim(state: ProblemState) -> bool:
    """Rule (a): eliminate ``U =? V`` by identifying the two variables.

    The variable that sorts later (generated names after parsed ones) is the
    one eliminated; it is recorded in ``aliases``.
    """
    changed = False
    while True:
        eq = next((e for e in state.active if isinstance(e.rhs, Var)), None)
        if eq is None:
            return changed
        changed = True
        state.active.remove(eq)
        u, v = eq.lhs, eq.rhs.name
        if u == v:
            state.emit("a", [eq], [])
            continue
        old, new = (u, v) if name_key(u) > name_key(v) else (v, u)

        produced = []
        active: list[FlatEquation] = []
        keys = set()
        for e in state.active:
            r = _rename(e, old, new)
            if r != e:
                produced.append(r)
            if isinstance(r.rhs, Var) and r.rhs.name == r.lhs:
                continue
            if r.key not in keys:
                keys.add(r.key)
                active.append(r)
        cold: list[FlatEquation] = []
        for e in state.cold:
            r = _rename(e, old, new)
            if r.key not in keys:
                keys.add(r.key)
                cold.append(r)
        state.active, state.cold = active, cold
        for k, target in state.aliases.items():
            if target == old:
                state.aliases[k] = new
        state.aliases[old] = new
        state.emit("a", [eq], produced)


def _arg_equations(keep: FlatEquation, other: FlatEquation) -> list[FlatEquation]:
    match keep.rhs, other.rhs:
        case (Exp(Var(v), Var(w)), Exp(Var(x), Var(y))) | (Mul(Var(v), Var(w)), Mul(Var(x), Var(y))) \
                | (CMul(Var(v), Var(w)), CMul(Var(x), Var(y))):
            return [FlatEquation(v, Var(x)), FlatEquation(w, Var(y))]
        case G(Var(v)), G(Var(w)):
            return [FlatEquation(v, Var(w))]
    raise ValueError(f"cannot merge {keep} with {other}")


def apply_merge(state: ProblemState) -> bool:
    """Rules (b)-(e): decompose two active equations with the same lhs and root.

    The older equation stays active; the newer one moves to cold storage.
    """
    changed = False
    seen: dict[tuple[str, str], FlatEquation] = {}
    for eq in list(state.active):
        root = root_of(eq.rhs)
        if root not in _MERGE_RULE:
            continue
        keep = seen.setdefault((eq.lhs, root), eq)
        if keep is eq:
            continue
        changed = True
        state.to_cold(eq)
        produced = [p for p in map(state.add_active, _arg_equations(keep, eq)) if p is not None]
        state.emit(_MERGE_RULE[root], [keep, eq], produced)
    return changed


def saturate_a_to_e(state: ProblemState) -> bool:
    """Apply rules (a)-(e) to a fixpoint. Returns whether anything changed."""
    changed = False
    while True:
        a = apply_var_elim(state)
        m = apply_merge(state)
        if not (a or m):
            return changed
        changed = True


def is_reduced(state: ProblemState) -> bool:
    """True iff none of rules (a)-(e) applies."""
    seen = set()
    for eq in state.active:
        root = root_of(eq.rhs)
        if root == "var":
            return False
        if root in _MERGE_RULE:
            if (eq.lhs, root) in seen:
                return False
            seen.add((eq.lhs, root))
    return True


def _peaks(state: ProblemState, other_root: type) -> list[tuple[FlatEquation, FlatEquation]]:
    exps: dict[str, FlatEquation] = {}
    others: dict[str, FlatEquation] = {}
    for eq in state.active:
        if isinstance(eq.rhs, Exp):
            exps.setdefault(eq.lhs, eq)
        elif isinstance(eq.rhs, other_root):
            others.setdefault(eq.lhs, eq)
    return [(exps[u], others[u]) for u in sorted(exps.keys() & others.keys(), key=name_key)]


def f_peaks(state: ProblemState) -> list[tuple[FlatEquation, FlatEquation]]:
    """(exp-equation, g-equation) pairs, ordered by peak variable."""
    return _peaks(state, G)


def g_peaks(state: ProblemState) -> list[tuple[FlatEquation, FlatEquation]]:
    """(exp-equation, product-equation) pairs, ordered by peak variable."""
    return _peaks(state, Mul)


def _select(peaks, peak: str | None):
    for pair in peaks:
        if peak is None or pair[0].lhs == peak:
            return pair
    return None


def _ready(state: ProblemState, checked: bool) -> bool:
    return checked or (is_reduced(state) and find_failure(state) is None)


def apply_f(state: ProblemState, peak: str | None = None, *, checked: bool = False) -> bool:
    """Rule (f) on the smallest (f)-peak, or on ``peak`` if given.

    Only fires on a reduced, failure-free state; pass ``checked=True`` when
    the caller has already established that.
    """
    if not _ready(state, checked):
        return False
    pair = _select(f_peaks(state), peak)
    if pair is None:
        return False
    exp_eq, g_eq = pair
    v, w = exp_eq.rhs.base.name, exp_eq.rhs.exponent.name
    x = g_eq.rhs.arg.name
    state.to_cold(exp_eq)
    v1 = fresh_var(state)
    produced = [
        state.add_active(FlatEquation(v, G(Var(v1)))),
        state.add_active(FlatEquation(x, CMul(Var(v1), Var(w)))),
    ]
    state.fuel -= 1
    state.emit("f", [exp_eq, g_eq], [p for p in produced if p is not None])
    return True


def apply_g(state: ProblemState, peak: str | None = None, *, checked: bool = False) -> bool:
    """Rule (g) on the smallest (g)-peak, or on ``peak`` if given."""
    if not _ready(state, checked):
        return False
    pair = _select(g_peaks(state), peak)
    if pair is None:
        return False
    exp_eq, mul_eq = pair
    v, w = exp_eq.rhs.base.name, exp_eq.rhs.exponent.name
    x, y = mul_eq.rhs.left.name, mul_eq.rhs.right.name
    state.to_cold(exp_eq)
    v1 = fresh_var(state)
    v2 = fresh_var(state)
    produced = [
        state.add_active(FlatEquation(v, Mul(Var(v1), Var(v2)))),
        state.add_active(FlatEquation(x, Exp(Var(v1), Var(w)))),
        state.add_active(FlatEquation(y, Exp(Var(v2), Var(w)))),
    ]
    state.fuel -= 1
    state.emit("g", [exp_eq, mul_eq], [p for p in produced if p is not None])
    return True
