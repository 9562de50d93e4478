"""Shared machinery for the commutation and acceptance tests."""

import random

from expunify.engine import apply_f, apply_g, f_peaks, g_peaks, saturate_a_to_e
from expunify.flatten import flatten_problem
from expunify.gen import random_peak_problem
from expunify.graphs import find_failure
from expunify.rewrite import normalize_R
from expunify.solver import default_fuel, run
from expunify.terms import Var, apply_subst, is_fresh_name, term_vars


def peak_states(seed: int, count: int, depths=(1, 2)):
    """Failure-free reduced states holding both an (f)-peak and a (g)-peak.

    Each state is reached by running the main loop on a random problem up to
    the first point where both rules are applicable.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        eqs = random_peak_problem(rng, max_depth=depths[len(out) % len(depths)])
        st = flatten_problem(eqs)
        st.fuel = default_fuel(len(st.active))
        while find_failure(st) is None:
            if saturate_a_to_e(st):
                continue
            if f_peaks(st) and g_peaks(st):
                out.append((eqs, st.copy()))
                break
            if not (apply_f(st, checked=True) or apply_g(st, checked=True)):
                break
    return out


def both_orders(st):
    """Run (f)-then-(g) and (g)-then-(f) on copies of ``st`` and finish each."""
    pf = f_peaks(st)[0][0].lhs
    pg = g_peaks(st)[0][0].lhs
    fg = st.copy()
    assert apply_f(fg, pf, checked=True) and apply_g(fg, pg, checked=True)
    gf = st.copy()
    assert apply_g(gf, pg, checked=True) and apply_f(gf, pf, checked=True)
    return pf, pg, run(fg), run(gf)


def canonical(unifier):
    """Normal forms with generated variables renamed in order of first appearance."""
    ren = {}
    out = {}
    for v, t in unifier.items():
        t = normalize_R(t)
        for x in term_vars(t):
            if is_fresh_name(x) and x not in ren:
                ren[x] = Var(f"_p{len(ren)}")
        out[v] = apply_subst(ren, t)
    return out


def same_verdict(a, b) -> bool:
    if a.status != b.status:
        return False
    if not a.unifiable:
        return a.reason.code == b.reason.code
    return canonical(a.unifier) == canonical(b.unifier)
