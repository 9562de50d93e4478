from expunify.engine import (
    apply_f, apply_g, apply_merge, apply_var_elim, f_peaks, g_peaks, is_reduced, saturate_a_to_e,
)
from expunify.graphs import find_failure
from expunify.state import FlatEquation, ProblemState
from expunify.terms import parse_term

from helpers import both_orders, peak_states, same_verdict


def state(*eqs, cold=()):
    def fe(text, marked=False):
        lhs, rhs = text.split("=")
        return FlatEquation(lhs.strip(), parse_term(rhs, allow_fresh=True), marked)
    return ProblemState(active=[fe(e) for e in eqs], cold=[fe(e, True) for e in cold])


def active(st):
    return [str(e) for e in st.active]


def cold(st):
    return [str(e) for e in st.cold]


# ---------------------------------------------------------------- rule (a)

def test_var_elim_keeps_smaller_name():
    st = state("U = V", "U = g(X)")
    assert apply_var_elim(st)
    assert st.aliases == {"V": "U"}
    assert active(st) == ["U =? g(X)"]


def test_var_elim_prefers_parsed_over_generated():
    st = state("_v0 = Z", "_v0 = g(X)")
    apply_var_elim(st)
    assert st.aliases == {"_v0": "Z"}
    assert active(st) == ["Z =? g(X)"]


def test_var_elim_lone_and_reflexive():
    st = state("U = V")
    assert apply_var_elim(st)
    assert st.aliases == {"V": "U"} and st.active == []
    st = state("U = U")
    assert apply_var_elim(st)
    assert st.aliases == {} and st.active == []


def test_var_elim_renames_cold_and_chains_aliases():
    st = state("V = W", "X = g(W)", cold=["W = exp(A, B)"])
    apply_var_elim(st)
    assert cold(st) == ["V =? exp(A, B)"]
    assert active(st) == ["X =? g(V)"]
    st2 = state("B = C", "A = B")
    apply_var_elim(st2)
    assert st2.aliases == {"C": "A", "B": "A"}


# ---------------------------------------------------------------- rules (b)-(e)

def test_merge_exp():
    st = state("U = exp(V, W)", "U = exp(X, Y)")
    assert apply_merge(st)
    assert active(st) == ["U =? exp(V, W)", "V =? X", "W =? Y"]
    assert cold(st) == ["U =? exp(X, Y)"]


def test_merge_g():
    st = state("U = g(V)", "U = g(W)")
    apply_merge(st)
    assert active(st) == ["U =? g(V)", "V =? W"]
    assert cold(st) == ["U =? g(W)"]


def test_merge_products_and_duplicates():
    st = state("U = X @ Y", "U = A @ B")
    apply_merge(st)
    assert active(st) == ["U =? X @ Y", "X =? A", "Y =? B"]
    st = state("U = X * Y", "U = X * Y")
    assert apply_merge(st)
    assert active(st) == ["U =? X * Y"]


def test_rule_names_in_trace():
    events = []
    st = state("U = V * W", "U = X * Y", "P = g(Q)", "P = g(R)")
    st.trace = events.append
    saturate_a_to_e(st)
    assert [e.rule for e in events] == ["b", "e", "a", "a", "a"]


def test_saturate_examples():
    st = state("U = V", "V = g(X)", "U = g(Y)")
    assert saturate_a_to_e(st)
    assert is_reduced(st)
    gdefs = [e for e in st.active if e.rhs.__class__.__name__ == "G"]
    assert len(gdefs) == 1
    assert st.aliases.keys() == {"V", "Y"}
    done = state("U = g(X)")
    assert not saturate_a_to_e(done)
    assert active(done) == ["U =? g(X)"]
    empty = state()
    assert not saturate_a_to_e(empty) and empty.active == []


def test_is_reduced():
    assert is_reduced(state("U = g(X)"))
    assert not is_reduced(state("U = g(X)", "U = g(Y)"))
    assert is_reduced(state("U = exp(V, W)", "U = X * Y"))
    assert not is_reduced(state("U = V"))


# ---------------------------------------------------------------- rules (f) and (g)

def test_rule_f():
    st = state("U = exp(V, W)", "U = g(X)")
    assert apply_f(st)
    assert active(st) == ["U =? g(X)", "V =? g(_v0)", "X =? _v0 @ W"]
    assert cold(st) == ["U =? exp(V, W)"]
    assert st.fresh_counter == 1


def test_rule_f_preconditions():
    pending_merge = state("U = exp(V, W)", "U = g(X)", "U = g(Y)")
    assert not apply_f(pending_merge)
    assert len(pending_merge.active) == 3
    assert not apply_f(state("U = g(X)", "V = exp(A, B)"))


def test_rule_g():
    st = state("U = exp(V, W)", "U = X * Y")
    assert apply_g(st)
    assert active(st) == ["U =? X * Y", "V =? _v0 * _v1", "X =? exp(_v0, W)", "Y =? exp(_v1, W)"]
    assert cold(st) == ["U =? exp(V, W)"]
    assert not apply_g(state("U = X * Y"))


def test_rule_g_then_saturate():
    st = state("U1 = exp(U2, W)", "U2 = A * B", "U1 = X * Y")
    assert apply_g(st)
    saturate_a_to_e(st)
    assert {"X =? exp(A, W)", "Y =? exp(B, W)"} <= set(active(st))


def test_rule_g_on_self_loop_state():
    st = state("U = exp(X, W)", "U = X * Y")
    assert find_failure(st).code == "P_CYCLE"
    assert not apply_g(st)
    assert apply_g(st, checked=True)
    assert [p[0].lhs for p in g_peaks(st)] == ["X"]


def test_fuel_decrements():
    st = state("U = exp(V, W)", "U = g(X)")
    st.fuel = 5
    apply_f(st)
    assert st.fuel == 4


def test_peaks_ordered_by_name():
    st = state("Z = exp(A, B)", "Z = g(C)", "Y = exp(D, E)", "Y = g(F)")
    assert [p[0].lhs for p in f_peaks(st)] == ["Y", "Z"]
    apply_f(st)
    assert "Y =? exp(D, E)" in cold(st)


# ---------------------------------------------------------------- commutation

def test_no_variable_is_both_peaks():
    for _, st in peak_states(seed=11, count=60):
        assert not ({p[0].lhs for p in f_peaks(st)} & {p[0].lhs for p in g_peaks(st)})


def test_f_and_g_commute():
    outcomes = set()
    for _, st in peak_states(seed=3, count=60):
        pf, pg, fg, gf = both_orders(st)
        assert pf != pg
        assert same_verdict(fg, gf)
        outcomes.add(fg.status)
    assert outcomes == {"unifiable", "fail"}
