import pytest
from hypothesis import given, strategies as st

from expunify import CMul, Const, Exp, G, Mul, ParseError, Var, apply_subst, format_term, parse_term
from expunify.state import FlatEquation, ProblemState, fresh_var
from expunify.terms import IInv, Inv, One, parse_equation, term_depth, term_vars


def test_parse_examples():
    assert parse_term("exp(g(A), B)") == Exp(G(Var("A")), Var("B"))
    assert parse_term("g(b @ c)") == G(CMul(Const("b"), Const("c")))
    assert parse_term("inv(1) @ i(b)") == CMul(Inv(One()), IInv(Const("b")))


def test_chains_are_left_associative():
    assert parse_term("X * Y * Z") == Mul(Mul(Var("X"), Var("Y")), Var("Z"))
    assert parse_term("X @ Y @ Z") == CMul(CMul(Var("X"), Var("Y")), Var("Z"))
    assert parse_term(" X*(Y*Z) ") == Mul(Var("X"), Mul(Var("Y"), Var("Z")))


def test_mixed_chain_rejected():
    with pytest.raises(ParseError, match="mixing"):
        parse_term("X * Y @ Z")
    assert parse_term("(X * Y) @ Z") == CMul(Mul(Var("X"), Var("Y")), Var("Z"))


@pytest.mark.parametrize("text", ["f(X)", "exp(X)", "g(X, Y)", "X *", "(X", "X Y", "", "_v0", "exp"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_term(text)


def test_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse_term("g(X) * h(Y)")
    assert err.value.pos == 7


def test_fresh_names_only_on_request():
    assert parse_term("_v3 @ W", allow_fresh=True) == CMul(Var("_v3"), Var("W"))


def test_parse_equation():
    assert parse_equation("X =? g(a)") == (Var("X"), G(Const("a")))
    with pytest.raises(ParseError):
        parse_equation("X = g(a)")


def test_apply_subst_examples():
    x, y = Var("X"), Var("Y")
    assert apply_subst({"X": G(Var("A"))}, Exp(x, y)) == Exp(G(Var("A")), y)
    t = parse_term("exp(X, g(Y)) * a")
    assert apply_subst({}, t) == t
    # simultaneous: Y inside X's image is not replaced again
    assert apply_subst({"X": y, "Y": G(Var("Z"))}, Mul(x, y)) == Mul(y, G(Var("Z")))


def test_fresh_var():
    st_ = ProblemState(active=[FlatEquation("U", Var("V"))])
    assert fresh_var(st_) == "_v0"
    assert fresh_var(st_) == "_v1"
    taken = ProblemState(active=[FlatEquation("_v0", G(Var("U")))])
    assert fresh_var(taken) != "_v0"


def test_vars_and_depth():
    t = parse_term("exp(g(B), A) * B")
    assert term_vars(t) == ["B", "A"]
    assert term_depth(t) == 4
    assert term_depth(Const("a")) == 1


NAMES = st.sampled_from(["A", "B", "X", "Y", "a", "b"])


def _leaf(name):
    return Var(name) if name[0].isupper() else Const(name)


terms = st.recursive(
    NAMES.map(_leaf),
    lambda sub: st.one_of(
        st.builds(Exp, sub, sub), st.builds(G, sub), st.builds(Mul, sub, sub), st.builds(CMul, sub, sub),
    ),
    max_leaves=12,
)
group_terms = st.recursive(
    st.one_of(NAMES.map(_leaf), st.just(One())),
    lambda sub: st.one_of(
        st.builds(Exp, sub, sub), st.builds(G, sub), st.builds(Mul, sub, sub), st.builds(CMul, sub, sub),
        st.builds(Inv, sub), st.builds(IInv, sub),
    ),
    max_leaves=12,
)


@given(group_terms)
def test_format_parse_roundtrip(t):
    assert parse_term(format_term(t)) == t


@given(terms, terms)
def test_idempotent_subst_is_idempotent(a, b):
    # bind X and Y to terms free of X and Y, which makes the substitution idempotent
    clean = {"X": Var("A"), "Y": Var("B")}
    s = {"X": apply_subst(clean, a), "Y": apply_subst(clean, b)}
    t = Mul(a, b)
    once = apply_subst(s, t)
    assert apply_subst(s, once) == once
