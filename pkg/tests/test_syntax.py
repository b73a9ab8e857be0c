import random

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pfpc import prelude
from pfpc.generate import random_closed_term
from pfpc.surface import ParseError, parse_term, parse_type, pretty, pretty_type
from pfpc.syntax import (
    App, Arrow, Fold, Inj, Lam, Mu, Or, Pair, Prod, Sum, TVar, Var,
    alpha_eq, alpha_normalize, free_vars, subst_term, subst_type, types_equal,
)


def test_parse_identity_function():
    t = parse_term("fn x:1 => x")
    assert t == Lam("x", prelude.UNIT_T, Var("x"))


def test_parse_or_probability_exact():
    t = parse_term("tt or[1/2] ff")
    assert isinstance(t, Or)
    assert t.prob == Fraction(1, 2)
    # decimal literals are exact rationals, not floats
    assert parse_term("tt or[0.5] ff").prob == Fraction(1, 2)
    assert parse_term("tt or[0.1] ff").prob == Fraction(1, 10)


def test_parse_fold_zero():
    t = parse_term("fold[mu X. 1 + X] (inl ())")
    assert t == Fold(prelude.NAT_T, Inj(1, prelude.UNIT))
    # same Nat value as the canonical zero (which carries its injection type)
    assert prelude.nat_of_value(t) == 0


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_term("fn x:1 =>\n  (x,")
    assert err.value.line == 2


def test_type_parse_precedence():
    # * binds tighter than +, both tighter than ->; -> right-associative
    t = parse_type("Bool * Nat + 1 -> Bool -> 1")
    assert t == Arrow(
        Sum(Prod(prelude.BOOL_T, prelude.NAT_T), prelude.UNIT_T),
        Arrow(prelude.BOOL_T, prelude.UNIT_T),
    )


def test_named_type_sugar_roundtrip():
    for name in ("0", "1", "Bool", "Nat"):
        assert pretty_type(parse_type(name)) == name
    assert pretty_type(parse_type("Nat -> Nat")) == "Nat -> Nat"
    assert pretty_type(parse_type("mu X. 1 + X * X")) == "mu X. 1 + X * X"


# ---------------------------------------------------------------- substitution

def test_subst_var():
    v = prelude.TT
    assert subst_term(Var("x"), v, "x") == v


def test_subst_shadowing():
    lam = Lam("x", prelude.UNIT_T, Var("x"))
    assert subst_term(lam, prelude.TT, "x") == lam


def test_subst_app():
    t = App(Var("f"), Var("x"))
    assert subst_term(t, prelude.TT, "x") == App(Var("f"), prelude.TT)


def test_subst_capture_avoidance():
    # substituting a term mentioning y under a binder for y must rename
    body = Lam("y", prelude.BOOL_T, App(Var("x"), Var("y")))
    out = subst_term(body, Var("y"), "x")
    assert isinstance(out, Lam)
    assert out.var != "y"
    assert free_vars(out) == frozenset({"y"})


def test_subst_type_nat_unfolding():
    unfolded = subst_type(Sum(prelude.UNIT_T, TVar("X")), prelude.NAT_T, "X")
    assert unfolded == Sum(prelude.UNIT_T, prelude.NAT_T)


def test_subst_type_trivial_and_bound():
    b = prelude.BOOL_T
    assert subst_type(TVar("X"), b, "X") == b
    assert subst_type(Mu("X", TVar("X")), b, "X") == Mu("X", TVar("X"))


def test_subst_type_capture_avoidance():
    # [X := Y] inside mu Y. ... must not capture
    t = Mu("Y", Sum(TVar("X"), TVar("Y")))
    out = subst_type(t, TVar("Y"), "X")
    assert isinstance(out, Mu)
    assert out.var != "Y"
    assert types_equal(out, Mu("Z", Sum(TVar("Y"), TVar("Z"))))


# ---------------------------------------------------------------- alpha

def test_alpha_eq_binders():
    a = Lam("x", prelude.UNIT_T, Var("x"))
    b = Lam("y", prelude.UNIT_T, Var("y"))
    assert alpha_eq(a, b)
    assert alpha_normalize(a) == alpha_normalize(b)


def test_alpha_distinguishes_swapped():
    a = Lam("x", prelude.BOOL_T, Lam("y", prelude.BOOL_T, Var("x")))
    b = Lam("x", prelude.BOOL_T, Lam("y", prelude.BOOL_T, Var("y")))
    assert not alpha_eq(a, b)


def test_types_equal_alpha():
    assert types_equal(Mu("X", TVar("X")), Mu("Y", TVar("Y")))
    assert types_equal(prelude.NAT_T, Mu("N", Sum(prelude.UNIT_T, TVar("N"))))


def test_alpha_normalize_avoids_adversarial_free_names():
    # free variables spelled like canonical binder names must not collide
    t = Pair(Var("_x0"), Lam("a", prelude.BOOL_T,
                             Lam("b", prelude.BOOL_T, Var("a"))))
    out = alpha_normalize(t)
    assert free_vars(out) == frozenset({"_x0"})
    inner = out.snd
    assert inner.var != inner.body.var  # nested binders stay distinct
    assert inner.body.body == Var(inner.var)
    # same for types: a free "X0" must not capture
    ty = Sum(TVar("X0"), Mu("A", Mu("B", TVar("A"))))
    norm = subst_type(ty, ty, "unused")  # no-op, just exercise plumbing
    from pfpc.syntax import alpha_normalize_type, free_type_vars
    nty = alpha_normalize_type(ty)
    assert free_type_vars(nty) == frozenset({"X0"})
    assert isinstance(nty.right, Mu) and isinstance(nty.right.body, Mu)
    assert nty.right.var != nty.right.body.var
    assert nty.right.body.body == TVar(nty.right.var)


# ---------------------------------------------------------------- properties

@given(st.integers(0, 10**9))
@settings(max_examples=60, deadline=None)
def test_roundtrip_generated_terms(seed):
    rng = random.Random(seed)
    t = random_closed_term(rng, size=10)
    assert alpha_eq(parse_term(pretty(t)), t)


def test_roundtrip_corpus_style_sources():
    sources = [
        "fn x:1 => x",
        "(fn f:Bool -> Bool => f tt) (fn b:Bool => case b of inl x => tt | inr y => ff)",
        "fold[mu X. 1 + X] (inl ())",
        "tt or[1/3] ff or[2/5] tt",
        "let p = (tt, 3) in fst p",
        "fix[1 -> 1] (fn f:1 -> 1 => fn x:1 => f x)",
        "unfold 4",
        "inl[Bool + Nat] tt",
        "(fst (tt, ff), snd (0, 1))",
    ]
    for src in sources:
        t = parse_term(src)
        assert alpha_eq(parse_term(pretty(t)), t), src


@given(st.integers(0, 10**9))
@settings(max_examples=60, deadline=None)
def test_subst_free_variable_lemma(seed):
    # FV(M[V/x]) is contained in (FV(M) - {x}) | FV(V)
    rng = random.Random(seed)
    t = random_closed_term(rng, size=8)
    # graft a free variable in by replacing a numeral; crude but effective:
    m = App(Lam("q", prelude.NAT_T, t), Var("hole"))
    v = prelude.nat_value(2)
    out = subst_term(m, v, "hole")
    assert free_vars(out) <= (free_vars(m) - {"hole"}) | free_vars(v)


def test_numeral_sugar():
    assert pretty(prelude.nat_value(3)) == "3"
    assert alpha_eq(parse_term("3"), prelude.nat_value(3))
    assert prelude.nat_of_value(prelude.nat_value(7)) == 7


@given(st.integers(0, 10**9))
@settings(max_examples=80, deadline=None)
def test_type_roundtrip(seed):
    from pfpc.generate import random_type
    rng = random.Random(seed)
    t = random_type(rng, depth=3)
    assert types_equal(parse_type(pretty_type(t)), t)


def test_type_roundtrip_mu_types():
    for src in ("mu X. X", "mu X. 1 + X", "mu X. X -> 1",
                "mu X. 1 + Bool * X", "mu X. mu Y. X * Y + 1",
                "(mu X. X -> Bool) -> Nat"):
        t = parse_type(src)
        assert types_equal(parse_type(pretty_type(t)), t), src
