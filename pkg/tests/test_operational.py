import random

from fractions import Fraction

import pytest

from pfpc import prelude
from pfpc.generate import random_closed_term
from pfpc.operational import (
    NotARedexError, PairL, decompose, is_value, plug, step, step_info,
)
from pfpc.surface import parse_term
from pfpc.syntax import App, Or, Pair, Unfold, alpha_eq


def test_is_value():
    assert is_value(parse_term("fn x:1 => x"))
    assert is_value(parse_term("fold[Nat] (inl ())"))
    assert not is_value(Unfold(parse_term("fold[Nat] (inl ())")))
    assert is_value(parse_term("(tt, ff)"))
    assert not is_value(parse_term("(tt, ff or[1/2] tt)"))


def test_decompose_top_level_beta():
    t = parse_term("(fn x:1 => x) ()")
    ctx, redex = decompose(t)
    assert ctx == ()
    assert redex == t


def test_decompose_under_pair():
    m = parse_term("tt or[1/2] ff")
    p = parse_term("ff")
    t = Pair(m, p)
    ctx, redex = decompose(t)
    assert ctx == (PairL(p),)
    assert redex == m
    assert plug(ctx, redex) == t


def test_decompose_proj_redex():
    t = parse_term("fst (tt, ff)")
    ctx, redex = decompose(t)
    assert ctx == ()
    assert redex == t


def test_decompose_value_is_none():
    assert decompose(parse_term("(tt, ff)")) is None


def test_step_beta():
    succs = step(parse_term("(fn x:1 => x) ()"))
    assert succs == [(Fraction(1), prelude.UNIT)]


def test_step_or():
    m, n = parse_term("tt"), parse_term("ff")
    succs = step(Or(Fraction(1, 2), m, n))
    assert succs == [(Fraction(1, 2), m), (Fraction(1, 2), n)]


def test_step_or_degenerate():
    m, n = parse_term("tt"), parse_term("ff")
    assert step(Or(Fraction(1), m, n)) == [(Fraction(1), m)]
    assert step(Or(Fraction(0), m, n)) == [(Fraction(1), n)]


def test_step_unfold_fold():
    payload = parse_term("inl[1 + Nat] ()")
    succs = step(Unfold(parse_term("fold[Nat] (inl[1 + Nat] ())")))
    assert len(succs) == 1
    assert succs[0][0] == 1
    assert alpha_eq(succs[0][1], payload)


def test_step_on_value_raises():
    with pytest.raises(NotARedexError):
        step(prelude.TT)


def test_step_info_flags_beta():
    _, was_beta = step_info(parse_term("(fn x:1 => x) ()"))
    assert was_beta
    _, was_beta = step_info(parse_term("tt or[1/2] ff"))
    assert not was_beta
    _, was_beta = step_info(parse_term("fst (tt, ff)"))
    assert not was_beta


def test_mass_conservation_and_determinism():
    rng = random.Random(7)
    for _ in range(200):
        t = random_closed_term(rng, size=10)
        if is_value(t):
            continue
        a = step(t)
        b = step(t)
        assert a == b
        assert sum(p for p, _ in a) == 1
        assert all(p > 0 for p, _ in a)
        assert len(a) <= 2


def test_unique_decomposition_plug_roundtrip():
    rng = random.Random(11)
    for _ in range(200):
        t = random_closed_term(rng, size=10)
        dec = decompose(t)
        if dec is None:
            assert is_value(t)
            continue
        ctx, redex = dec
        assert plug(ctx, redex) == t


def test_left_to_right_redex_order():
    # (E, M) before (V, E): the left component reduces first
    t = Pair(parse_term("tt or[1/2] ff"), parse_term("ff or[1/2] tt"))
    _, redex = decompose(t)
    assert redex == parse_term("tt or[1/2] ff")
    # E M before V E: the function position reduces first
    t2 = App(parse_term("(fn b:Bool => fn c:Bool => b) tt"), parse_term("ff or[1/2] tt"))
    _, redex2 = decompose(t2)
    assert redex2 == parse_term("(fn b:Bool => fn c:Bool => b) tt")
