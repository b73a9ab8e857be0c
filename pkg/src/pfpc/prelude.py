"""Derived types and terms built from the core calculus.

The calculus itself has no base types; the usual suspects are encoded:

    0    = mu X. X              (empty)
    1    = 0 -> 0               (unit; inhabited by the identity on 0)
    Bool = 1 + 1
    Nat  = mu X. 1 + X

Term recursion is not primitive either.  `fix_term` builds the standard
call-by-value fixpoint combinator at any function type A -> B by
self-application through the recursive type mu X. X -> (A -> B).
"""

from __future__ import annotations

from fractions import Fraction

from .syntax import (
    App, Arrow, Case, Fold, Inj, Lam, Let, Mu, Or, Prod, Sum, Term, TVar,
    Type, Unfold, Var, alpha_eq,
)

# ---------------------------------------------------------------- types

ZERO_T: Type = Mu("X", TVar("X"))
UNIT_T: Type = Arrow(ZERO_T, ZERO_T)
BOOL_T: Type = Sum(UNIT_T, UNIT_T)
NAT_T: Type = Mu("X", Sum(UNIT_T, TVar("X")))


def list_type(a: Type) -> Type:
    return Mu("X", Sum(UNIT_T, Prod(a, TVar("X"))))


def stream_type(a: Type) -> Type:
    return Mu("X", Arrow(UNIT_T, Prod(a, TVar("X"))))


# ---------------------------------------------------------------- values

UNIT: Term = Lam("x", ZERO_T, Var("x"))
FF: Term = Inj(1, UNIT, BOOL_T)
TT: Term = Inj(2, UNIT, BOOL_T)

# Nat unfolds to 1 + Nat; numerals keep their injections annotated so that
# unfolding a numeral leaves an inferable term.
NAT_UNFOLDED: Type = Sum(UNIT_T, NAT_T)
ZERO: Term = Fold(NAT_T, Inj(1, UNIT, NAT_UNFOLDED))
SUCC: Term = Lam("n", NAT_T, Fold(NAT_T, Inj(2, Var("n"), NAT_UNFOLDED)))


def nat_value(n: int) -> Term:
    """The numeral n as a Nat value (a chain of fold/inr around zero)."""
    if n < 0:
        raise ValueError("numerals are nonnegative")
    t = ZERO
    for _ in range(n):
        t = Fold(NAT_T, Inj(2, t, NAT_UNFOLDED))
    return t


def nat_of_value(t: Term) -> int | None:
    """Inverse of nat_value, up to alpha and optional annotations."""
    n = 0
    while True:
        match t:
            case Fold(ann, Inj(1, payload, inj_ann)):
                if _nat_anns_ok(ann, inj_ann) and alpha_eq(payload, UNIT):
                    return n
                return None
            case Fold(ann, Inj(2, rest, inj_ann)):
                if not _nat_anns_ok(ann, inj_ann):
                    return None
                t = rest
                n += 1
            case _:
                return None


def _nat_anns_ok(fold_ann: Type | None, inj_ann: Type | None) -> bool:
    from .syntax import types_equal

    if fold_ann is not None and not types_equal(fold_ann, NAT_T):
        return False
    if inj_ann is not None and not types_equal(inj_ann, Sum(UNIT_T, NAT_T)):
        return False
    return True


def is_unit_value(t: Term) -> bool:
    return alpha_eq(t, UNIT)


# ---------------------------------------------------------------- sugar

def make_let(var: str, bound: Term, body: Term) -> Term:
    return Let(var, bound, body)


def fix_term(dom: Type, cod: Type) -> Term:
    """The call-by-value fixpoint combinator at type A -> B.

    fix : ((A -> B) -> (A -> B)) -> (A -> B), built by self-application
    through T = mu X. X -> (A -> B):

        fix = fn F => (fn z:T => F (fn a:A => (unfold z) z a))
                      (fold[T] (fn z:T => F (fn a:A => (unfold z) z a)))
    """
    fun = Arrow(dom, cod)
    t = Mu("X", Arrow(TVar("X"), fun))
    inner = Lam(
        "z", t,
        App(Var("F"),
            Lam("a", dom, App(App(Unfold(Var("z")), Var("z")), Var("a")))),
    )
    return Lam("F", Arrow(fun, fun), App(inner, Fold(t, inner)))


def apply_fix(dom: Type, cod: Type, functional: Term) -> Term:
    return App(fix_term(dom, cod), functional)


# ---------------------------------------------------------------- programs

def coins_term() -> Term:
    """Repeated fair coin toss at type 1 -> 1: stop on in1, retry on in2."""
    body = Lam(
        "f", Arrow(UNIT_T, UNIT_T),
        Lam("x", UNIT_T,
            Case(Or(Fraction(1, 2), FF, TT),
                 "z", UNIT,
                 "z", App(Var("f"), Var("x")))),
    )
    return apply_fix(UNIT_T, UNIT_T, body)


def geometric_term() -> Term:
    """Count fair tosses until the first in1, at type 1 -> Nat.

    The result n occurs with probability 2^-n for n >= 1.
    """
    body = Lam(
        "f", Arrow(UNIT_T, NAT_T),
        Lam("x", UNIT_T,
            Case(Or(Fraction(1, 2), FF, TT),
                 "z", nat_value(1),
                 "z", Fold(NAT_T, Inj(2, App(Var("f"), Var("x")), NAT_UNFOLDED)))),
    )
    return apply_fix(UNIT_T, NAT_T, body)


def omega_term() -> Term:
    """A closed diverging term of type 1 (self-application through mu X. X -> 1)."""
    t = Mu("X", Arrow(TVar("X"), UNIT_T))
    w = Lam("w", t, App(Unfold(Var("w")), Var("w")))
    return App(w, Fold(t, w))
