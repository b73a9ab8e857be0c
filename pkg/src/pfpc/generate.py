"""Type-directed random generation of well-typed closed terms.

Used by the preservation/progress property suites and by the soundness and
adequacy checks on the recursion-free fragment.  Generated terms never
contain the fixpoint combinator and only use recursive types through their
constructors (numerals, folds of data), so every generated term is strongly
normalizing; probabilistic choice, beta redexes, cases and projections all
occur with tunable frequency.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import prelude
from .syntax import (
    App, Arrow, Case, Fold, Inj, Lam, Mu, Or, Pair, Prod, Proj, Sum, Term,
    Type, Unfold, Var, subst_type, types_equal,
)
from .typecheck import is_empty_type

_BASE_TYPES: tuple[Type, ...] = (prelude.UNIT_T, prelude.BOOL_T, prelude.NAT_T)

_PROBS: tuple[Fraction, ...] = (
    Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3),
    Fraction(1, 4), Fraction(3, 4), Fraction(2, 5),
)


def random_type(rng: random.Random, depth: int = 2) -> Type:
    if depth <= 0 or rng.random() < 0.5:
        return rng.choice(_BASE_TYPES)
    roll = rng.random()
    a = random_type(rng, depth - 1)
    b = random_type(rng, depth - 1)
    if roll < 0.40:
        return Prod(a, b)
    if roll < 0.75:
        return Sum(a, b)
    return Arrow(a, b)


class _Gen:
    def __init__(self, rng: random.Random, allow_or: bool):
        self.rng = rng
        self.allow_or = allow_or
        self.counter = 0

    def fresh(self) -> str:
        self.counter += 1
        return f"v{self.counter}"

    # ---------------------------------------------------------------- values

    def value(self, ty: Type, depth: int) -> Term:
        rng = self.rng
        if is_empty_type(ty):
            raise ValueError(f"cannot synthesize a value of the empty type {ty}")
        if types_equal(ty, prelude.UNIT_T):
            return prelude.UNIT
        if types_equal(ty, prelude.BOOL_T):
            return rng.choice((prelude.TT, prelude.FF))
        if types_equal(ty, prelude.NAT_T):
            return prelude.nat_value(rng.randint(0, 3))
        match ty:
            case Prod(a, b):
                return Pair(self.value(a, depth - 1), self.value(b, depth - 1))
            case Sum(a, b):
                index = rng.choice((1, 2))
                side = a if index == 1 else b
                return Inj(index, self.value(side, depth - 1), ty)
            case Arrow(d, c):
                x = self.fresh()
                if depth <= 0 or types_equal(d, c) and rng.random() < 0.3:
                    body: Term = Var(x) if types_equal(d, c) else self.value(c, 0)
                else:
                    body = self.term({x: d}, c, max(1, depth))
                return Lam(x, d, body)
            case Mu(v, body):
                return Fold(ty, self.value(subst_type(body, ty, v), depth - 1))
        raise ValueError(f"cannot synthesize a value of {ty}")

    # ---------------------------------------------------------------- terms

    def term(self, env: dict[str, Type], ty: Type, size: int) -> Term:
        rng = self.rng
        if size <= 1:
            return self.leaf(env, ty)
        routes = ["value", "beta", "case", "proj"]
        if self.allow_or:
            routes += ["or", "or"]
        # the unit type is an arrow with empty domain; treat it as atomic so
        # no route tries to synthesize a body of the empty type
        if isinstance(ty, Arrow) and not types_equal(ty, prelude.UNIT_T):
            routes.append("lam")
        if isinstance(ty, Prod):
            routes += ["pair", "pair"]
        if isinstance(ty, Sum):
            routes.append("inj")
        if isinstance(ty, Mu):
            routes.append("fold")
        if types_equal(ty, Sum(prelude.UNIT_T, prelude.NAT_T)):
            routes.append("unfold-nat")
        route = rng.choice(routes)
        half = max(1, size // 2)
        if route == "or":
            p = rng.choice(_PROBS)
            return Or(p, self.term(env, ty, half), self.term(env, ty, half))
        if route == "beta":
            arg_ty = random_type(rng, 1)
            x = self.fresh()
            body = self.term({**env, x: arg_ty}, ty, half)
            arg = self.term(env, arg_ty, half)
            return App(Lam(x, arg_ty, body), arg)
        if route == "case":
            s1 = random_type(rng, 1)
            s2 = random_type(rng, 1)
            scrut = self.term(env, Sum(s1, s2), half)
            x1, x2 = self.fresh(), self.fresh()
            n1 = self.term({**env, x1: s1}, ty, half)
            n2 = self.term({**env, x2: s2}, ty, half)
            return Case(scrut, x1, n1, x2, n2)
        if route == "proj":
            other = random_type(rng, 1)
            index = rng.choice((1, 2))
            pair_ty = Prod(ty, other) if index == 1 else Prod(other, ty)
            return Proj(index, self.term(env, pair_ty, size - 1))
        if route == "lam" and isinstance(ty, Arrow):
            x = self.fresh()
            return Lam(x, ty.dom, self.term({**env, x: ty.dom}, ty.cod, size - 1))
        if route == "pair" and isinstance(ty, Prod):
            return Pair(self.term(env, ty.left, half), self.term(env, ty.right, half))
        if route == "inj" and isinstance(ty, Sum):
            index = rng.choice((1, 2))
            side = ty.left if index == 1 else ty.right
            return Inj(index, self.term(env, side, size - 1), ty)
        if route == "fold" and isinstance(ty, Mu):
            return Fold(ty, self.term(env, subst_type(ty.body, ty, ty.var), size - 1))
        if route == "unfold-nat":
            return Unfold(self.term(env, prelude.NAT_T, size - 1))
        return self.leaf(env, ty)

    def leaf(self, env: dict[str, Type], ty: Type) -> Term:
        rng = self.rng
        fitting = [x for x, t in env.items() if types_equal(t, ty)]
        if fitting and rng.random() < 0.6:
            return Var(rng.choice(fitting))
        return self.value(ty, 2)


def random_term(rng: random.Random, ty: Type, size: int, *,
                allow_or: bool = True) -> Term:
    """A closed well-typed term of the given type."""
    return _Gen(rng, allow_or).term({}, ty, size)


def random_closed_term(rng: random.Random, size: int = 12, *,
                       allow_or: bool = True) -> Term:
    return random_term(rng, random_type(rng), size, allow_or=allow_or)
