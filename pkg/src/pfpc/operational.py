"""Small-step call-by-value reduction with weighted successors.

A non-value closed term decomposes uniquely as E[r] where E is an evaluation
context (a stack of frames, leftmost-innermost order) and r is a redex:
a beta application, a projection of a value pair, a case of an injected
value, an unfold of a folded value, or a probabilistic choice.  Choices are
the only probabilistic redexes; everything else reduces with weight 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .syntax import (
    App, Case, Fold, Inj, Lam, Let, Or, Pair, Proj, Term, Type, Unfold, Var,
    subst_term,
)

WeightedSuccessors = list[tuple[Fraction, Term]]


class StuckTermError(Exception):
    """A closed term that is neither a value nor decomposable.

    Unreachable for well-typed input; raised loudly so evaluator bugs and
    type-safety violations surface instead of masquerading as values.
    """


class NotARedexError(Exception):
    pass


def is_value(m: Term) -> bool:
    """Match the value grammar: x, pairs/injections/folds of values, lambdas."""
    match m:
        case Var(_) | Lam(_, _, _):
            return True
        case Pair(a, b):
            return is_value(a) and is_value(b)
        case Inj(_, v, _) | Fold(_, v):
            return is_value(v)
        case _:
            return False


# ---------------------------------------------------------------- contexts

@dataclass(frozen=True)
class PairL:
    right: Term


@dataclass(frozen=True)
class PairR:
    left: Term  # a value


@dataclass(frozen=True)
class ProjF:
    index: int


@dataclass(frozen=True)
class AppL:
    arg: Term


@dataclass(frozen=True)
class AppR:
    fn: Term  # a value


@dataclass(frozen=True)
class InjF:
    index: int
    ann: Optional[Type]


@dataclass(frozen=True)
class CaseF:
    left_var: str
    left: Term
    right_var: str
    right: Term


@dataclass(frozen=True)
class FoldF:
    ann: Optional[Type]


@dataclass(frozen=True)
class UnfoldF:
    pass


Frame = Union[PairL, PairR, ProjF, AppL, AppR, InjF, CaseF, FoldF, UnfoldF]
EvalContext = tuple[Frame, ...]


def plug(ctx: EvalContext, m: Term) -> Term:
    """Fill the hole: plug(decompose(t)) == t."""
    for frame in reversed(ctx):
        match frame:
            case PairL(right):
                m = Pair(m, right)
            case PairR(left):
                m = Pair(left, m)
            case ProjF(i):
                m = Proj(i, m)
            case AppL(arg):
                m = App(m, arg)
            case AppR(fn):
                m = App(fn, m)
            case InjF(i, ann):
                m = Inj(i, m, ann)
            case CaseF(x1, n1, x2, n2):
                m = Case(m, x1, n1, x2, n2)
            case FoldF(ann):
                m = Fold(ann, m)
            case UnfoldF():
                m = Unfold(m)
    return m


def _is_redex(m: Term) -> bool:
    match m:
        case App(f, a):
            return is_value(f) and is_value(a)
        case Proj(_, t) | Unfold(t):
            return is_value(t)
        case Case(s, _, _, _, _):
            return is_value(s)
        case Or(_, _, _):
            return True
        case _:
            return False


def decompose(m: Term) -> Optional[tuple[EvalContext, Term]]:
    """Unique decomposition of a closed term: None for values, else (E, redex)."""
    if is_value(m):
        return None
    frames: list[Frame] = []
    while True:
        if _is_redex(m):
            return tuple(frames), m
        match m:
            case Pair(a, b):
                if not is_value(a):
                    frames.append(PairL(b))
                    m = a
                else:
                    frames.append(PairR(a))
                    m = b
            case Proj(i, t):
                frames.append(ProjF(i))
                m = t
            case Inj(i, v, ann):
                frames.append(InjF(i, ann))
                m = v
            case Case(s, x1, n1, x2, n2):
                frames.append(CaseF(x1, n1, x2, n2))
                m = s
            case App(f, a):
                if not is_value(f):
                    frames.append(AppL(a))
                    m = f
                else:
                    frames.append(AppR(f))
                    m = a
            case Fold(ann, v):
                frames.append(FoldF(ann))
                m = v
            case Unfold(v):
                frames.append(UnfoldF())
                m = v
            case Let(_, _, _):
                raise StuckTermError(
                    "let must be elaborated away before evaluation")
            case _:
                raise StuckTermError(f"no decomposition for {m}")


def is_beta_redex(r: Term) -> bool:
    return isinstance(r, App)


def fire_redex(r: Term) -> WeightedSuccessors:
    """Contract a redex; weights sum to exactly 1."""
    one = Fraction(1)
    match r:
        case App(Lam(x, _, body), v) if is_value(v):
            return [(one, subst_term(body, v, x))]
        case Proj(i, Pair(a, b)) if is_value(a) and is_value(b):
            return [(one, a if i == 1 else b)]
        case Case(Inj(i, v, _), x1, n1, x2, n2) if is_value(v):
            if i == 1:
                return [(one, subst_term(n1, v, x1))]
            return [(one, subst_term(n2, v, x2))]
        case Unfold(Fold(_, v)) if is_value(v):
            return [(one, v)]
        case Or(p, a, b):
            # degenerate probabilities keep successor lists free of zero weights
            if p == 1:
                return [(one, a)]
            if p == 0:
                return [(one, b)]
            return [(p, a), (one - p, b)]
    raise NotARedexError(f"not a redex: {r}")


def step(m: Term) -> WeightedSuccessors:
    """One weighted reduction step of a closed, well-typed, non-value term."""
    if is_value(m):
        raise NotARedexError("step called on a value")
    dec = decompose(m)
    assert dec is not None
    ctx, redex = dec
    return [(p, plug(ctx, t)) for p, t in fire_redex(redex)]


def step_info(m: Term) -> tuple[WeightedSuccessors, bool]:
    """Like step, also reporting whether the fired redex was a beta."""
    if is_value(m):
        raise NotARedexError("step called on a value")
    dec = decompose(m)
    assert dec is not None
    ctx, redex = dec
    return [(p, plug(ctx, t)) for p, t in fire_redex(redex)], is_beta_redex(redex)
