"""Abstract syntax for a call-by-value probabilistic lambda calculus with
iso-recursive types and binary probabilistic choice.

Types:   X | A + B | A * B | A -> B | mu X. A
Terms:   x | (M, N) | fst M | snd M | inl M | inr M | case M of ... |
         fn x:A => M | M N | fold[T] M | unfold M | M or[p] N

All nodes are immutable (frozen dataclasses) and hashable, so terms can be
shared freely and used as dictionary keys.  Probabilities are exact
`fractions.Fraction` values; no floating point enters the syntax.

Two implementation notes that go beyond the bare grammar:

* `Inj` carries an optional type annotation.  A bare injection does not have
  a unique type, so the surface forms `tt`/`ff` (and explicitly annotated
  `inl[T] M`) record the intended sum type to keep type inference
  syntax-directed.
* `Let` is surface sugar.  Its call-by-value expansion
  `(fn x:A => N) M` needs the type A of M, so the expansion is performed by
  `typecheck.elaborate` after inference; the evaluator and the denotational
  interpreter only ever see core terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


# --------------------------------------------------------------------------
# Types
# --------------------------------------------------------------------------

class Type:
    """Base class for type syntax nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        from .surface import pretty_type

        return pretty_type(self)


@dataclass(frozen=True)
class TVar(Type):
    name: str


@dataclass(frozen=True)
class Sum(Type):
    left: Type
    right: Type


@dataclass(frozen=True)
class Prod(Type):
    left: Type
    right: Type


@dataclass(frozen=True)
class Arrow(Type):
    dom: Type
    cod: Type


@dataclass(frozen=True)
class Mu(Type):
    var: str
    body: Type


def free_type_vars(a: Type) -> frozenset[str]:
    cached = getattr(a, "_ftv", None)
    if cached is not None:
        return cached
    match a:
        case TVar(name):
            out = frozenset({name})
        case Sum(l, r) | Prod(l, r):
            out = free_type_vars(l) | free_type_vars(r)
        case Arrow(d, c):
            out = free_type_vars(d) | free_type_vars(c)
        case Mu(x, body):
            out = free_type_vars(body) - {x}
        case _:
            raise TypeError(f"not a type: {a!r}")
    object.__setattr__(a, "_ftv", out)
    return out


def type_is_closed(a: Type) -> bool:
    return not free_type_vars(a)


def _fresh(base: str, avoid: frozenset[str] | set[str]) -> str:
    if base not in avoid:
        return base
    stem = base.rstrip("0123456789") or base
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def subst_type(a: Type, b: Type, x: str) -> Type:
    """Capture-avoidingly substitute b for the free type variable x in a."""
    match a:
        case TVar(name):
            return b if name == x else a
        case Sum(l, r):
            return Sum(subst_type(l, b, x), subst_type(r, b, x))
        case Prod(l, r):
            return Prod(subst_type(l, b, x), subst_type(r, b, x))
        case Arrow(d, c):
            return Arrow(subst_type(d, b, x), subst_type(c, b, x))
        case Mu(y, body):
            if y == x:
                return a
            if y in free_type_vars(b) and x in free_type_vars(body):
                y2 = _fresh(y, free_type_vars(b) | free_type_vars(body) | {x})
                body = subst_type(body, TVar(y2), y)
                y = y2
            return Mu(y, subst_type(body, b, x))
    raise TypeError(f"not a type: {a!r}")


def alpha_normalize_type(a: Type) -> Type:
    """Rename bound type variables to a canonical preorder numbering."""
    cached = getattr(a, "_norm", None)
    if cached is not None:
        return cached
    free = free_type_vars(a)
    # a prefix no free variable starts with keeps canonical names collision-free
    prefix = "X"
    while any(f.startswith(prefix) for f in free):
        prefix += "X"
    counter = 0

    def go(t: Type, env: dict[str, str]) -> Type:
        nonlocal counter
        match t:
            case TVar(name):
                return TVar(env.get(name, name))
            case Sum(l, r):
                return Sum(go(l, env), go(r, env))
            case Prod(l, r):
                return Prod(go(l, env), go(r, env))
            case Arrow(d, c):
                return Arrow(go(d, env), go(c, env))
            case Mu(x, body):
                name = f"{prefix}{counter}"
                counter += 1
                return Mu(name, go(body, {**env, x: name}))
        raise TypeError(f"not a type: {t!r}")

    out = go(a, {})
    object.__setattr__(a, "_norm", out)
    object.__setattr__(out, "_norm", out)
    return out


def types_equal(a: Type, b: Type) -> bool:
    """Structural equality of types up to renaming of bound variables."""
    if a == b:
        return True
    return alpha_normalize_type(a) == alpha_normalize_type(b)


# --------------------------------------------------------------------------
# Terms
# --------------------------------------------------------------------------

class Term:
    """Base class for term syntax nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        from .surface import pretty

        return pretty(self)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True)
class Proj(Term):
    index: int  # 1 or 2
    of: Term

    def __post_init__(self) -> None:
        if self.index not in (1, 2):
            raise ValueError(f"projection index must be 1 or 2, got {self.index}")


@dataclass(frozen=True)
class Inj(Term):
    index: int  # 1 or 2
    value: Term
    ann: Optional[Type] = None  # the sum type, when written explicitly

    def __post_init__(self) -> None:
        if self.index not in (1, 2):
            raise ValueError(f"injection index must be 1 or 2, got {self.index}")


@dataclass(frozen=True)
class Case(Term):
    scrutinee: Term
    left_var: str
    left: Term
    right_var: str
    right: Term


@dataclass(frozen=True)
class Lam(Term):
    var: str
    ann: Type
    body: Term


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Fold(Term):
    ann: Optional[Type]  # the mu type; None only in semantic normal forms
    value: Term


@dataclass(frozen=True)
class Unfold(Term):
    value: Term


@dataclass(frozen=True)
class Or(Term):
    prob: Fraction
    left: Term
    right: Term

    def __post_init__(self) -> None:
        p = self.prob
        if not isinstance(p, Fraction):
            raise ValueError(f"choice probability must be a Fraction, got {p!r}")
        if not 0 <= p <= 1:
            raise ValueError(f"choice probability {p} outside [0, 1]")


@dataclass(frozen=True)
class Let(Term):
    """Surface sugar: `let x = bound in body`.  Removed by elaboration."""

    var: str
    bound: Term
    body: Term


def free_vars(t: Term) -> frozenset[str]:
    # memoized on the (immutable) node; substitution recomputes these a lot
    cached = getattr(t, "_fvs", None)
    if cached is not None:
        return cached
    match t:
        case Var(name):
            out = frozenset({name})
        case Pair(a, b):
            out = free_vars(a) | free_vars(b)
        case Proj(_, m) | Inj(_, m, _) | Fold(_, m) | Unfold(m):
            out = free_vars(m)
        case Case(s, x1, n1, x2, n2):
            out = free_vars(s) | (free_vars(n1) - {x1}) | (free_vars(n2) - {x2})
        case Lam(x, _, body):
            out = free_vars(body) - {x}
        case App(f, a):
            out = free_vars(f) | free_vars(a)
        case Or(_, a, b):
            out = free_vars(a) | free_vars(b)
        case Let(x, bound, body):
            out = free_vars(bound) | (free_vars(body) - {x})
        case _:
            raise TypeError(f"not a term: {t!r}")
    object.__setattr__(t, "_fvs", out)
    return out


def term_is_closed(t: Term) -> bool:
    return not free_vars(t)


def _rename_binder(x: str, body_fvs: frozenset[str], v_fvs: frozenset[str],
                   target: str) -> str:
    """Fresh name for binder x when substituting into its scope."""
    return _fresh(x, body_fvs | v_fvs | {target})


def subst_term(body: Term, v: Term, x: str) -> Term:
    """Capture-avoidingly substitute v for the free variable x in body."""
    vf = free_vars(v)

    def go(t: Term) -> Term:
        match t:
            case Var(name):
                return v if name == x else t
            case Pair(a, b):
                return Pair(go(a), go(b))
            case Proj(i, m):
                return Proj(i, go(m))
            case Inj(i, m, ann):
                return Inj(i, go(m), ann)
            case Fold(ann, m):
                return Fold(ann, go(m))
            case Unfold(m):
                return Unfold(go(m))
            case App(f, a):
                return App(go(f), go(a))
            case Or(p, a, b):
                return Or(p, go(a), go(b))
            case Lam(y, ann, b):
                if y == x or x not in free_vars(b):
                    return t
                if y in vf:
                    y2 = _rename_binder(y, free_vars(b), vf, x)
                    b = subst_term(b, Var(y2), y)
                    y = y2
                return Lam(y, ann, go(b))
            case Case(s, x1, n1, x2, n2):
                s2 = go(s)
                x1, n1 = _go_branch(x1, n1)
                x2, n2 = _go_branch(x2, n2)
                return Case(s2, x1, n1, x2, n2)
            case Let(y, bound, b):
                bound2 = go(bound)
                y, b = _go_branch(y, b)
                return Let(y, bound2, b)
        raise TypeError(f"not a term: {t!r}")

    def _go_branch(y: str, b: Term) -> tuple[str, Term]:
        if y == x or x not in free_vars(b):
            return y, b
        if y in vf:
            y2 = _rename_binder(y, free_vars(b), vf, x)
            b = subst_term(b, Var(y2), y)
            y = y2
        return y, go(b)

    return go(body)


def alpha_normalize(t: Term) -> Term:
    """Rename all binders to a canonical preorder numbering.

    Type annotations are normalized as well, so alpha-equivalent terms map to
    identical trees.  The result is a valid term (safe to keep evaluating)
    and is used as the merge key in distribution exploration.
    """
    free = free_vars(t)
    prefix = "_x"
    while any(f.startswith(prefix) for f in free):
        prefix += "x"
    counter = 0

    def bind(x: str) -> str:
        nonlocal counter
        name = f"{prefix}{counter}"
        counter += 1
        return name

    def go(t: Term, env: dict[str, str]) -> Term:
        match t:
            case Var(name):
                return Var(env.get(name, name))
            case Pair(a, b):
                return Pair(go(a, env), go(b, env))
            case Proj(i, m):
                return Proj(i, go(m, env))
            case Inj(i, m, ann):
                return Inj(i, go(m, env),
                           alpha_normalize_type(ann) if ann is not None else None)
            case Fold(ann, m):
                return Fold(alpha_normalize_type(ann) if ann is not None else None,
                            go(m, env))
            case Unfold(m):
                return Unfold(go(m, env))
            case App(f, a):
                return App(go(f, env), go(a, env))
            case Or(p, a, b):
                return Or(p, go(a, env), go(b, env))
            case Lam(x, ann, body):
                x2 = bind(x)
                return Lam(x2, alpha_normalize_type(ann), go(body, {**env, x: x2}))
            case Case(s, x1, n1, x2, n2):
                s2 = go(s, env)
                y1 = bind(x1)
                m1 = go(n1, {**env, x1: y1})
                y2 = bind(x2)
                m2 = go(n2, {**env, x2: y2})
                return Case(s2, y1, m1, y2, m2)
            case Let(x, bound, body):
                bound2 = go(bound, env)
                x2 = bind(x)
                return Let(x2, bound2, go(body, {**env, x: x2}))
        raise TypeError(f"not a term: {t!r}")

    return go(t, {})


def alpha_eq(a: Term, b: Term) -> bool:
    """Equality of terms up to renaming of bound (term and type) variables."""
    return alpha_normalize(a) == alpha_normalize(b)


# Ordered contexts.  TypeCtx is a tuple of distinct type-variable names;
# TermCtx is a tuple of (variable, closed type) pairs with distinct variables.
TypeCtx = tuple[str, ...]
TermCtx = tuple[tuple[str, Type], ...]
