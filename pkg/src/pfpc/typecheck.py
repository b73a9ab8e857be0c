"""Well-formedness of types and type inference for terms.

Inference is syntax-directed: lambda binders and folds carry the annotations
that make every construct inferable, and a checking mode pushes expected
types into the few positions (bare injections, branches) where synthesis
alone would be ambiguous.  `check_program` is the closed-term entry point.

`elaborate` removes the `let` sugar: `let x = M in N` becomes
`(fn x:A => N) M` with A the inferred type of M.  Everything downstream of
the type checker (stepping, exploration, denotation) works on core terms.
"""

from __future__ import annotations

from typing import Optional

from .syntax import (
    App, Arrow, Case, Fold, Inj, Lam, Let, Mu, Or, Pair, Prod, Proj, Sum,
    Term, TermCtx, TVar, Type, TypeCtx, Unfold, Var, alpha_normalize_type,
    subst_type, type_is_closed, types_equal,
)


class TypeCheckError(Exception):
    """A failed type or formation judgement.

    kind is one of: 'unbound variable', 'mismatch', 'ill-formed context',
    'non-closed type', 'annotation mismatch'.  rule names the violated
    formation rule; location identifies the offending subphrase.
    """

    def __init__(self, kind: str, rule: str, location: str,
                 expected: Optional[Type] = None, actual: Optional[Type] = None,
                 detail: str = ""):
        self.kind = kind
        self.rule = rule
        self.location = location
        self.expected = expected
        self.actual = actual
        parts = [f"{kind} (rule {rule}) at {location}"]
        if expected is not None:
            parts.append(f"expected {expected}")
        if actual is not None:
            parts.append(f"found {actual}")
        if detail:
            parts.append(detail)
        super().__init__(": ".join(parts))


class _NotInferable(TypeCheckError):
    """Internal: the term needs a checking position (bare injection)."""


def _loc(t: Term | Type) -> str:
    s = str(t)
    return s if len(s) <= 60 else s[:57] + "..."


# --------------------------------------------------------------------------
# Type formation
# --------------------------------------------------------------------------

def wf_type(theta: TypeCtx, a: Type) -> None:
    """Check the judgement `theta |- a`; raises TypeCheckError if absent."""
    if len(set(theta)) != len(theta):
        raise TypeCheckError("ill-formed context", "type-context", str(theta),
                             detail="duplicate type variables")
    match a:
        case TVar(name):
            if name not in theta:
                raise TypeCheckError("unbound variable", "type-var", _loc(a),
                                     detail=f"type variable {name} not in context")
        case Sum(l, r) | Prod(l, r):
            wf_type(theta, l)
            wf_type(theta, r)
        case Arrow(d, c):
            wf_type(theta, d)
            wf_type(theta, c)
        case Mu(x, body):
            # no polarity restriction: negative occurrences are fine
            inner = theta if x in theta else theta + (x,)
            if x in theta:
                x2 = x
                i = 1
                while f"{x}{i}" in theta:
                    i += 1
                x2 = f"{x}{i}"
                body = subst_type(body, TVar(x2), x)
                inner = theta + (x2,)
            wf_type(inner, body)
        case _:
            raise TypeCheckError("mismatch", "type", repr(a),
                                 detail="not a type syntax node")


_WF_CLOSED: set = set()


def _require_closed_wf(a: Type, where: Term) -> None:
    if a in _WF_CLOSED:
        return
    if not type_is_closed(a):
        raise TypeCheckError("non-closed type", "term-annotation", _loc(where),
                             actual=a, detail="annotations must be closed")
    wf_type((), a)
    _WF_CLOSED.add(a)


# --------------------------------------------------------------------------
# Emptiness of closed types
# --------------------------------------------------------------------------

_EMPTY_CACHE: dict[Type, bool] = {}


def is_empty_type(a: Type) -> bool:
    """True iff the closed type a has no inhabitants in the model.

    Sums are empty iff both sides are, products iff either side is, and
    function types never are (the value space of A -> B collapses to a
    single point when A is empty, but is never void).  A recursive type is
    empty iff its body is, taking the bound variable to be empty.
    """
    key = alpha_normalize_type(a)
    cached = _EMPTY_CACHE.get(key)
    if cached is None:
        cached = _empty(key, {})
        _EMPTY_CACHE[key] = cached
    return cached


def _empty(a: Type, env: dict[str, bool]) -> bool:
    match a:
        case TVar(name):
            return env[name]
        case Sum(l, r):
            return _empty(l, env) and _empty(r, env)
        case Prod(l, r):
            return _empty(l, env) or _empty(r, env)
        case Arrow(_, _):
            return False
        case Mu(x, body):
            return _empty(body, {**env, x: True})
    raise TypeError(f"not a type: {a!r}")


# --------------------------------------------------------------------------
# Term formation
# --------------------------------------------------------------------------

def _as_env(gamma: TermCtx) -> dict[str, Type]:
    names = [x for x, _ in gamma]
    if len(set(names)) != len(names):
        raise TypeCheckError("ill-formed context", "term-context", str(names),
                             detail="duplicate term variables")
    for x, a in gamma:
        if not type_is_closed(a):
            raise TypeCheckError("non-closed type", "term-context", x, actual=a)
        wf_type((), a)
    return dict(gamma)


def infer(gamma: TermCtx, m: Term) -> Type:
    """Synthesize the unique type of m in context gamma, or raise."""
    return _infer(_as_env(gamma), m)


def check(gamma: TermCtx, m: Term, expected: Type) -> None:
    _check(_as_env(gamma), m, expected)


def check_program(m: Term) -> Type:
    """Infer the type of a closed program."""
    return _infer({}, m)


def _infer(env: dict[str, Type], m: Term) -> Type:
    match m:
        case Var(name):
            ty = env.get(name)
            if ty is None:
                raise TypeCheckError("unbound variable", "var", _loc(m))
            return ty
        case Pair(a, b):
            return Prod(_infer(env, a), _infer(env, b))
        case Proj(i, t):
            ty = _infer(env, t)
            if not isinstance(ty, Prod):
                raise TypeCheckError("mismatch", "proj", _loc(m), actual=ty,
                                     detail="projection needs a product")
            return ty.left if i == 1 else ty.right
        case Inj(i, v, ann):
            if ann is None:
                raise _NotInferable(
                    "annotation mismatch", "inj", _loc(m),
                    detail="bare injection has no unique type; "
                           "annotate it or use it in a checked position")
            _require_closed_wf(ann, m)
            if not isinstance(ann, Sum):
                raise TypeCheckError("annotation mismatch", "inj", _loc(m),
                                     actual=ann, detail="annotation must be a sum")
            _check(env, v, ann.left if i == 1 else ann.right)
            return ann
        case Case(s, x1, n1, x2, n2):
            sty = _infer(env, s)
            if not isinstance(sty, Sum):
                raise TypeCheckError("mismatch", "case", _loc(m), actual=sty,
                                     detail="case scrutinee needs a sum")
            env1 = {**env, x1: sty.left}
            env2 = {**env, x2: sty.right}
            try:
                out = _infer(env1, n1)
                _check(env2, n2, out)
            except _NotInferable:
                out = _infer(env2, n2)
                _check(env1, n1, out)
            return out
        case Lam(x, ann, body):
            _require_closed_wf(ann, m)
            return Arrow(ann, _infer({**env, x: ann}, body))
        case App(f, a):
            fty = _infer(env, f)
            if not isinstance(fty, Arrow):
                raise TypeCheckError("mismatch", "app", _loc(m), actual=fty,
                                     detail="applied term is not a function")
            _check(env, a, fty.dom)
            return fty.cod
        case Fold(ann, v):
            if ann is None:
                raise TypeCheckError("annotation mismatch", "fold", _loc(m),
                                     detail="fold without a recursive type annotation")
            _require_closed_wf(ann, m)
            if not isinstance(ann, Mu):
                raise TypeCheckError("annotation mismatch", "fold", _loc(m),
                                     actual=ann, detail="annotation must be a mu type")
            _check(env, v, subst_type(ann.body, ann, ann.var))
            return ann
        case Unfold(v):
            ty = _infer(env, v)
            if not isinstance(ty, Mu):
                raise TypeCheckError("mismatch", "unfold", _loc(m), actual=ty,
                                     detail="unfold needs a mu type")
            return subst_type(ty.body, ty, ty.var)
        case Or(_, a, b):
            try:
                out = _infer(env, a)
                other = b
            except _NotInferable:
                out = _infer(env, b)
                other = a
            _check(env, other, out)
            return out
        case Let(x, bound, body):
            bty = _infer(env, bound)
            return _infer({**env, x: bty}, body)
    raise TypeCheckError("mismatch", "term", repr(m), detail="not a term syntax node")


def _check(env: dict[str, Type], m: Term, expected: Type) -> None:
    match m:
        case Inj(i, v, None):
            if not isinstance(expected, Sum):
                raise TypeCheckError("mismatch", "inj", _loc(m), expected=expected,
                                     detail="injection checked against a non-sum")
            _check(env, v, expected.left if i == 1 else expected.right)
            return
        case Pair(a, b) if isinstance(expected, Prod):
            _check(env, a, expected.left)
            _check(env, b, expected.right)
            return
        case Case(s, x1, n1, x2, n2):
            sty = _infer(env, s)
            if not isinstance(sty, Sum):
                raise TypeCheckError("mismatch", "case", _loc(m), actual=sty,
                                     detail="case scrutinee needs a sum")
            _check({**env, x1: sty.left}, n1, expected)
            _check({**env, x2: sty.right}, n2, expected)
            return
        case Or(_, a, b):
            _check(env, a, expected)
            _check(env, b, expected)
            return
        case Let(x, bound, body):
            bty = _infer(env, bound)
            _check({**env, x: bty}, body, expected)
            return
        case Lam(x, ann, body) if isinstance(expected, Arrow):
            _require_closed_wf(ann, m)
            if not types_equal(ann, expected.dom):
                raise TypeCheckError("annotation mismatch", "lam", _loc(m),
                                     expected=expected.dom, actual=ann)
            _check({**env, x: ann}, body, expected.cod)
            return
    actual = _infer(env, m)
    if not types_equal(actual, expected):
        raise TypeCheckError("mismatch", "check", _loc(m),
                             expected=expected, actual=actual)


# --------------------------------------------------------------------------
# Elaboration: remove `let`
# --------------------------------------------------------------------------

def elaborate(m: Term, gamma: TermCtx = ()) -> Term:
    """Expand every `let x = M in N` to `(fn x:A => N) M`, A inferred."""
    return _elab(_as_env(gamma), m)


def _elab(env: dict[str, Type], m: Term) -> Term:
    match m:
        case Var(_):
            return m
        case Pair(a, b):
            return Pair(_elab(env, a), _elab(env, b))
        case Proj(i, t):
            return Proj(i, _elab(env, t))
        case Inj(i, v, ann):
            return Inj(i, _elab(env, v), ann)
        case Case(s, x1, n1, x2, n2):
            sty = _infer(env, s)
            if not isinstance(sty, Sum):
                raise TypeCheckError("mismatch", "case", _loc(m), actual=sty)
            return Case(_elab(env, s),
                        x1, _elab({**env, x1: sty.left}, n1),
                        x2, _elab({**env, x2: sty.right}, n2))
        case Lam(x, ann, body):
            return Lam(x, ann, _elab({**env, x: ann}, body))
        case App(f, a):
            return App(_elab(env, f), _elab(env, a))
        case Fold(ann, v):
            return Fold(ann, _elab(env, v))
        case Unfold(v):
            return Unfold(_elab(env, v))
        case Or(p, a, b):
            return Or(p, _elab(env, a), _elab(env, b))
        case Let(x, bound, body):
            bound2 = _elab(env, bound)
            bty = _infer(env, bound2)
            body2 = _elab({**env, x: bty}, body)
            return App(Lam(x, bty, body2), bound2)
    raise TypeError(f"not a term: {m!r}")
