"""A definitional interpreter sending terms to finite subprobability
distributions over semantic values, with checkers for the agreement between
this interpretation and the operational semantics.

The interpreter realizes the Kleisli-category reading of the calculus on
finite data.  Clause by clause:

* variables project a Dirac out of the environment;
* pairs take the independent product of the sub-denotations (weights
  multiply, evaluated left to right);
* projections, injections, fold and unfold map over support (fold/unfold
  are semantic no-op wrappers: the recursive-type isomorphism is mediated
  syntactically);
* a lambda denotes a Dirac at its closure;
* application multiplies the function and argument distributions and runs
  each closure body, consuming one fuel unit per application;
* `or` forms the convex combination of the branch denotations;
* exhausted fuel contributes zero mass, so every answer is a subprobability
  approximant of the limit from below.

Fuel is a per-path budget: along every computation path the budget is
threaded left to right and each beta step costs one unit, mirroring how an
operational path accumulates its own steps.  More fuel completes a superset
of paths, which makes the approximant sequence pointwise monotone.

Closures are canonicalized at capture time by substituting the (reified)
captured environment into the body and then normalizing: recursive-type and
injection annotations are erased, every lambda with an empty domain type
collapses to the canonical identity on the empty type (its value space is a
single point), and binders are renamed canonically.  Distributions over
closures may still distinguish extensionally equal functions of nonempty
domain; agreement with the operational side is only ever checked at ground
observations, where this is harmless.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import prelude
from .distribution import DistReport, explore
from .operational import is_value, step_info
from .surface import pretty
from .syntax import (
    App, Case, Fold, Inj, Lam, Let, Or, Pair, Proj, Term, Unfold, Var,
    alpha_normalize, free_vars, subst_term, term_is_closed,
)
from .typecheck import is_empty_type


# --------------------------------------------------------------------------
# Semantic values
# --------------------------------------------------------------------------

class SemValue:
    __slots__ = ()


@dataclass(frozen=True)
class SUnit(SemValue):
    pass


UNIT_POINT = SUnit()


@dataclass(frozen=True)
class SPair(SemValue):
    fst: SemValue
    snd: SemValue


@dataclass(frozen=True)
class SInj(SemValue):
    index: int
    value: SemValue


@dataclass(frozen=True)
class SFold(SemValue):
    value: SemValue


@dataclass(frozen=True)
class SClosure(SemValue):
    lam: Term  # a closed, semantically normalized Lam


SemDist = dict  # SemValue -> Fraction
Env = dict  # str -> SemValue


class IllTypedTermError(Exception):
    """Defensive: the interpreter met a shape the type checker excludes."""


def normalize_semantic(t: Term) -> Term:
    """Canonical term form used inside closures.

    Erases fold/injection annotations, collapses every lambda whose domain
    is an empty type to the canonical unit value, and renames binders.
    """

    def erase(t: Term) -> Term:
        match t:
            case Var(_):
                return t
            case Pair(a, b):
                return Pair(erase(a), erase(b))
            case Proj(i, m):
                return Proj(i, erase(m))
            case Inj(i, m, _):
                return Inj(i, erase(m), None)
            case Fold(_, m):
                return Fold(None, erase(m))
            case Unfold(m):
                return Unfold(erase(m))
            case App(f, a):
                return App(erase(f), erase(a))
            case Or(p, a, b):
                return Or(p, erase(a), erase(b))
            case Lam(x, ann, body):
                if is_empty_type(ann):
                    return Lam("x", prelude.ZERO_T, Var("x"))
                return Lam(x, ann, erase(body))
            case Case(s, x1, n1, x2, n2):
                return Case(erase(s), x1, erase(n1), x2, erase(n2))
        raise IllTypedTermError(f"cannot normalize {t!r}")

    return alpha_normalize(erase(t))


def reify(v: SemValue) -> Term:
    """A closed term (in semantic normal form) denoting exactly v."""
    match v:
        case SUnit():
            return Lam("x", prelude.ZERO_T, Var("x"))
        case SPair(a, b):
            return Pair(reify(a), reify(b))
        case SInj(i, w):
            return Inj(i, reify(w), None)
        case SFold(w):
            return Fold(None, reify(w))
        case SClosure(lam):
            return lam
    raise IllTypedTermError(f"cannot reify {v!r}")


def _close(env: Env, lam: Lam) -> SemValue:
    if is_empty_type(lam.ann):
        return UNIT_POINT
    body = lam.body
    for name in sorted(free_vars(body) - {lam.var}):
        body = subst_term(body, reify(env[name]), name)
    return SClosure(normalize_semantic(Lam(lam.var, lam.ann, body)))


def denote_value(v: Term) -> SemValue:
    """The unique point of the Dirac denotation of a closed syntactic value."""
    if not is_value(v) or not term_is_closed(v):
        raise IllTypedTermError(f"not a closed value: {v}")
    match v:
        case Lam(_, _, _):
            return _close({}, v)
        case Pair(a, b):
            return SPair(denote_value(a), denote_value(b))
        case Inj(i, w, _):
            return SInj(i, denote_value(w))
        case Fold(_, w):
            return SFold(denote_value(w))
    raise IllTypedTermError(f"cannot interpret value {v}")


# --------------------------------------------------------------------------
# The interpreter
# --------------------------------------------------------------------------

# paths are weighted by exact rationals and tagged with remaining fuel
PathDist = dict  # (SemValue, int) -> Fraction


def _add(dist: PathDist, key, mass: Fraction) -> None:
    dist[key] = dist.get(key, Fraction(0)) + mass


def _denote_paths(env: Env, t: Term, fuel: int) -> PathDist:
    if fuel < 0:
        return {}
    out: PathDist = {}
    match t:
        case Var(name):
            val = env.get(name)
            if val is None:
                raise IllTypedTermError(f"unbound variable {name}")
            out[(val, fuel)] = Fraction(1)
        case Lam(_, _, _):
            out[(_close(env, t), fuel)] = Fraction(1)
        case Pair(a, b):
            for (va, k1), p in _denote_paths(env, a, fuel).items():
                for (vb, k2), q in _denote_paths(env, b, k1).items():
                    _add(out, (SPair(va, vb), k2), p * q)
        case Proj(i, m):
            for (v, k), p in _denote_paths(env, m, fuel).items():
                if not isinstance(v, SPair):
                    raise IllTypedTermError(f"projection of non-pair {v!r}")
                _add(out, (v.fst if i == 1 else v.snd, k), p)
        case Inj(i, m, _):
            for (v, k), p in _denote_paths(env, m, fuel).items():
                _add(out, (SInj(i, v), k), p)
        case Fold(_, m):
            for (v, k), p in _denote_paths(env, m, fuel).items():
                _add(out, (SFold(v), k), p)
        case Unfold(m):
            for (v, k), p in _denote_paths(env, m, fuel).items():
                if not isinstance(v, SFold):
                    raise IllTypedTermError(f"unfold of non-fold {v!r}")
                _add(out, (v.value, k), p)
        case App(f, a):
            arg_cache: dict[int, PathDist] = {}
            for (vf, k1), p in _denote_paths(env, f, fuel).items():
                if k1 not in arg_cache:
                    arg_cache[k1] = _denote_paths(env, a, k1)
                for (va, k2), q in arg_cache[k1].items():
                    if k2 == 0:
                        continue  # fuel exhausted: this path loses its mass
                    if not isinstance(vf, SClosure):
                        raise IllTypedTermError(f"application of {vf!r}")
                    lam = vf.lam
                    body_env = {lam.var: va}
                    for (vr, k3), r in _denote_paths(body_env, lam.body,
                                                     k2 - 1).items():
                        _add(out, (vr, k3), p * q * r)
        case Case(s, x1, n1, x2, n2):
            for (vs, k), p in _denote_paths(env, s, fuel).items():
                if not isinstance(vs, SInj):
                    raise IllTypedTermError(f"case on non-injection {vs!r}")
                var, branch = (x1, n1) if vs.index == 1 else (x2, n2)
                branch_env = {**env, var: vs.value}
                for (vr, k2), q in _denote_paths(branch_env, branch, k).items():
                    _add(out, (vr, k2), p * q)
        case Or(p, a, b):
            if p == 1:
                return _denote_paths(env, a, fuel)
            if p == 0:
                return _denote_paths(env, b, fuel)
            for (v, k), q in _denote_paths(env, a, fuel).items():
                _add(out, (v, k), p * q)
            for (v, k), q in _denote_paths(env, b, fuel).items():
                _add(out, (v, k), (1 - p) * q)
        case Let(_, _, _):
            raise IllTypedTermError("let must be elaborated away before denotation")
        case _:
            raise IllTypedTermError(f"cannot interpret {t!r}")
    return out


def denote(env: Env, t: Term, fuel: int) -> SemDist:
    """The distribution of t under env within the given beta budget."""
    out: SemDist = {}
    for (v, _), p in _denote_paths(env, t, fuel).items():
        out[v] = out.get(v, Fraction(0)) + p
    return out


def dist_mass(d: SemDist) -> Fraction:
    return sum(d.values(), Fraction(0))


def nat_of_sem(v: SemValue) -> Optional[int]:
    n = 0
    while True:
        match v:
            case SFold(SInj(1, SUnit())):
                return n
            case SFold(SInj(2, rest)):
                v = rest
                n += 1
            case _:
                return None


def render_sem(v: SemValue) -> str:
    """Shape-based rendering for reports (numerals and unit recognized)."""
    n = nat_of_sem(v)
    if n is not None:
        return str(n)
    return pretty(reify(v))


def render_dist(d: SemDist) -> list[dict]:
    items = sorted(((render_sem(v), p) for v, p in d.items()),
                   key=lambda kv: kv[0])
    return [{"value": s, "prob": str(p)} for s, p in items]


# --------------------------------------------------------------------------
# Checkers
# --------------------------------------------------------------------------

def _max_gap(a: SemDist, b: SemDist) -> Fraction:
    gap = Fraction(0)
    for v in set(a) | set(b):
        gap = max(gap, abs(a.get(v, Fraction(0)) - b.get(v, Fraction(0))))
    return gap


def _gap_on_common(a: SemDist, b: SemDist) -> Fraction:
    gap = Fraction(0)
    for v in set(a) & set(b):
        gap = max(gap, abs(a[v] - b[v]))
    return gap


@dataclass
class SoundnessReport:
    term: str
    fuel: int
    lhs: SemDist
    rhs: SemDist
    max_gap: Fraction
    deficit_bound: Fraction
    exact: bool
    passed: bool

    def to_json(self) -> dict:
        return {
            "term": self.term,
            "fuel": self.fuel,
            "denotation": render_dist(self.lhs),
            "one_step_mixture": render_dist(self.rhs),
            "max_gap": str(self.max_gap),
            "deficit_bound": str(self.deficit_bound),
            "exact": self.exact,
            "passed": self.passed,
        }


def soundness_check(m: Term, fuel: int) -> SoundnessReport:
    """Compare the denotation of m with the convex mixture of the denotations
    of its one-step successors (each at fuel reduced by that step's cost)."""
    if is_value(m):
        raise ValueError("soundness_check needs a non-value")
    succs, was_beta = step_info(m)
    cost = 1 if was_beta else 0
    lhs = denote({}, m, fuel)
    rhs: SemDist = {}
    for p, succ in succs:
        for v, q in denote({}, succ, fuel - cost).items():
            rhs[v] = rhs.get(v, Fraction(0)) + p * q
    gap = _max_gap(lhs, rhs)
    deficit = max(1 - dist_mass(lhs), 1 - dist_mass(rhs))
    exact = gap == 0
    return SoundnessReport(
        term=pretty(m), fuel=fuel, lhs=lhs, rhs=rhs, max_gap=gap,
        deficit_bound=deficit, exact=exact, passed=gap <= deficit)


@dataclass
class AdequacyReport:
    term: str
    fuel: int
    steps: int
    tol: Fraction
    denotational: SemDist
    operational: SemDist
    live_mass: Fraction
    max_pointwise_gap: Fraction  # over the union of supports
    gap_on_common: Fraction
    total_gap: Fraction
    denotational_monotone: bool
    operational_monotone: bool
    exact: bool
    passed: bool

    def to_json(self) -> dict:
        return {
            "term": self.term,
            "fuel": self.fuel,
            "steps": self.steps,
            "tol": str(self.tol),
            "denotational": render_dist(self.denotational),
            "operational": render_dist(self.operational),
            "live_mass": str(self.live_mass),
            "max_pointwise_gap": str(self.max_pointwise_gap),
            "denotational_monotone": self.denotational_monotone,
            "operational_monotone": self.operational_monotone,
            "exact": self.exact,
            "pass": self.passed,
        }


def pushforward(report: DistReport) -> SemDist:
    """Sum the exploration masses over the value denotations."""
    out: SemDist = {}
    for v, mass in report.value_mass.items():
        key = denote_value(v)
        out[key] = out.get(key, Fraction(0)) + mass
    return out


def adequacy_check(m: Term, fuel: int, steps: int, tol: Fraction, *,
                   max_frontier: Optional[int] = None) -> AdequacyReport:
    """Compare the denotation of m with the exploration pushforward.

    Both are monotone lower approximants of the same limit distribution;
    recursion-free terms must agree exactly once the exploration is complete
    (live mass zero), recursive ones agree within tol.
    """
    if not term_is_closed(m):
        raise ValueError("adequacy_check needs a closed term")
    rep = explore(m, steps, max_frontier=max_frontier)
    op = pushforward(rep)
    den = denote({}, m, fuel)
    gap_union = _max_gap(den, op)
    gap_common = _gap_on_common(den, op)
    total_gap = abs(dist_mass(den) - dist_mass(op))

    checkpoints = sorted({fuel // 4, fuel // 2, fuel})
    prev: SemDist = {}
    den_monotone = True
    for budget in checkpoints:
        cur = denote({}, m, budget)
        for v, mass in prev.items():
            if cur.get(v, Fraction(0)) < mass:
                den_monotone = False
        prev = cur
    op_monotone = all(a <= b for a, b in zip(rep.per_depth_halt,
                                             rep.per_depth_halt[1:]))

    exact = gap_union == 0 and rep.live_mass == 0 and total_gap == 0
    passed = (total_gap <= tol and gap_common <= tol
              and den_monotone and op_monotone)
    return AdequacyReport(
        term=pretty(m), fuel=fuel, steps=steps, tol=tol,
        denotational=den, operational=op, live_mass=rep.live_mass,
        max_pointwise_gap=gap_union, gap_on_common=gap_common,
        total_gap=total_gap, denotational_monotone=den_monotone,
        operational_monotone=op_monotone, exact=exact, passed=passed)


@dataclass
class LetReport:
    first: SemDist
    second: SemDist
    equal: bool

    def to_json(self) -> dict:
        return {
            "first_order": render_dist(self.first),
            "second_order": render_dist(self.second),
            "equal": self.equal,
        }


def let_commutativity_check(m1: Term, m2: Term, n: Term, fuel: int,
                            x1: str = "x1", x2: str = "x2") -> LetReport:
    """Denote both orderings of two independent lets and compare exactly.

    n may use the free variables x1 and x2; m1 and m2 are closed.  The two
    orderings evaluate the same independent product, so a commutative
    interpretation must give identical distributions.
    """
    from .typecheck import elaborate

    t12 = elaborate(Let(x1, m1, Let(x2, m2, n)))
    t21 = elaborate(Let(x2, m2, Let(x1, m1, n)))
    d12 = denote({}, t12, fuel)
    d21 = denote({}, t21, fuel)
    return LetReport(first=d12, second=d21, equal=d12 == d21)
