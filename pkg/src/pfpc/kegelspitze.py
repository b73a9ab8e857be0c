"""Barycentric algebras with bottom (Kegelspitzen) and their law suites.

A carrier comes with a binary convex combination a +_r b for every rational
r in [0,1], a least element, and a partial order.  Three instances are
provided: the unit interval, the space of subprobability valuations on a
finite poset, and pointwise function spaces (the convex structure that
Kleisli homs carry).  `convex_sum` is the inductive n-ary combination,
`barycenter` averages a simple valuation over the carrier, and the suites
check the algebra equations exactly on random rational data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .valuations import (
    Element, FinitePoset, LawReport, Valuation, convex, kleisli_ext,
    map_valuation, random_kernel, random_valuation, stochastic_leq, tensor,
    valuations_equal, zero,
)

Entries = Sequence[tuple[Fraction, Any]]


class UnitInterval:
    """[0,1] with r*a + (1-r)*b, bottom 0 and the usual order."""

    name = "unit-interval"

    def bottom(self) -> Fraction:
        return Fraction(0)

    def combine(self, a: Fraction, r: Fraction, b: Fraction) -> Fraction:
        return r * a + (1 - r) * b

    def equal(self, a: Fraction, b: Fraction) -> bool:
        return a == b

    def leq(self, a: Fraction, b: Fraction) -> bool:
        return a <= b

    def sample(self, rng: random.Random) -> Fraction:
        den = rng.choice((2, 3, 4, 6, 8, 12))
        return Fraction(rng.randint(0, den), den)


class ValuationSpace:
    """Valuations on a fixed finite poset; combine is the convex sum of
    weights, bottom the zero valuation, the order the stochastic order."""

    def __init__(self, poset: FinitePoset):
        self.poset = poset
        self.name = f"valuations({poset.name})"

    def bottom(self) -> Valuation:
        return zero(self.poset)

    def combine(self, a: Valuation, r: Fraction, b: Valuation) -> Valuation:
        return convex(self.poset, [(r, a), (1 - r, b)])

    def equal(self, a: Valuation, b: Valuation) -> bool:
        return valuations_equal(a, b)

    def leq(self, a: Valuation, b: Valuation) -> bool:
        return stochastic_leq(a, b)

    def sample(self, rng: random.Random) -> Valuation:
        return random_valuation(rng, self.poset)


class PointwiseFunctions:
    """Maps from a finite set into a Kegelspitze, combined pointwise."""

    def __init__(self, domain: Sequence[Element], codomain: Any):
        self.domain = tuple(domain)
        self.codomain = codomain
        self.name = f"functions({len(self.domain)} -> {codomain.name})"

    def bottom(self) -> dict:
        return {x: self.codomain.bottom() for x in self.domain}

    def combine(self, a: dict, r: Fraction, b: dict) -> dict:
        return {x: self.codomain.combine(a[x], r, b[x]) for x in self.domain}

    def equal(self, a: dict, b: dict) -> bool:
        return all(self.codomain.equal(a[x], b[x]) for x in self.domain)

    def leq(self, a: dict, b: dict) -> bool:
        return all(self.codomain.leq(a[x], b[x]) for x in self.domain)

    def sample(self, rng: random.Random) -> dict:
        return {x: self.codomain.sample(rng) for x in self.domain}


def combine(k, a, r: Fraction, b):
    if not 0 <= r <= 1:
        raise ValueError(f"combination weight {r} outside [0,1]")
    return k.combine(a, r, b)


def scale(k, r: Fraction, a):
    """r . a, defined as a +_r bottom."""
    return combine(k, a, r, k.bottom())


def convex_sum(k, entries: Entries):
    """The inductive n-ary convex sum; entries = [(r_i, a_i)], sum r_i <= 1.

    Empty sums are bottom; a leading coefficient of 1 short-circuits to its
    element; otherwise a_1 +_{r_1} (sum of the rest, rescaled by 1/(1-r_1)).
    """
    total = sum((r for r, _ in entries), Fraction(0))
    if total > 1:
        raise ValueError(f"convex sum coefficients total {total} > 1")
    return _convex_sum(k, list(entries))


def _convex_sum(k, entries: list):
    if not entries:
        return k.bottom()
    r1, a1 = entries[0]
    if r1 == 1:
        return a1
    rest = [(r / (1 - r1), a) for r, a in entries[1:]]
    return k.combine(a1, r1, _convex_sum(k, rest))


def barycenter(k, simple: Entries):
    """The convex average of a simple valuation over the carrier."""
    return convex_sum(k, simple)


# --------------------------------------------------------------------------
# Suites
# --------------------------------------------------------------------------

def _sample_prob(rng: random.Random) -> Fraction:
    den = rng.choice((2, 3, 4, 5, 6, 8))
    return Fraction(rng.randint(0, den), den)


def axiom_suite(k, seed: int, cases: int = 300) -> LawReport:
    """The four barycentric-algebra equations, plus bottom/scale facts."""
    rng = random.Random(seed)
    report = LawReport(subject=k.name, cases=cases, seed=seed, checks={}, failures=[])
    rec = report.record
    for _ in range(cases):
        a, b, c = k.sample(rng), k.sample(rng), k.sample(rng)
        r, p = _sample_prob(rng), _sample_prob(rng)

        rec("combine-one", k.equal(combine(k, a, Fraction(1), b), a),
            f"a={a!r} b={b!r}")
        rec("skew-commutativity",
            k.equal(combine(k, a, r, b), combine(k, b, 1 - r, a)),
            f"a={a!r} b={b!r} r={r}")
        rec("idempotence", k.equal(combine(k, a, r, a), a), f"a={a!r} r={r}")
        if r < 1 and p < 1:
            lhs = combine(k, combine(k, a, p, b), r, c)
            inner = combine(k, b, (r - p * r) / (1 - p * r), c)
            rhs = combine(k, a, p * r, inner)
            rec("skew-associativity", k.equal(lhs, rhs),
                f"a={a!r} b={b!r} c={c!r} r={r} p={p}")

        rec("scale-zero-is-bottom",
            k.equal(scale(k, Fraction(0), a), k.bottom()), f"a={a!r}")
        rec("scale-one-is-identity",
            k.equal(scale(k, Fraction(1), a), a), f"a={a!r}")
        rec("bottom-least", k.leq(k.bottom(), a), f"a={a!r}")

        # monotonicity of combine on a comparable pair: scale(p, c) <= c
        lo = scale(k, p, c)
        rec("combine-monotone-right",
            k.leq(combine(k, a, r, lo), combine(k, a, r, c)),
            f"a={a!r} c={c!r} r={r} p={p}")
        rec("combine-monotone-left",
            k.leq(combine(k, lo, r, a), combine(k, c, r, a)),
            f"a={a!r} c={c!r} r={r} p={p}")
    return report


def _random_simple(k, rng: random.Random, n: int) -> list:
    """Random [(r_i, a_i)] with sum r_i <= 1 on a small rational grid."""
    den = rng.choice((4, 6, 8))
    remaining = den
    out = []
    for _ in range(n):
        take = rng.randint(0, remaining)
        remaining -= take
        out.append((Fraction(take, den), k.sample(rng)))
    return out


def em_law_suite(k, seed: int, cases: int = 300) -> LawReport:
    """Eilenberg-Moore style laws for the barycenter map.

    beta(point) = point, and flattening a two-layer simple valuation before
    averaging equals averaging the inner averages.
    """
    rng = random.Random(seed)
    report = LawReport(subject=k.name, cases=cases, seed=seed, checks={}, failures=[])
    rec = report.record
    for _ in range(cases):
        x = k.sample(rng)
        rec("unit", k.equal(barycenter(k, [(Fraction(1), x)]), x), f"x={x!r}")

        outer_weights_den = rng.choice((4, 6, 8))
        remaining = outer_weights_den
        outer: list[tuple[Fraction, list]] = []
        for _ in range(rng.randint(1, 3)):
            take = rng.randint(0, remaining)
            remaining -= take
            outer.append((Fraction(take, outer_weights_den),
                          _random_simple(k, rng, rng.randint(1, 3))))
        flattened = [(r * s, a) for r, inner in outer for s, a in inner]
        lhs = barycenter(k, flattened)
        rhs = barycenter(k, [(r, barycenter(k, inner)) for r, inner in outer])
        rec("multiplication", k.equal(lhs, rhs), f"outer={outer!r}")

        # linearity: beta(s1 +_r s2) = beta(s1) +_r beta(s2)
        s1 = _random_simple(k, rng, 2)
        s2 = _random_simple(k, rng, 2)
        r = _sample_prob(rng)
        mixed = [(r * w, a) for w, a in s1] + [((1 - r) * w, a) for w, a in s2]
        rec("linearity",
            k.equal(barycenter(k, mixed),
                    combine(k, barycenter(k, s1), r, barycenter(k, s2))),
            f"s1={s1!r} s2={s2!r} r={r}")

        # permutation invariance of the inductive sum
        s = _random_simple(k, rng, rng.randint(1, 4))
        perm = s[:]
        rng.shuffle(perm)
        rec("permutation-invariance",
            k.equal(convex_sum(k, s), convex_sum(k, perm)),
            f"s={s!r} perm={perm!r}")
    return report


def barycenter_matches_multiply(poset: FinitePoset, seed: int,
                                cases: int = 200) -> LawReport:
    """Cross-module coherence: averaging valuations = monad multiplication."""
    from .valuations import multiply

    rng = random.Random(seed)
    k = ValuationSpace(poset)
    report = LawReport(subject=f"barycenter/multiply({poset.name})", cases=cases,
                       seed=seed, checks={}, failures=[])
    for _ in range(cases):
        entries = _random_simple(k, rng, rng.randint(1, 3))
        report.record(
            "barycenter-is-multiply",
            valuations_equal(barycenter(k, entries), multiply(poset, entries)),
            f"entries={entries!r}")
    return report


# --------------------------------------------------------------------------
# Convexity through Kleisli composition, products and coproducts
# --------------------------------------------------------------------------

Kernel = dict  # Element -> Valuation


def fn_combine(f: Kernel, r: Fraction, g: Kernel, cod: FinitePoset) -> Kernel:
    return {x: convex(cod, [(r, f[x]), (1 - r, g[x])]) for x in f}


def kleisli_compose(g: Kernel, f: Kernel, cod: FinitePoset) -> Kernel:
    return {x: kleisli_ext(g, nu, cod) for x, nu in f.items()}


def kernel_tensor(f: Kernel, g: Kernel, prod: FinitePoset) -> Kernel:
    return {(a, b): tensor(fa, gb, prod)
            for a, fa in f.items() for b, gb in g.items()}


def kernel_coproduct(f: Kernel, g: Kernel, cpd: FinitePoset) -> Kernel:
    out: Kernel = {}
    for a, fa in f.items():
        out[(1, a)] = map_valuation(lambda c: (1, c), fa, cpd)
    for b, gb in g.items():
        out[(2, b)] = map_valuation(lambda d: (2, d), gb, cpd)
    return out


def kernels_equal(f: Kernel, g: Kernel) -> bool:
    return f.keys() == g.keys() and all(valuations_equal(f[x], g[x]) for x in f)


def kleisli_convexity_suite(seed: int, cases: int = 300) -> LawReport:
    """Convex combinations distribute over Kleisli composition and over the
    product and coproduct of maps, on both sides; checked exactly."""
    rng = random.Random(seed)
    report = LawReport(subject="kleisli-homs", cases=cases, seed=seed,
                       checks={}, failures=[])
    rec = report.record
    pool = [FinitePoset.chain(1), FinitePoset.chain(2), FinitePoset.antichain(2),
            FinitePoset.chain(3), FinitePoset.antichain(3)]
    for _ in range(cases):
        A, B, C, D = (rng.choice(pool) for _ in range(4))
        r = _sample_prob(rng)
        f = random_kernel(rng, A, B)
        f1 = random_kernel(rng, A, B)
        f2 = random_kernel(rng, A, B)
        g = random_kernel(rng, B, C)
        g1 = random_kernel(rng, B, C)
        g2 = random_kernel(rng, B, C)
        h = random_kernel(rng, C, D)

        lhs = kleisli_compose(fn_combine(g1, r, g2, C), f, C)
        rhs = fn_combine(kleisli_compose(g1, f, C), r, kleisli_compose(g2, f, C), C)
        rec("compose-left", kernels_equal(lhs, rhs), f"r={r}")

        lhs = kleisli_compose(g, fn_combine(f1, r, f2, B), C)
        rhs = fn_combine(kleisli_compose(g, f1, C), r, kleisli_compose(g, f2, C), C)
        rec("compose-right", kernels_equal(lhs, rhs), f"r={r}")

        mix = fn_combine(f1, r, f2, B)
        prod = FinitePoset.product(B, D)
        lhs = kernel_tensor(mix, h, prod)
        rhs = fn_combine(kernel_tensor(f1, h, prod), r,
                         kernel_tensor(f2, h, prod), prod)
        rec("tensor-left", kernels_equal(lhs, rhs), f"r={r}")

        prod_db = FinitePoset.product(D, B)
        lhs = kernel_tensor(h, mix, prod_db)
        rhs = fn_combine(kernel_tensor(h, f1, prod_db), r,
                         kernel_tensor(h, f2, prod_db), prod_db)
        rec("tensor-right", kernels_equal(lhs, rhs), f"r={r}")

        cpd = FinitePoset.disjoint_sum(B, D)
        lhs = kernel_coproduct(mix, h, cpd)
        rhs = fn_combine(kernel_coproduct(f1, h, cpd), r,
                         kernel_coproduct(f2, h, cpd), cpd)
        rec("coproduct-left", kernels_equal(lhs, rhs), f"r={r}")

        cpd2 = FinitePoset.disjoint_sum(D, B)
        lhs = kernel_coproduct(h, mix, cpd2)
        rhs = fn_combine(kernel_coproduct(h, f1, cpd2), r,
                         kernel_coproduct(h, f2, cpd2), cpd2)
        rec("coproduct-right", kernels_equal(lhs, rhs), f"r={r}")
    return report
