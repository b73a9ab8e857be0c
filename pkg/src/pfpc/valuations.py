"""Subprobability valuations on finite posets, with exact rational arithmetic.

On a finite poset the Scott topology is exactly the family of upper sets,
and every strict, modular, monotone map from opens to [0,1] is induced by
nonnegative point weights (a convex sum of Dirac valuations).  Point weights
are therefore the canonical representation here; the open-set functional
view (`eval_open`, `from_open_map`) and the Choquet integral are derived
from it and cross-checked against it.

Because every valuation here is such a finite convex sum already, the
various order- and topology-based completions of the simple valuations
that matter on infinite carriers all coincide at this scale; there is
exactly one valuations space to implement, and its monad structure
(unit, extension, multiplication, strength, tensor) is checked directly.

Everything in this module is a Fraction; all laws are checked as exact
equalities, never within a tolerance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Optional, Sequence

Element = Hashable
UpperSet = frozenset

OPEN_ENUM_LIMIT = 16  # upper-set enumeration guard
LAW_SUITE_LIMIT = 6   # randomized law suites stay on small posets


class SizeGuardError(Exception):
    pass


class PosetMismatchError(Exception):
    pass


class NotAValuationError(Exception):
    """from_open_map input violates a valuation axiom; names the axiom."""

    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(f"not a valuation: {axiom}" + (f" ({detail})" if detail else ""))


class FinitePoset:
    """A finite partial order; the order axioms are checked on construction."""

    def __init__(self, elements: Sequence[Element],
                 leq_pairs: Iterable[tuple[Element, Element]],
                 name: str = "poset"):
        self.elements = tuple(elements)
        self.name = name
        index = {x: i for i, x in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise ValueError("duplicate elements")
        self._index = index
        rel = {(x, x) for x in self.elements}
        for x, y in leq_pairs:
            if x not in index or y not in index:
                raise ValueError(f"pair ({x!r}, {y!r}) outside the carrier")
            rel.add((x, y))
        # transitive closure, then antisymmetry check
        changed = True
        while changed:
            changed = False
            for x, y in list(rel):
                for y2, z in list(rel):
                    if y == y2 and (x, z) not in rel:
                        rel.add((x, z))
                        changed = True
        for x, y in rel:
            if x != y and (y, x) in rel:
                raise ValueError(f"antisymmetry fails on {x!r}, {y!r}")
        self._rel = frozenset(rel)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FinitePoset({self.name}, n={len(self)})"

    def leq(self, x: Element, y: Element) -> bool:
        return (x, y) in self._rel

    def principal_up(self, x: Element) -> UpperSet:
        return frozenset(y for y in self.elements if self.leq(x, y))

    def strict_up(self, x: Element) -> UpperSet:
        return frozenset(y for y in self.elements if self.leq(x, y) and y != x)

    def is_upper(self, s: frozenset) -> bool:
        return all(y in s
                   for x in s for y in self.elements if self.leq(x, y))

    def upper_sets(self) -> list[UpperSet]:
        """All Scott opens (= upper sets), including the empty and full set."""
        cached = getattr(self, "_upper_sets", None)
        if cached is not None:
            return cached
        if len(self) > OPEN_ENUM_LIMIT:
            raise SizeGuardError(
                f"upper-set enumeration is guarded to |poset| <= {OPEN_ENUM_LIMIT}")
        ups = {x: self.principal_up(x) for x in self.elements}
        out = []
        for bits in itertools.product((False, True), repeat=len(self)):
            s = frozenset(x for x, b in zip(self.elements, bits) if b)
            if all(ups[x] <= s for x in s):
                out.append(s)
        self._upper_sets = out
        return out

    def linear_extension(self) -> list[Element]:
        pending = list(self.elements)
        out: list[Element] = []
        while pending:
            for x in pending:
                if all(not self.leq(y, x) for y in pending if y != x):
                    out.append(x)
                    pending.remove(x)
                    break
            else:
                raise AssertionError("cycle in a checked poset")
        return out

    # ------------------------------------------------------------ builders

    @staticmethod
    def chain(n: int) -> FinitePoset:
        elems = list(range(n))
        return FinitePoset(elems, [(i, i + 1) for i in range(n - 1)],
                           name=f"chain:{n}")

    @staticmethod
    def antichain(n: int) -> FinitePoset:
        return FinitePoset(list(range(n)), [], name=f"antichain:{n}")

    @staticmethod
    def diamond() -> FinitePoset:
        return FinitePoset(["bot", "l", "r", "top"],
                           [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
                           name="diamond")

    @staticmethod
    def product(p: FinitePoset, q: FinitePoset) -> FinitePoset:
        elems = [(x, y) for x in p.elements for y in q.elements]
        pairs = [((x1, y1), (x2, y2))
                 for (x1, y1) in elems for (x2, y2) in elems
                 if p.leq(x1, x2) and q.leq(y1, y2)]
        return FinitePoset(elems, pairs, name=f"{p.name}*{q.name}")

    @staticmethod
    def disjoint_sum(p: FinitePoset, q: FinitePoset) -> FinitePoset:
        elems = [(1, x) for x in p.elements] + [(2, y) for y in q.elements]
        pairs = ([((1, a), (1, b)) for a in p.elements for b in p.elements
                  if p.leq(a, b)]
                 + [((2, a), (2, b)) for a in q.elements for b in q.elements
                    if q.leq(a, b)])
        return FinitePoset(elems, pairs, name=f"{p.name}+{q.name}")


def poset_from_spec(spec: str) -> FinitePoset:
    """Build 'chain:N', 'antichain:N' or 'diamond' from its CLI spelling."""
    if spec == "diamond":
        return FinitePoset.diamond()
    kind, _, arg = spec.partition(":")
    if kind in ("chain", "antichain") and arg.isdigit() and int(arg) >= 1:
        n = int(arg)
        return FinitePoset.chain(n) if kind == "chain" else FinitePoset.antichain(n)
    raise ValueError(f"unknown poset spec {spec!r}")


# --------------------------------------------------------------------------
# Valuations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Valuation:
    """A subprobability valuation, stored as nonnegative point weights."""

    poset: FinitePoset
    weights: tuple[tuple[Element, Fraction], ...]  # sorted by element index

    @staticmethod
    def from_weights(poset: FinitePoset,
                     weights: dict[Element, Fraction]) -> Valuation:
        clean: dict[Element, Fraction] = {}
        total = Fraction(0)
        for x, w in weights.items():
            if x not in poset._index:
                raise PosetMismatchError(f"element {x!r} outside {poset!r}")
            w = Fraction(w)
            if w < 0:
                raise NotAValuationError("nonnegativity", f"weight of {x!r} is {w}")
            if w > 0:
                clean[x] = w
                total += w
        if total > 1:
            raise NotAValuationError("mass", f"total weight {total} exceeds 1")
        ordered = tuple(sorted(clean.items(), key=lambda kv: poset._index[kv[0]]))
        return Valuation(poset, ordered)

    def weight(self, x: Element) -> Fraction:
        for y, w in self.weights:
            if y == x:
                return w
        return Fraction(0)

    def weight_dict(self) -> dict[Element, Fraction]:
        return dict(self.weights)

    def mass(self) -> Fraction:
        return sum((w for _, w in self.weights), Fraction(0))

    def support(self) -> tuple[Element, ...]:
        return tuple(x for x, _ in self.weights)

    def of_open(self, u: UpperSet) -> Fraction:
        return sum((w for x, w in self.weights if x in u), Fraction(0))

    def __repr__(self) -> str:
        inner = " + ".join(f"{w}*d({x!r})" for x, w in self.weights) or "0"
        return f"<{inner}>"


def zero(poset: FinitePoset) -> Valuation:
    return Valuation.from_weights(poset, {})


def unit(poset: FinitePoset, x: Element) -> Valuation:
    """The Dirac valuation at x: the monad unit."""
    return Valuation.from_weights(poset, {x: Fraction(1)})


def convex(poset: FinitePoset,
           entries: Sequence[tuple[Fraction, Valuation]]) -> Valuation:
    """The convex sum sum_i r_i nu_i (requires sum r_i <= 1)."""
    weights: dict[Element, Fraction] = {}
    for r, nu in entries:
        if nu.poset is not poset:
            raise PosetMismatchError("convex sum across different posets")
        if r < 0:
            raise NotAValuationError("nonnegativity", f"coefficient {r}")
        for x, w in nu.weights:
            weights[x] = weights.get(x, Fraction(0)) + r * w
    return Valuation.from_weights(poset, weights)


def eval_open(nu: Valuation, u: UpperSet) -> Fraction:
    if not nu.poset.is_upper(u):
        raise PosetMismatchError(f"{set(u)!r} is not an upper set of {nu.poset!r}")
    return nu.of_open(u)


def from_open_map(poset: FinitePoset,
                  m: dict[UpperSet, Fraction]) -> Valuation:
    """Recover a valuation from its open-set map, or name the violated axiom.

    Point weights come from inclusion-exclusion on principal upper sets:
    w(x) = m(up x) - m(up x minus {x}).  The input must be strict, monotone
    and modular, and must yield nonnegative weights of total mass <= 1.
    """
    opens = poset.upper_sets()
    for u in opens:
        if u not in m:
            raise NotAValuationError("totality", f"missing open {set(u)!r}")
    if m[frozenset()] != 0:
        raise NotAValuationError("strictness", f"value at empty set is {m[frozenset()]}")
    for u in opens:
        for v in opens:
            if u <= v and m[u] > m[v]:
                raise NotAValuationError(
                    "monotonicity", f"{set(u)!r} <= {set(v)!r} but {m[u]} > {m[v]}")
    for u in opens:
        for v in opens:
            lhs = m[u] + m[v]
            rhs = m[u | v] + m[u & v]
            if lhs != rhs:
                raise NotAValuationError(
                    "modularity",
                    f"on {set(u)!r}, {set(v)!r}: {lhs} != {rhs}")
    weights: dict[Element, Fraction] = {}
    for x in poset.elements:
        w = m[poset.principal_up(x)] - m[poset.strict_up(x)]
        if w < 0:
            raise NotAValuationError("nonnegativity", f"weight of {x!r} is {w}")
        weights[x] = w
    nu = Valuation.from_weights(poset, weights)
    for u in opens:
        if nu.of_open(u) != m[u]:
            raise NotAValuationError(
                "representability", f"open {set(u)!r} disagrees after reconstruction")
    return nu


# --------------------------------------------------------------------------
# Scott functions and the Choquet integral
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ScottFunction:
    """A monotone map into [0,1]; on finite posets monotone = continuous."""

    poset: FinitePoset
    values: tuple[tuple[Element, Fraction], ...]

    @staticmethod
    def from_dict(poset: FinitePoset,
                  values: dict[Element, Fraction]) -> ScottFunction:
        for x in poset.elements:
            if x not in values:
                raise ValueError(f"missing value at {x!r}")
            v = values[x]
            if not 0 <= v <= 1:
                raise ValueError(f"value {v} at {x!r} outside [0,1]")
        for x in poset.elements:
            for y in poset.elements:
                if poset.leq(x, y) and values[x] > values[y]:
                    raise ValueError(
                        f"not monotone: {x!r} <= {y!r} but {values[x]} > {values[y]}")
        ordered = tuple(sorted(values.items(), key=lambda kv: poset._index[kv[0]]))
        return ScottFunction(poset, ordered)

    def __call__(self, x: Element) -> Fraction:
        for y, v in self.values:
            if y == x:
                return v
        raise KeyError(x)


def _scott_unchecked(poset: FinitePoset,
                     values: dict[Element, Fraction]) -> ScottFunction:
    # internal: for maps that are monotone by construction (e.g. sections of
    # characteristic functions of upper sets)
    ordered = tuple(sorted(values.items(), key=lambda kv: poset._index[kv[0]]))
    return ScottFunction(poset, ordered)


def choquet(f: ScottFunction, nu: Valuation) -> Fraction:
    """The threshold integral of f against nu.

    Integrates t |-> nu(f > t) over [0,1] exactly, as the finite sum over the
    sorted distinct values of f; equals the weight sum  sum_x w(x) f(x).
    """
    if f.poset is not nu.poset:
        raise PosetMismatchError("function and valuation on different posets")
    thresholds = sorted({Fraction(0)} | {v for _, v in f.values})
    total = Fraction(0)
    for lo, hi in zip(thresholds, thresholds[1:]):
        above = frozenset(x for x in f.poset.elements if f(x) > lo)
        total += (hi - lo) * nu.of_open(above)
    return total


def weight_sum(f: ScottFunction, nu: Valuation) -> Fraction:
    """The simple-valuation formula sum_i r_i f(x_i)."""
    return sum((w * f(x) for x, w in nu.weights), Fraction(0))


# --------------------------------------------------------------------------
# Monad structure
# --------------------------------------------------------------------------

def _check_kernel(f: dict[Element, Valuation], dom: FinitePoset,
                  cod: FinitePoset) -> None:
    for x in dom.elements:
        if x not in f:
            raise PosetMismatchError(f"kernel undefined at {x!r}")
        if f[x].poset is not cod:
            raise PosetMismatchError("kernel lands outside the stated codomain")


def kleisli_ext(f: dict[Element, Valuation], nu: Valuation,
                cod: FinitePoset) -> Valuation:
    """Kleisli extension: weight of y is  sum_x w_nu(x) * w_f(x)(y)."""
    _check_kernel(f, nu.poset, cod)
    weights: dict[Element, Fraction] = {}
    for x, wx in nu.weights:
        for y, wy in f[x].weights:
            weights[y] = weights.get(y, Fraction(0)) + wx * wy
    return Valuation.from_weights(cod, weights)


def kleisli_ext_via_opens(f: dict[Element, Valuation], nu: Valuation,
                          cod: FinitePoset) -> dict[UpperSet, Fraction]:
    """The defining form of the extension: U |-> integral of x |-> f(x)(U).

    Returns the open-set map, computed with the Choquet integral only; the
    weight-based `kleisli_ext` must agree with it on every open.
    """
    _check_kernel(f, nu.poset, cod)
    out: dict[UpperSet, Fraction] = {}
    for u in cod.upper_sets():
        g = ScottFunction.from_dict(
            nu.poset, {x: f[x].of_open(u) for x in nu.poset.elements})
        out[u] = choquet(g, nu)
    return out


def multiply(poset: FinitePoset,
             varpi: Sequence[tuple[Fraction, Valuation]]) -> Valuation:
    """Monad multiplication on a simple valuation over valuations.

    Flattens  sum_i r_i delta_(nu_i)  to the convex sum  sum_i r_i nu_i.
    """
    total = sum((r for r, _ in varpi), Fraction(0))
    if total > 1:
        raise NotAValuationError("mass", f"outer weights total {total}")
    return convex(poset, list(varpi))


def strength(dom: FinitePoset, x: Element, nu: Valuation,
             product: Optional[FinitePoset] = None) -> Valuation:
    """Pair a point with a valuation: weight of (x, y) is w_nu(y)."""
    if x not in dom._index:
        raise PosetMismatchError(f"{x!r} outside {dom!r}")
    prod = product if product is not None else FinitePoset.product(dom, nu.poset)
    weights = {(x, y): w for y, w in nu.weights}
    return Valuation.from_weights(prod, weights)


def tensor(nu: Valuation, xi: Valuation,
           product: Optional[FinitePoset] = None) -> Valuation:
    """Independent product (double strength): w(x,y) = w_nu(x) * w_xi(y)."""
    prod = product if product is not None else FinitePoset.product(nu.poset, xi.poset)
    weights = {(x, y): wx * wy for x, wx in nu.weights for y, wy in xi.weights}
    return Valuation.from_weights(prod, weights)


def map_valuation(h: Callable[[Element], Element], nu: Valuation,
                  cod: FinitePoset) -> Valuation:
    """Pushforward along a monotone map: U |-> nu(h^-1 U) in weight form."""
    weights: dict[Element, Fraction] = {}
    for x, w in nu.weights:
        y = h(x)
        weights[y] = weights.get(y, Fraction(0)) + w
    return Valuation.from_weights(cod, weights)


def iterated_integral(nu: Valuation, xi: Valuation, u: UpperSet,
                      product: FinitePoset, outer_first: bool) -> Fraction:
    """One side of the Fubini equation, computed purely with Choquet integrals.

    outer_first=True integrates x |-> (integral of chi_U(x, .) against xi)
    against nu; False integrates in the other order.  No weight shortcut.
    """
    if not product.is_upper(u):
        raise PosetMismatchError("U is not upper in the product order")
    d, e = nu.poset, xi.poset
    one, nil = Fraction(1), Fraction(0)

    def chi_section_x(x: Element) -> Fraction:
        g = _scott_unchecked(e, {y: one if (x, y) in u else nil for y in e.elements})
        return choquet(g, xi)

    def chi_section_y(y: Element) -> Fraction:
        g = _scott_unchecked(d, {x: one if (x, y) in u else nil for x in d.elements})
        return choquet(g, nu)

    if outer_first:
        outer = _scott_unchecked(d, {x: chi_section_x(x) for x in d.elements})
        return choquet(outer, nu)
    outer = _scott_unchecked(e, {y: chi_section_y(y) for y in e.elements})
    return choquet(outer, xi)


def check_fubini(nu: Valuation, xi: Valuation, u: UpperSet,
                 product: Optional[FinitePoset] = None) -> bool:
    """Do both iterated integrals of chi_U agree exactly?"""
    prod = product if product is not None else FinitePoset.product(nu.poset, xi.poset)
    lhs = iterated_integral(nu, xi, u, prod, outer_first=True)
    rhs = iterated_integral(nu, xi, u, prod, outer_first=False)
    return lhs == rhs


def tensor_via_integrals(nu: Valuation, xi: Valuation,
                         product: FinitePoset,
                         outer_first: bool) -> dict[UpperSet, Fraction]:
    """The double strength as an open-set map, in either integration order."""
    return {u: iterated_integral(nu, xi, u, product, outer_first)
            for u in product.upper_sets()}


def stochastic_leq(nu1: Valuation, nu2: Valuation) -> bool:
    """nu1 <= nu2 iff nu1(U) <= nu2(U) for every open U."""
    if nu1.poset is not nu2.poset:
        raise PosetMismatchError("stochastic order needs a common poset")
    return all(nu1.of_open(u) <= nu2.of_open(u) for u in nu1.poset.upper_sets())


def valuations_equal(nu1: Valuation, nu2: Valuation) -> bool:
    return nu1.poset is nu2.poset and nu1.weights == nu2.weights


# --------------------------------------------------------------------------
# Random data
# --------------------------------------------------------------------------

_DENOMS = (2, 3, 4, 5, 6, 8, 12)


def random_fraction(rng: random.Random, den_pool: Sequence[int] = _DENOMS) -> Fraction:
    den = rng.choice(den_pool)
    return Fraction(rng.randint(0, den), den)


def random_valuation(rng: random.Random, poset: FinitePoset,
                     *, full_mass: Optional[bool] = None) -> Valuation:
    den = rng.choice(_DENOMS)
    want_full = full_mass if full_mass is not None else rng.random() < 0.4
    weights: dict[Element, Fraction] = {}
    remaining = den if want_full else rng.randint(0, den)
    elems = list(poset.elements)
    rng.shuffle(elems)
    for x in elems[:-1]:
        take = rng.randint(0, remaining)
        weights[x] = Fraction(take, den)
        remaining -= take
    if elems:
        weights[elems[-1]] = Fraction(
            remaining if want_full else rng.randint(0, remaining), den)
    return Valuation.from_weights(poset, weights)


def random_scott_function(rng: random.Random, poset: FinitePoset,
                          den: int = 8) -> ScottFunction:
    values: dict[Element, Fraction] = {}
    for x in poset.linear_extension():
        lo = max((values[y] for y in poset.elements
                  if y in values and poset.leq(y, x)), default=Fraction(0))
        num = rng.randint(int(lo * den), den)
        values[x] = Fraction(num, den)
    return ScottFunction.from_dict(poset, values)


def random_monotone_map(rng: random.Random,
                        poset: FinitePoset) -> dict[Element, Element]:
    """A random order-preserving endofunction.

    Greedy assignment along a linear extension, rejecting draws that paint
    themselves into a corner (incomparable images with no common upper
    bound); falls back to the identity if unlucky.
    """
    order = poset.linear_extension()
    for _ in range(50):
        out: dict[Element, Element] = {}
        ok = True
        for x in order:
            lower_images = [out[z] for z in poset.elements
                            if z in out and poset.leq(z, x)]
            candidates = [y for y in poset.elements
                          if all(poset.leq(img, y) for img in lower_images)]
            if not candidates:
                ok = False
                break
            out[x] = rng.choice(candidates)
        if ok:
            return out
    return {x: x for x in poset.elements}


def random_kernel(rng: random.Random, dom: FinitePoset,
                  cod: FinitePoset) -> dict[Element, Valuation]:
    """A random map dom -> valuations on cod, monotone into the stochastic
    order.

    Construction: pick basis valuations nu_1..nu_k and monotone coefficient
    functions h_1..h_k, and set f(x) = sum_i (h_i(x)/k) nu_i.  Every open
    then measures as a nonnegative monotone combination, so x <= x' gives
    f(x) <= f(x') stochastically, and the total mass stays at most 1.
    """
    k = rng.randint(1, 3)
    basis = [random_valuation(rng, cod) for _ in range(k)]
    coeffs = [random_scott_function(rng, dom) for _ in range(k)]
    out: dict[Element, Valuation] = {}
    for x in dom.elements:
        entries = [(h(x) / k, nu) for h, nu in zip(coeffs, basis)]
        out[x] = convex(cod, entries)
    return out


# --------------------------------------------------------------------------
# Law suite
# --------------------------------------------------------------------------

@dataclass
class LawFailure:
    law: str
    detail: str


@dataclass
class LawReport:
    subject: str
    cases: int
    seed: int
    checks: dict[str, int]
    failures: list[LawFailure]

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, law: str, ok: bool, detail: str) -> None:
        self.checks[law] = self.checks.get(law, 0) + 1
        if not ok:
            self.failures.append(LawFailure(law, detail))

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "cases": self.cases,
            "seed": self.seed,
            "checks": dict(sorted(self.checks.items())),
            "failures": [{"law": f.law, "detail": f.detail} for f in self.failures],
            "passed": self.passed,
        }


def law_suite(poset: FinitePoset, seed: int, cases: int = 200) -> LawReport:
    """Randomized exact checks of the monad laws, strength and commutativity."""
    if len(poset) > LAW_SUITE_LIMIT:
        raise SizeGuardError(f"law suites are guarded to |poset| <= {LAW_SUITE_LIMIT}")
    rng = random.Random(seed)
    report = LawReport(subject=poset.name, cases=cases, seed=seed,
                       checks={}, failures=[])
    record = report.record
    prod_self = FinitePoset.product(poset, poset)
    for _ in range(cases):
        nu = random_valuation(rng, poset)
        xi = random_valuation(rng, poset)
        f = random_kernel(rng, poset, poset)
        g = random_kernel(rng, poset, poset)
        x = rng.choice(poset.elements)

        # left unit: extending f along a Dirac just applies f
        lhs = kleisli_ext(f, unit(poset, x), poset)
        record("left-unit", valuations_equal(lhs, f[x]),
               f"x={x!r} f(x)={f[x]!r} got {lhs!r}")

        # right unit: extending the unit changes nothing
        lhs = kleisli_ext({y: unit(poset, y) for y in poset.elements}, nu, poset)
        record("right-unit", valuations_equal(lhs, nu), f"nu={nu!r} got {lhs!r}")

        # associativity: (g+ after f)+ = g+ after f+
        composed = {y: kleisli_ext(g, f[y], poset) for y in poset.elements}
        lhs = kleisli_ext(composed, nu, poset)
        rhs = kleisli_ext(g, kleisli_ext(f, nu, poset), poset)
        record("associativity", valuations_equal(lhs, rhs),
               f"nu={nu!r} lhs={lhs!r} rhs={rhs!r}")

        # multiplication agrees with extending the identity kernel
        entries = [(random_fraction(rng, (3, 4)), random_valuation(rng, poset))
                   for _ in range(2)]
        scale = sum(r for r, _ in entries)
        if scale > 1:
            entries = [(r / scale, v) for r, v in entries]
        mu = multiply(poset, entries)
        flat = convex(poset, entries)
        record("multiplication", valuations_equal(mu, flat),
               f"entries={entries!r}")

        # strength transports mass unchanged
        st = strength(poset, x, nu, prod_self)
        record("strength-mass", st.mass() == nu.mass(),
               f"x={x!r} nu={nu!r}")
        record("strength-weights",
               all(st.weight((x, y)) == nu.weight(y) for y in poset.elements),
               f"x={x!r} nu={nu!r}")

        # naturality of strength in both components, along a random
        # order-preserving endomap h
        h = random_monotone_map(rng, poset)
        lhs = strength(poset, x, map_valuation(lambda y: h[y], nu, poset),
                       prod_self)
        rhs = map_valuation(lambda xy: (xy[0], h[xy[1]]), st, prod_self)
        record("strength-naturality-right", valuations_equal(lhs, rhs),
               f"x={x!r} nu={nu!r} h={h!r}")
        lhs = strength(poset, h[x], nu, prod_self)
        rhs = map_valuation(lambda xy: (h[xy[0]], xy[1]), st, prod_self)
        record("strength-naturality-left", valuations_equal(lhs, rhs),
               f"x={x!r} nu={nu!r} h={h!r}")

        # commutativity: both integration orders give the same product
        # valuation on every open of the product (the Fubini equation)
        left = tensor_via_integrals(nu, xi, prod_self, outer_first=True)
        right = tensor_via_integrals(nu, xi, prod_self, outer_first=False)
        record("fubini", left == right, f"nu={nu!r} xi={xi!r}")

        # and both equal the weight-product tensor
        tens = tensor(nu, xi, prod_self)
        record("tensor-weights",
               all(tens.of_open(u) == left[u] for u in left),
               f"nu={nu!r} xi={xi!r}")

    return report
