"""Acceptance suite: one test per criterion, each printing PASS/FAIL.

Every tolerance is pinned here.  Exact means exact: rational equality with
zero tolerance.  The only approximate comparisons are the two documented
ones: the 1e-6 gap bound for the recursive programs and the three-sigma
binomial envelope for Monte-Carlo agreement.
"""

import itertools
import random
import time

from fractions import Fraction

from pfpc import corpus as corpus_mod
from pfpc import prelude
from pfpc.denotational import (
    adequacy_check, let_commutativity_check, soundness_check,
)
from pfpc.distribution import explore
from pfpc.generate import random_closed_term, random_term, random_type
from pfpc.kegelspitze import (
    PointwiseFunctions, UnitInterval, ValuationSpace, axiom_suite,
    barycenter_matches_multiply, em_law_suite, kleisli_convexity_suite,
)
from pfpc.operational import is_value, step
from pfpc.syntax import App, Pair, Var, types_equal
from pfpc.typecheck import check_program, elaborate
from pfpc.valuations import (
    FinitePoset, check_fubini, choquet, law_suite, random_scott_function,
    random_valuation, weight_sum,
)

F = Fraction
SEED = 7

COINS_RUN = App(prelude.coins_term(), prelude.UNIT)
GEO_RUN = App(prelude.geometric_term(), prelude.UNIT)


def _report(criterion: str, passed: bool, detail: str = "") -> None:
    tag = "PASS" if passed else "FAIL"
    print(f"{tag} {criterion}" + (f" [{detail}]" if detail else ""))
    assert passed, f"{criterion}: {detail}"


def all_posets_up_to_iso(max_size: int) -> list[FinitePoset]:
    """Every partial order on at most max_size points, up to isomorphism."""
    reps = []
    seen = set()
    for size in range(1, max_size + 1):
        elems = list(range(size))
        offdiag = [(i, j) for i in elems for j in elems if i != j]
        perms = [dict(zip(elems, p)) for p in itertools.permutations(elems)]
        for bits in itertools.product((False, True), repeat=len(offdiag)):
            rel = {p for p, b in zip(offdiag, bits) if b}
            full = rel | {(i, i) for i in elems}
            if any((a, c) not in full
                   for a, b in full for b2, c in full if b == b2):
                continue
            if any(a != b and (b, a) in full for a, b in full):
                continue
            canon = min(tuple(sorted((pm[a], pm[b]) for a, b in full))
                        for pm in perms)
            if canon in seen:
                continue
            seen.add(canon)
            reps.append(FinitePoset(elems, rel, name=f"p{size}.{len(reps)}"))
    return reps


def test_criterion_01_type_safety():
    rng = random.Random(SEED)
    started = time.monotonic()
    violations = 0
    for _ in range(10_000):
        t = random_closed_term(rng, size=12)
        ty = check_program(t)
        if is_value(t):
            continue
        succs = step(t)  # progress: must not raise
        if not succs:
            violations += 1
            continue
        for _, succ in succs:
            if not types_equal(check_program(succ), ty):
                violations += 1
    elapsed = time.monotonic() - started
    _report("criterion 1 (type safety on 10,000 generated terms)",
            violations == 0 and elapsed < 60,
            f"violations={violations}, {elapsed:.1f}s")


def test_criterion_02_mass_conservation():
    rng = random.Random(SEED + 1)
    bad = 0
    checked = 0
    terms = [random_closed_term(rng, size=10) for _ in range(200)]
    terms += [COINS_RUN, GEO_RUN, prelude.omega_term(),
              elaborate(corpus_mod.load_term("bools")),
              elaborate(corpus_mod.load_term("natadd")),
              elaborate(corpus_mod.load_term("letpair"))]
    for t in terms:
        depths = (0, 1, 3, 8, 15)
        for d in depths:
            rep = explore(t, d)
            checked += 1
            if rep.halt_mass() + rep.live_mass != 1:
                bad += 1
            if any(a > b for a, b in zip(rep.per_depth_halt,
                                         rep.per_depth_halt[1:])):
                bad += 1
    _report("criterion 2 (exact mass conservation, monotone halt)",
            bad == 0, f"{checked} explorations, {bad} violations")


def test_criterion_03_coins_convergence():
    started = time.monotonic()
    depth = corpus_mod.steps_for_rounds(21)
    rep = explore(COINS_RUN, depth)
    staircase = all(
        halt == 1 - F(1, 2 ** corpus_mod.rounds_at(d))
        for d, halt in enumerate(rep.per_depth_halt))
    budget = corpus_mod.steps_for_rounds(20)
    bound = rep.per_depth_halt[budget]
    elapsed = time.monotonic() - started
    _report("criterion 3 (coins halt staircase and 1e-6 budget)",
            staircase and bound >= 1 - F(1, 10 ** 6) and elapsed < 10,
            f"bound={bound} at depth {budget}, {elapsed:.1f}s")


def test_criterion_04_monad_laws_and_fubini():
    started = time.monotonic()
    posets = all_posets_up_to_iso(3)
    assert len(posets) == 8  # 1 + 2 + 5 isomorphism classes
    rng = random.Random(SEED + 2)
    failures = 0
    fubini_pairs = {p.name: 0 for p in posets}
    products = {(a.name, b.name): FinitePoset.product(a, b)
                for a in posets for b in posets}
    # unit, associativity and the rest of the monad laws: 500 draws per poset
    for p in posets:
        rep = law_suite(p, seed=rng.randrange(2 ** 32), cases=500)
        failures += len(rep.failures)
    # the Fubini equation on every upper set of every product, spreading
    # >= 500 valuation pairs over each left factor
    for d in posets:
        for e in posets:
            prod = products[(d.name, e.name)]
            opens = prod.upper_sets()
            for _ in range(63):
                nu = random_valuation(rng, d)
                xi = random_valuation(rng, e)
                fubini_pairs[d.name] += 1
                for u in opens:
                    if not check_fubini(nu, xi, u, prod):
                        failures += 1
    elapsed = time.monotonic() - started
    enough = all(v >= 500 for v in fubini_pairs.values())
    _report("criterion 4 (monad laws + Fubini, all posets of size <= 3)",
            failures == 0 and enough and elapsed < 120,
            f"failures={failures}, pairs/poset>=500={enough}, {elapsed:.1f}s")


def test_criterion_05_choquet_consistency():
    rng = random.Random(SEED + 3)
    posets = all_posets_up_to_iso(3) + [FinitePoset.diamond(),
                                        FinitePoset.chain(5)]
    bad = 0
    for i in range(10_000):
        p = posets[i % len(posets)]
        f = random_scott_function(rng, p)
        nu = random_valuation(rng, p)
        if choquet(f, nu) != weight_sum(f, nu):
            bad += 1
    _report("criterion 5 (Choquet threshold = weight sum, 10,000 draws)",
            bad == 0, f"{bad} mismatches")


def test_criterion_06_kegelspitze_and_em_laws():
    chain2 = FinitePoset.chain(2)
    carriers = [UnitInterval(), ValuationSpace(chain2),
                ValuationSpace(FinitePoset.diamond()),
                PointwiseFunctions(("a", "b"), ValuationSpace(chain2))]
    failures = 0
    for i, k in enumerate(carriers):
        failures += len(axiom_suite(k, seed=SEED + i, cases=500).failures)
        failures += len(em_law_suite(k, seed=SEED + 10 + i, cases=500).failures)
    for i, poset in enumerate((chain2, FinitePoset.antichain(3))):
        rep = barycenter_matches_multiply(poset, seed=SEED + 20 + i, cases=500)
        failures += len(rep.failures)
    _report("criterion 6 (Kegelspitze axioms, EM laws, barycenter=multiply)",
            failures == 0, f"failures={failures}")


def test_criterion_07_kleisli_convexity():
    rep = kleisli_convexity_suite(seed=SEED + 4, cases=300)
    enough = all(rep.checks[law] >= 300 for law in
                 ("compose-left", "compose-right", "tensor-left",
                  "tensor-right", "coproduct-left", "coproduct-right"))
    _report("criterion 7 (convexity through Kleisli composition, x, +)",
            rep.passed and enough,
            f"failures={len(rep.failures)}")


def test_criterion_08_soundness():
    rng = random.Random(SEED + 5)
    done = 0
    inexact = 0
    while done < 200:
        t = random_closed_term(rng, size=12)
        if is_value(t):
            continue
        rep = soundness_check(t, fuel=60)
        if not rep.exact:
            inexact += 1
        done += 1
    _report("criterion 8 (one-step soundness, 200 recursion-free terms)",
            inexact == 0, f"inexact={inexact}")


def test_criterion_09_strong_adequacy():
    # recursion-free corpus: exact equality, zero tolerance
    rng = random.Random(SEED + 6)
    exact_failures = 0
    for name in ("fair", "bools", "letpair", "letpair_swapped"):
        core = elaborate(corpus_mod.load_term(name))
        rep = adequacy_check(core, fuel=100, steps=100, tol=F(0))
        if not (rep.exact and rep.passed):
            exact_failures += 1
    done = 0
    while done < 100:
        t = random_closed_term(rng, size=14)
        rep = adequacy_check(t, fuel=300, steps=300, tol=F(0))
        if not (rep.exact and rep.passed):
            exact_failures += 1
        done += 1
    # the two recursive programs: documented budgets, 1e-6 gap, monotone
    tol = F(1, 10 ** 6)
    fuel = corpus_mod.ROUND_FUEL * corpus_mod.ADEQUACY_ROUNDS
    steps = corpus_mod.steps_for_rounds(corpus_mod.ADEQUACY_ROUNDS)
    recursive_ok = True
    for run in (COINS_RUN, GEO_RUN):
        rep = adequacy_check(run, fuel=fuel, steps=steps, tol=tol)
        recursive_ok &= (rep.passed and rep.max_pointwise_gap <= tol
                         and rep.denotational_monotone
                         and rep.operational_monotone)
    _report("criterion 9 (strong adequacy: exact fragment + 1e-6 recursive)",
            exact_failures == 0 and recursive_ok,
            f"exact_failures={exact_failures}, recursive_ok={recursive_ok}")


def test_criterion_10_let_commutativity():
    rng = random.Random(SEED + 7)
    bodies = [Pair(Var("x1"), Var("x2")), Pair(Var("x2"), Var("x1")),
              Var("x1"), Var("x2")]
    failures = 0
    for i in range(100):
        m1 = random_term(rng, random_type(rng, 1), 8)
        m2 = random_term(rng, random_type(rng, 1), 8)
        rep = let_commutativity_check(m1, m2, bodies[i % len(bodies)], fuel=200)
        if not rep.equal:
            failures += 1
    _report("criterion 10 (let reordering, 100 random triples, exact)",
            failures == 0, f"failures={failures}")


def test_criterion_11_monte_carlo_agreement():
    results = corpus_mod.run_corpus(trials=10_000, seed=SEED + 8)
    mc = [r for r in results if "monte-carlo" in r.check]
    rest = [r for r in results if "monte-carlo" not in r.check]
    mc_failures = [r.line() for r in mc if not r.passed]
    other_failures = [r.line() for r in rest if not r.passed]
    _report("criterion 11 (Monte-Carlo within 3 sigma of exact, 10^4 trials)",
            not mc_failures and not other_failures,
            f"mc={len(mc)} checks, failures={mc_failures + other_failures}")
