"""Bundled example programs with machine-checkable expectations.

Budget constants measured for this interpreter's fixpoint encoding (the
tests re-derive them from scratch):

* operationally, the first coin/geometric round completes after
  COINS_FIRST_STEPS reduction steps and every further round costs
  COINS_ROUND_STEPS more, so the halt mass at depth N is exactly
  1 - 2^-rounds_at(N);
* denotationally one round costs ROUND_FUEL beta steps, so the mass at
  fuel 4k is exactly 1 - 2^-k.

Every expectation below is either an exact rational identity or a
Monte-Carlo agreement bound at three binomial standard errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable

from .denotational import adequacy_check, denote, dist_mass
from .distribution import estimate, explore
from .surface import parse_term, pretty, pretty_type
from .syntax import Term, alpha_normalize
from .typecheck import check_program, elaborate

COINS_FIRST_STEPS = 6
COINS_ROUND_STEPS = 7
ROUND_FUEL = 4

ADEQUACY_ROUNDS = 20          # 2^-20 < 1e-6
ADEQUACY_TOL = Fraction(1, 10 ** 6)


def rounds_at(depth: int) -> int:
    """Completed coin rounds within the given number of reduction steps."""
    if depth < COINS_FIRST_STEPS:
        return 0
    return (depth - COINS_FIRST_STEPS) // COINS_ROUND_STEPS + 1


def steps_for_rounds(k: int) -> int:
    """The least depth at which k coin rounds have completed."""
    if k <= 0:
        return 0
    return COINS_FIRST_STEPS + COINS_ROUND_STEPS * (k - 1)


@dataclass
class CheckResult:
    program: str
    check: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        suffix = f"  ({self.detail})" if self.detail and not self.passed else ""
        return f"{tag}  {self.program}: {self.check}{suffix}"


def load_source(name: str) -> str:
    return (resources.files("pfpc") / "corpus" / f"{name}.pfpc").read_text()


def load_term(name: str) -> Term:
    return parse_term(load_source(name))


def _three_sigma(p: Fraction, trials: int) -> float:
    return 3 * math.sqrt(float(p) * float(1 - p) / trials)


def _mc_agrees(program: str, term: Term, steps: int, trials: int,
               seed: int) -> list[CheckResult]:
    """Empirical frequencies vs the exact exploration at the same depth."""
    rep = explore(term, steps)
    emp = estimate(term, trials, steps, rng_seed=seed)
    out = []
    for value, p in rep.value_mass.items():
        freq = emp.frequency(value)
        bound = _three_sigma(p, trials)
        ok = abs(float(freq) - float(p)) <= bound
        out.append(CheckResult(
            program, f"monte-carlo frequency of {pretty(value)}", ok,
            f"exact {p}, empirical {freq}, 3-sigma {bound:.2e}"))
    live = rep.live_mass
    timeout_freq = Fraction(emp.timeouts, trials)
    bound = _three_sigma(live, trials)
    ok = abs(float(timeout_freq) - float(live)) <= bound
    out.append(CheckResult(
        program, "monte-carlo timeout frequency", ok,
        f"exact live {live}, empirical {timeout_freq}, 3-sigma {bound:.2e}"))
    return out


@dataclass
class CorpusProgram:
    name: str
    type_str: str
    run: Callable[[int, int], list[CheckResult]]  # (trials, seed) -> results

    def source(self) -> str:
        return load_source(self.name)


def _check_type(name: str, expected: str) -> CheckResult:
    got = pretty_type(check_program(load_term(name)))
    return CheckResult(name, f"type is {expected}", got == expected,
                       f"inferred {got}")


def _fair_checks(trials: int, seed: int) -> list[CheckResult]:
    t = load_term("fair")
    out = [_check_type("fair", "Bool")]
    rep = explore(t, 1)
    dist = {pretty(v): p for v, p in rep.value_mass.items()}
    out.append(CheckResult(
        "fair", "one-step distribution is {tt: 1/3, ff: 2/3}",
        dist == {"tt": Fraction(1, 3), "ff": Fraction(2, 3)}, f"got {dist}"))
    adeq = adequacy_check(t, fuel=2, steps=2, tol=Fraction(0))
    out.append(CheckResult("fair", "adequacy exact", adeq.exact and adeq.passed))
    out.extend(_mc_agrees("fair", t, 5, trials, seed))
    return out


def _coins_checks(trials: int, seed: int) -> list[CheckResult]:
    out = [_check_type("coins", "1 -> 1")]
    run = load_term("coins_app")
    depth = steps_for_rounds(12)
    rep = explore(run, depth)
    staircase_ok = all(
        halt == 1 - Fraction(1, 2 ** rounds_at(d))
        for d, halt in enumerate(rep.per_depth_halt))
    out.append(CheckResult(
        "coins", "halt staircase is exactly 1 - 2^-rounds(N) for N <= "
        f"{depth}", staircase_ok))
    k10 = steps_for_rounds(10)
    halt10 = rep.per_depth_halt[k10]
    out.append(CheckResult(
        "coins", f"halt lower bound >= 1 - 2^-10 at depth {k10}",
        halt10 >= 1 - Fraction(1, 2 ** 10), f"got {halt10}"))
    adeq = adequacy_check(run, fuel=ROUND_FUEL * ADEQUACY_ROUNDS,
                          steps=steps_for_rounds(ADEQUACY_ROUNDS),
                          tol=ADEQUACY_TOL)
    out.append(CheckResult(
        "coins", f"adequacy gap <= 1e-6 at fuel {ROUND_FUEL * ADEQUACY_ROUNDS}"
        f" / depth {steps_for_rounds(ADEQUACY_ROUNDS)}",
        adeq.passed, f"gap {adeq.max_pointwise_gap}"))
    emp = estimate(run, trials, 500, rng_seed=seed)
    out.append(CheckResult(
        "coins", "halt frequency >= 0.999 over 500-step runs",
        emp.halt_frequency() >= Fraction(999, 1000),
        f"got {emp.halt_frequency()}"))
    out.extend(_mc_agrees("coins", run, 200, trials, seed))
    return out


def _geometric_checks(trials: int, seed: int) -> list[CheckResult]:
    out = [_check_type("geometric", "1 -> Nat")]
    run = load_term("geometric_app")
    rep = explore(run, steps_for_rounds(8))
    dist = {pretty(v): p for v, p in rep.value_mass.items()}
    expected = {str(n): Fraction(1, 2 ** n) for n in range(1, 9)}
    out.append(CheckResult(
        "geometric", "P(result = n) = 2^-n exactly for n <= 8",
        dist == expected, f"got {dist}"))
    adeq = adequacy_check(run, fuel=ROUND_FUEL * ADEQUACY_ROUNDS,
                          steps=steps_for_rounds(ADEQUACY_ROUNDS),
                          tol=ADEQUACY_TOL)
    out.append(CheckResult(
        "geometric", "adequacy gap <= 1e-6 at the documented budgets",
        adeq.passed, f"gap {adeq.max_pointwise_gap}"))
    out.extend(_mc_agrees("geometric", run, steps_for_rounds(6), trials, seed))
    return out


def _omega_checks(trials: int, seed: int) -> list[CheckResult]:
    t = load_term("omega")
    out = [_check_type("omega", "1")]
    ok = all(explore(t, d).halt_mass() == 0 for d in (0, 10, 40, 80))
    out.append(CheckResult("omega", "halt lower bound is 0 at every budget", ok))
    d = denote({}, t, 60)
    out.append(CheckResult("omega", "denotation has zero mass",
                           dist_mass(d) == 0, f"mass {dist_mass(d)}"))
    out.extend(_mc_agrees("omega", t, 30, trials, seed))
    return out


def _bools_checks(trials: int, seed: int) -> list[CheckResult]:
    t = load_term("bools")
    out = [_check_type("bools", "Bool * Bool * Bool")]
    core = elaborate(t)
    rep = explore(core, 60)
    expected = alpha_normalize(parse_term("(ff, (tt, ff))"))
    ok = rep.live_mass == 0 and rep.value_mass == {expected: Fraction(1)}
    out.append(CheckResult("bools", "evaluates to (ff, (tt, ff))", ok,
                           f"got {[pretty(v) for v in rep.value_mass]}"))
    adeq = adequacy_check(core, fuel=60, steps=60, tol=Fraction(0))
    out.append(CheckResult("bools", "adequacy exact", adeq.exact and adeq.passed))
    out.extend(_mc_agrees("bools", core, 60, trials, seed))
    return out


def _natadd_checks(trials: int, seed: int) -> list[CheckResult]:
    t = load_term("natadd")
    out = [_check_type("natadd", "Nat")]
    core = elaborate(t)
    rep = explore(core, 120)
    dist = {pretty(v): p for v, p in rep.value_mass.items()}
    out.append(CheckResult("natadd", "2 + 3 evaluates to 5",
                           dist == {"5": Fraction(1)} and rep.live_mass == 0,
                           f"got {dist}"))
    adeq = adequacy_check(core, fuel=120, steps=120, tol=Fraction(0))
    out.append(CheckResult("natadd", "adequacy exact", adeq.exact and adeq.passed))
    out.extend(_mc_agrees("natadd", core, 120, trials, seed))
    return out


def _letpair_checks(trials: int, seed: int) -> list[CheckResult]:
    first = elaborate(load_term("letpair"))
    second = elaborate(load_term("letpair_swapped"))
    out = [_check_type("letpair", "Bool * Bool"),
           _check_type("letpair_swapped", "Bool * Bool")]
    d1 = denote({}, first, 10)
    d2 = denote({}, second, 10)
    out.append(CheckResult("letpair", "both let orderings denote equally",
                           d1 == d2))
    rep = explore(first, 20)
    dist = {pretty(v): p for v, p in rep.value_mass.items()}
    expected = {
        "(tt, tt)": Fraction(1, 6), "(tt, ff)": Fraction(1, 3),
        "(ff, tt)": Fraction(1, 6), "(ff, ff)": Fraction(1, 3),
    }
    out.append(CheckResult("letpair", "joint distribution is the product",
                           dist == expected, f"got {dist}"))
    adeq = adequacy_check(first, fuel=20, steps=20, tol=Fraction(0))
    out.append(CheckResult("letpair", "adequacy exact",
                           adeq.exact and adeq.passed))
    out.extend(_mc_agrees("letpair", first, 20, trials, seed))
    return out


def programs() -> list[CorpusProgram]:
    return [
        CorpusProgram("fair", "Bool", _fair_checks),
        CorpusProgram("coins", "1 -> 1", _coins_checks),
        CorpusProgram("geometric", "1 -> Nat", _geometric_checks),
        CorpusProgram("omega", "1", _omega_checks),
        CorpusProgram("bools", "Bool * Bool * Bool", _bools_checks),
        CorpusProgram("natadd", "Nat", _natadd_checks),
        CorpusProgram("letpair", "Bool * Bool", _letpair_checks),
    ]


def run_corpus(trials: int = 10_000, seed: int = 0) -> list[CheckResult]:
    results: list[CheckResult] = []
    for prog in programs():
        results.extend(prog.run(trials, seed))
    return results
