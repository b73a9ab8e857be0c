"""Exact and sampled reduction distributions.

`explore` runs breadth-first weighted expansion of the reduction tree,
merging alpha-identical terms at each depth (the future of equal terms is
equal, so merging preserves every path sum).  The result is the exact map
V -> P(reaching V within n steps), plus the mass still live on the frontier;
the two always add to exactly 1.  `halt_lower_bound` is the value-mass
total, a certified lower bound of the term's termination probability.

`sample_run`/`estimate` are the Monte-Carlo counterpart used as a
statistical cross-check of the exact numbers.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .operational import is_value, step
from .syntax import Term, alpha_normalize, term_is_closed

DEFAULT_MAX_FRONTIER = 100_000


class FrontierLimitError(Exception):
    """The exploration frontier outgrew its cap; no bound is reported."""


def _max_frontier(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("PFPC_MAX_FRONTIER")
    return int(env) if env else DEFAULT_MAX_FRONTIER


@dataclass
class DistReport:
    """Exhaustive exploration result at a given depth."""

    depth: int
    value_mass: dict[Term, Fraction]  # alpha-normalized value -> probability
    live_mass: Fraction
    frontier_size: int
    per_depth_halt: list[Fraction]  # halt lower bound after 0..depth steps

    def halt_mass(self) -> Fraction:
        return sum(self.value_mass.values(), Fraction(0))


def explore(m: Term, steps: int, *, max_frontier: Optional[int] = None) -> DistReport:
    """Exact value distribution of m within the given number of steps."""
    if not term_is_closed(m):
        raise ValueError("explore needs a closed term")
    cap = _max_frontier(max_frontier)
    value_mass: dict[Term, Fraction] = {}
    frontier: dict[Term, Fraction] = {}
    key = alpha_normalize(m)
    if is_value(key):
        value_mass[key] = Fraction(1)
    else:
        frontier[key] = Fraction(1)
    per_depth = [sum(value_mass.values(), Fraction(0))]
    for _ in range(steps):
        if not frontier:
            per_depth.append(per_depth[-1])
            continue
        new_frontier: dict[Term, Fraction] = {}
        for t, mass in frontier.items():
            for p, succ in step(t):
                succ = alpha_normalize(succ)
                share = mass * p
                if is_value(succ):
                    value_mass[succ] = value_mass.get(succ, Fraction(0)) + share
                else:
                    new_frontier[succ] = new_frontier.get(succ, Fraction(0)) + share
        if len(new_frontier) > cap:
            raise FrontierLimitError(
                f"frontier size {len(new_frontier)} exceeds cap {cap}")
        frontier = new_frontier
        per_depth.append(sum(value_mass.values(), Fraction(0)))
    live = sum(frontier.values(), Fraction(0))
    return DistReport(
        depth=steps,
        value_mass=value_mass,
        live_mass=live,
        frontier_size=len(frontier),
        per_depth_halt=per_depth,
    )


def halt_lower_bound(m: Term, steps: int, *,
                     max_frontier: Optional[int] = None) -> Fraction:
    return explore(m, steps, max_frontier=max_frontier).halt_mass()


def explore_unmerged(m: Term, steps: int, *, max_paths: int = 200_000) -> dict[Term, Fraction]:
    """Value distribution by raw path enumeration, without state merging.

    Exponential in depth; a brute-force oracle for explore on small inputs.
    """
    if not term_is_closed(m):
        raise ValueError("explore_unmerged needs a closed term")
    value_mass: dict[Term, Fraction] = {}
    paths = [(Fraction(1), m)]
    for _ in range(steps):
        next_paths: list[tuple[Fraction, Term]] = []
        for mass, t in paths:
            if is_value(t):
                continue
            for p, succ in step(t):
                next_paths.append((mass * p, succ))
        for mass, t in next_paths:
            if is_value(t):
                key = alpha_normalize(t)
                value_mass[key] = value_mass.get(key, Fraction(0)) + mass
        if len(next_paths) > max_paths:
            raise FrontierLimitError("path tree too large for brute enumeration")
        paths = [(mass, t) for mass, t in next_paths if not is_value(t)]
    if is_value(m):
        value_mass[alpha_normalize(m)] = Fraction(1)
    return value_mass


# --------------------------------------------------------------------------
# Sampling
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RunValue:
    value: Term
    steps: int


@dataclass(frozen=True)
class RunTimeout:
    steps: int


RunOutcome = Union[RunValue, RunTimeout]


def sample_run(m: Term, max_steps: int,
               rng: random.Random | int) -> RunOutcome:
    """Simulate one reduction path, branching with the stated probabilities.

    rng may be a Random instance or a bare integer seed.
    """
    if isinstance(rng, int):
        rng = random.Random(f"pfpc:{rng}")
    t = m
    for i in range(max_steps + 1):
        if is_value(t):
            return RunValue(alpha_normalize(t), i)
        if i == max_steps:
            break
        succs = step(t)
        if len(succs) == 1:
            t = succs[0][1]
        else:
            # Fraction(random()) keeps the comparison against the exact
            # rational weight bias-free up to the 53-bit draw itself
            draw = Fraction(rng.random())
            acc = Fraction(0)
            t = succs[-1][1]
            for p, succ in succs:
                acc += p
                if draw < acc:
                    t = succ
                    break
    return RunTimeout(max_steps)


@dataclass
class EmpiricalReport:
    trials: int
    max_steps: int
    seed: int
    counts: dict[Term, int]
    timeouts: int

    def frequency(self, v: Term) -> Fraction:
        return Fraction(self.counts.get(v, 0), self.trials)

    def halt_frequency(self) -> Fraction:
        return Fraction(self.trials - self.timeouts, self.trials)


def estimate(m: Term, trials: int, max_steps: int, rng_seed: int) -> EmpiricalReport:
    """Frequency table over outcomes from independent seeded runs."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    counts: dict[Term, int] = {}
    timeouts = 0
    for i in range(trials):
        rng = random.Random(f"pfpc:{rng_seed}:{i}")
        out = sample_run(m, max_steps, rng)
        if isinstance(out, RunValue):
            counts[out.value] = counts.get(out.value, 0) + 1
        else:
            timeouts += 1
    return EmpiricalReport(trials=trials, max_steps=max_steps, seed=rng_seed,
                           counts=counts, timeouts=timeouts)
