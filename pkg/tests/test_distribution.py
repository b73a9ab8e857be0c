import random

from fractions import Fraction

import pytest

from pfpc import prelude
from pfpc.distribution import (
    FrontierLimitError, RunTimeout, RunValue, estimate, explore,
    explore_unmerged, halt_lower_bound, sample_run,
)
from pfpc.generate import random_closed_term
from pfpc.surface import parse_term
from pfpc.syntax import App, alpha_eq, alpha_normalize

COINS_RUN = App(prelude.coins_term(), prelude.UNIT)

# measured staircase of the fix encoding: the first coin round completes
# after 6 steps, every later round 7 steps further (see corpus module)
COINS_FIRST = 6
COINS_STRIDE = 7


def coins_rounds(depth: int) -> int:
    if depth < COINS_FIRST:
        return 0
    return (depth - COINS_FIRST) // COINS_STRIDE + 1


def test_explore_value_is_immediate():
    rep = explore(prelude.UNIT, 5)
    assert rep.value_mass == {alpha_normalize(prelude.UNIT): Fraction(1)}
    assert rep.live_mass == 0


def test_explore_or():
    rep = explore(parse_term("tt or[1/3] ff"), 1)
    got = {k: v for k, v in rep.value_mass.items()}
    assert got == {
        alpha_normalize(prelude.TT): Fraction(1, 3),
        alpha_normalize(prelude.FF): Fraction(2, 3),
    }
    assert rep.live_mass == 0


def test_explore_coins_staircase():
    rep = explore(COINS_RUN, 80)
    for depth, halt in enumerate(rep.per_depth_halt):
        k = coins_rounds(depth)
        assert halt == 1 - Fraction(1, 2 ** k), f"depth {depth}"


def test_conservation_and_monotonicity():
    rng = random.Random(3)
    for _ in range(80):
        t = random_closed_term(rng, size=10)
        rep = explore(t, 8)
        assert rep.halt_mass() + rep.live_mass == 1
        for a, b in zip(rep.per_depth_halt, rep.per_depth_halt[1:]):
            assert a <= b


def test_value_mass_grows_pointwise():
    t = parse_term("(tt or[1/2] ff) or[1/3] (tt or[1/4] ff)")
    prev = {}
    for depth in range(0, 4):
        rep = explore(t, depth)
        for v, mass in prev.items():
            assert rep.value_mass.get(v, Fraction(0)) >= mass
        prev = rep.value_mass


def test_halt_lower_bound_trivial():
    assert halt_lower_bound(prelude.UNIT, 0) == 1


def test_omega_never_halts():
    omega = prelude.omega_term()
    for depth in (0, 5, 20, 60):
        assert halt_lower_bound(omega, depth) == 0


def test_frontier_cap_is_loud():
    # a balanced or-tree over distinct numerals keeps doubling the frontier
    from pfpc.syntax import Or
    leaves = [prelude.nat_value(i) for i in range(64)]
    while len(leaves) > 1:
        leaves = [Or(Fraction(1, 2), a, b) for a, b in zip(leaves[::2], leaves[1::2])]
    wide = leaves[0]
    with pytest.raises(FrontierLimitError):
        explore(wide, 3, max_frontier=4)


def test_env_var_overrides_frontier_cap(monkeypatch):
    from pfpc.syntax import Or
    leaves = [prelude.nat_value(i) for i in range(32)]
    while len(leaves) > 1:
        leaves = [Or(Fraction(1, 2), a, b) for a, b in zip(leaves[::2], leaves[1::2])]
    wide = leaves[0]
    monkeypatch.setenv("PFPC_MAX_FRONTIER", "4")
    with pytest.raises(FrontierLimitError):
        explore(wide, 3)
    monkeypatch.setenv("PFPC_MAX_FRONTIER", "100000")
    explore(wide, 3)  # no error


def test_merging_matches_brute_force():
    rng = random.Random(17)
    checked = 0
    for _ in range(60):
        t = random_closed_term(rng, size=9)
        try:
            brute = explore_unmerged(t, 12)
        except FrontierLimitError:
            continue
        merged = explore(t, 12).value_mass
        assert merged == brute
        checked += 1
    assert checked >= 30


# ---------------------------------------------------------------- sampling

def test_sample_value_immediate():
    out = sample_run(prelude.UNIT, 10, random.Random(0))
    assert isinstance(out, RunValue)
    assert out.steps == 0
    assert alpha_eq(out.value, prelude.UNIT)


def test_sample_degenerate_or():
    for seed in range(5):
        out = sample_run(parse_term("tt or[1] ff"), 10, random.Random(seed))
        assert isinstance(out, RunValue)
        assert alpha_eq(out.value, prelude.TT)
        assert out.steps == 1


def test_sample_timeout():
    out = sample_run(prelude.omega_term(), 30, random.Random(1))
    assert isinstance(out, RunTimeout)


def test_estimate_of_value():
    rep = estimate(prelude.TT, 50, 5, rng_seed=1)
    assert rep.counts == {alpha_normalize(prelude.TT): 50}


def test_estimate_within_three_sigma():
    trials = 20_000
    rep = estimate(parse_term("tt or[1/3] ff"), trials, 5, rng_seed=42)
    p = Fraction(1, 3)
    sigma = float(p * (1 - p) / trials) ** 0.5
    freq = rep.frequency(alpha_normalize(prelude.TT))
    assert abs(float(freq) - float(p)) <= 3 * sigma


def test_estimate_deterministic_per_seed():
    a = estimate(parse_term("tt or[1/2] ff"), 200, 5, rng_seed=9)
    b = estimate(parse_term("tt or[1/2] ff"), 200, 5, rng_seed=9)
    assert a.counts == b.counts
