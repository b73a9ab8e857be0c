"""Command-line front end: check, trace, dist, adequacy, laws, corpus.

Exit codes: 0 on success/pass, 1 on a semantic failure (type error, failed
law or expectation), 2 on usage or I/O errors.  With --json PATH the
machine-readable report is written to PATH; reports are byte-identical for
identical (file, flags, seed) inputs, so wall-clock timings go to stdout
only, never into the JSON.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from fractions import Fraction

from . import corpus as corpus_mod
from .denotational import adequacy_check
from .distribution import FrontierLimitError, explore
from .kegelspitze import (
    UnitInterval, ValuationSpace, axiom_suite, barycenter_matches_multiply,
    em_law_suite, kleisli_convexity_suite,
)
from .operational import is_value, step
from .surface import ParseError, parse_term, pretty, pretty_type
from .syntax import Term
from .typecheck import TypeCheckError, check_program, elaborate
from .valuations import law_suite, poset_from_spec


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _load(path: str) -> tuple[Term, str]:
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    return parse_term(raw.decode("utf-8")), digest


def _envelope(command: str, path: str | None, digest: str | None,
              flags: dict, seed: int | None) -> dict:
    inputs: dict = {"flags": flags}
    if path is not None:
        inputs["file"] = path
        inputs["sha256"] = digest
    if seed is not None:
        inputs["seed"] = seed
    return {"command": command, "inputs": inputs}


def _write_json(path: str | None, payload: dict) -> None:
    if path is None:
        return
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def _cmd_check(args) -> int:
    term, _ = _load(args.file)
    try:
        ty = check_program(term)
    except TypeCheckError as err:
        print(f"type error: {err}")
        return 1
    print(pretty_type(ty))
    return 0


def _cmd_trace(args) -> int:
    term, _ = _load(args.file)
    check_program(term)
    t = elaborate(term)
    rng = random.Random(f"pfpc:{args.seed}:trace")
    print(f"seed {args.seed}")
    print(f"     {pretty(t)}")
    for i in range(args.steps):
        if is_value(t):
            print(f"value after {i} steps")
            return 0
        succs = step(t)
        if len(succs) == 1:
            p, t = succs[0]
        else:
            draw = Fraction(rng.random())
            acc = Fraction(0)
            p, t = succs[-1]
            for q, cand in succs:
                acc += q
                if draw < acc:
                    p, t = q, cand
                    break
        print(f"[{p}] {pretty(t)}")
    if is_value(t):
        print(f"value after {args.steps} steps")
    else:
        print(f"still live after {args.steps} steps")
    return 0


def _cmd_dist(args) -> int:
    term, digest = _load(args.file)
    check_program(term)
    core = elaborate(term)
    started = time.monotonic()
    rep = explore(core, args.steps, max_frontier=args.max_frontier)
    duration = time.monotonic() - started
    rows = sorted(((pretty(v), p) for v, p in rep.value_mass.items()),
                  key=lambda kv: kv[0])
    for value, prob in rows:
        print(f"{prob!s:>12}  {value}")
    print(f"{rep.live_mass!s:>12}  (live after {rep.depth} steps, "
          f"frontier {rep.frontier_size})")
    print(f"halt lower bound: {rep.halt_mass()}  [{duration:.2f}s]")
    payload = _envelope("dist", args.file, digest,
                        {"steps": args.steps}, None)
    payload.update({
        "depth": rep.depth,
        "values": [{"value": v, "prob": str(p)} for v, p in rows],
        "live": str(rep.live_mass),
        "per_depth_halt": [str(h) for h in rep.per_depth_halt],
    })
    _write_json(args.json, payload)
    return 0


def _cmd_adequacy(args) -> int:
    term, digest = _load(args.file)
    check_program(term)
    core = elaborate(term)
    started = time.monotonic()
    rep = adequacy_check(core, fuel=args.fuel, steps=args.steps, tol=args.tol,
                         max_frontier=args.max_frontier)
    duration = time.monotonic() - started
    print(f"denotational mass : {sum(rep.denotational.values(), Fraction(0))}")
    print(f"operational mass  : {sum(rep.operational.values(), Fraction(0))}"
          f"  (live {rep.live_mass})")
    print(f"max pointwise gap : {rep.max_pointwise_gap}")
    print(f"monotone          : denotational={rep.denotational_monotone} "
          f"operational={rep.operational_monotone}")
    print(f"{'PASS' if rep.passed else 'FAIL'} at tol {args.tol}  [{duration:.2f}s]")
    payload = _envelope("adequacy", args.file, digest,
                        {"fuel": args.fuel, "steps": args.steps,
                         "tol": str(args.tol)}, None)
    payload.update(rep.to_json())
    _write_json(args.json, payload)
    return 0 if rep.passed else 1


def _cmd_laws(args) -> int:
    poset = poset_from_spec(args.poset)
    reports = []
    if args.suite in ("monad", "all"):
        reports.append(law_suite(poset, seed=args.seed, cases=args.cases))
    if args.suite in ("kegelspitze", "all"):
        reports.append(axiom_suite(UnitInterval(), args.seed, args.cases))
        reports.append(em_law_suite(UnitInterval(), args.seed, args.cases))
        space = ValuationSpace(poset)
        reports.append(axiom_suite(space, args.seed, max(1, args.cases // 2)))
        reports.append(em_law_suite(space, args.seed, max(1, args.cases // 2)))
        reports.append(barycenter_matches_multiply(poset, args.seed,
                                                   max(1, args.cases // 2)))
    if args.suite in ("kleisli", "all"):
        reports.append(kleisli_convexity_suite(args.seed,
                                               max(1, args.cases // 2)))
    all_passed = True
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        checks = ", ".join(f"{k}x{v}" for k, v in sorted(rep.checks.items()))
        print(f"{status}  {rep.subject}: {checks}")
        for failure in rep.failures[:5]:
            print(f"      counterexample [{failure.law}]: {failure.detail}")
        all_passed &= rep.passed
    payload = _envelope("laws", None, None,
                        {"poset": args.poset, "suite": args.suite,
                         "cases": args.cases}, args.seed)
    payload["reports"] = [rep.to_json() for rep in reports]
    payload["passed"] = all_passed
    _write_json(args.json, payload)
    return 0 if all_passed else 1


def _cmd_corpus(args) -> int:
    if not args.run:
        for prog in corpus_mod.programs():
            print(f"{prog.name:12s} : {prog.type_str}")
        return 0
    started = time.monotonic()
    results = corpus_mod.run_corpus(trials=args.trials, seed=args.seed)
    duration = time.monotonic() - started
    failures = 0
    for res in results:
        print(res.line())
        failures += 0 if res.passed else 1
    print(f"{len(results) - failures}/{len(results)} checks passed "
          f"[{duration:.1f}s]")
    payload = _envelope("corpus", None, None, {"trials": args.trials}, args.seed)
    payload["results"] = [
        {"program": r.program, "check": r.check, "passed": r.passed,
         "detail": r.detail}
        for r in results
    ]
    payload["passed"] = failures == 0
    _write_json(args.json, payload)
    return 0 if failures == 0 else 1


# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfpc",
        description="interpreter and semantics laboratory for a probabilistic "
                    "lambda calculus with recursive types")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="type-check a program")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("trace", help="print one sampled reduction sequence")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_trace)

    p = sub.add_parser("dist", help="exact reduction distribution")
    p.add_argument("file")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--json")
    p.add_argument("--max-frontier", type=int, default=None)
    p.set_defaults(fn=_cmd_dist)

    p = sub.add_parser("adequacy",
                       help="compare denotational and operational semantics")
    p.add_argument("file")
    p.add_argument("--fuel", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--tol", type=_parse_fraction, default=Fraction(0))
    p.add_argument("--json")
    p.add_argument("--max-frontier", type=int, default=None)
    p.set_defaults(fn=_cmd_adequacy)

    p = sub.add_parser("laws", help="randomized exact law suites")
    p.add_argument("--poset", default="chain:2")
    p.add_argument("--suite", choices=("monad", "kegelspitze", "kleisli", "all"),
                   default="monad")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--json")
    p.set_defaults(fn=_cmd_laws)

    p = sub.add_parser("corpus", help="list or run the bundled programs")
    p.add_argument("--run", action="store_true")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json")
    p.set_defaults(fn=_cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except FileNotFoundError as err:
        print(f"cannot read {err.filename}", file=sys.stderr)
        return 2
    except ParseError as err:
        print(f"syntax error at {err}", file=sys.stderr)
        return 1
    except TypeCheckError as err:
        print(f"type error: {err}", file=sys.stderr)
        return 1
    except FrontierLimitError as err:
        print(f"resource limit: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
