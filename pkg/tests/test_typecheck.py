import random

import pytest
from hypothesis import given, settings, strategies as st

from pfpc import prelude
from pfpc.generate import random_closed_term, random_type
from pfpc.operational import is_value, step
from pfpc.surface import parse_term
from pfpc.syntax import (
    App, Arrow, Inj, Lam, Mu, Pair, Sum, TVar, Var, types_equal,
)
from pfpc.typecheck import (
    TypeCheckError, check_program, elaborate, infer, is_empty_type, wf_type,
)


# ---------------------------------------------------------------- wf_type

def test_wf_nat():
    wf_type((), prelude.NAT_T)  # no exception


def test_wf_unbound():
    with pytest.raises(TypeCheckError) as err:
        wf_type((), TVar("X"))
    assert err.value.kind == "unbound variable"


def test_wf_negative_occurrence_allowed():
    # mu with the variable in negative position is fine
    wf_type(("X",), Mu("Y", Arrow(TVar("Y"), TVar("X"))))


def test_wf_duplicate_context():
    with pytest.raises(TypeCheckError) as err:
        wf_type(("X", "X"), TVar("X"))
    assert err.value.kind == "ill-formed context"


# ---------------------------------------------------------------- infer

def test_infer_coins():
    assert types_equal(check_program(prelude.coins_term()),
                       Arrow(prelude.UNIT_T, prelude.UNIT_T))


def test_infer_zero():
    assert types_equal(check_program(prelude.ZERO), prelude.NAT_T)


def test_infer_fst_pair():
    t = parse_term("fst ((), tt)")
    assert types_equal(check_program(t), prelude.UNIT_T)


def test_infer_unit():
    assert types_equal(check_program(prelude.UNIT), prelude.UNIT_T)


def test_infer_unbound():
    with pytest.raises(TypeCheckError) as err:
        check_program(Var("x"))
    assert err.value.kind == "unbound variable"


def test_infer_or_branches():
    assert types_equal(check_program(parse_term("tt or[1/3] ff")), prelude.BOOL_T)


def test_infer_or_mismatched_branches():
    with pytest.raises(TypeCheckError):
        check_program(parse_term("tt or[1/3] ()"))


def test_bare_injection_not_inferable():
    with pytest.raises(TypeCheckError) as err:
        check_program(Inj(1, prelude.UNIT))
    assert err.value.kind == "annotation mismatch"


def test_bare_injection_checked_position():
    # fold annotation pushes the expected sum into the injection
    assert types_equal(check_program(parse_term("fold[Nat] inr 2")), prelude.NAT_T)


def test_apply_non_function():
    with pytest.raises(TypeCheckError) as err:
        check_program(App(prelude.TT, prelude.TT))
    assert err.value.kind == "mismatch"


def test_annotation_must_be_closed():
    bad = Lam("x", TVar("X"), Var("x"))
    with pytest.raises(TypeCheckError) as err:
        check_program(bad)
    assert err.value.kind == "non-closed type"


def test_geometric_type():
    assert types_equal(check_program(prelude.geometric_term()),
                       Arrow(prelude.UNIT_T, prelude.NAT_T))


def test_omega_type():
    assert types_equal(check_program(prelude.omega_term()), prelude.UNIT_T)


def test_succ_type():
    assert types_equal(check_program(prelude.SUCC),
                       Arrow(prelude.NAT_T, prelude.NAT_T))


# ---------------------------------------------------------------- emptiness

def test_empty_types():
    assert is_empty_type(prelude.ZERO_T)
    assert not is_empty_type(prelude.UNIT_T)
    assert not is_empty_type(prelude.BOOL_T)
    assert not is_empty_type(prelude.NAT_T)
    assert is_empty_type(Mu("X", Sum(TVar("X"), TVar("X"))))
    assert is_empty_type(Mu("X", TVar("X")))
    # arrows are never empty, even out of an empty domain
    assert not is_empty_type(Arrow(prelude.ZERO_T, prelude.ZERO_T))
    # a product with an empty factor is empty
    from pfpc.syntax import Prod
    assert is_empty_type(Prod(prelude.BOOL_T, prelude.ZERO_T))


# ---------------------------------------------------------------- elaborate

def test_let_elaboration():
    t = parse_term("let b = tt in (b, b)")
    core = elaborate(t)
    assert core == App(Lam("b", prelude.BOOL_T, Pair(Var("b"), Var("b"))),
                       prelude.TT)
    assert types_equal(check_program(core), check_program(t))


def test_let_nested_elaboration():
    t = parse_term("let x = 1 in let y = x in (x, y)")
    core = elaborate(t)
    assert types_equal(check_program(core),
                       check_program(t))


# ---------------------------------------------------------------- properties

@given(st.integers(0, 10**9))
@settings(max_examples=120, deadline=None)
def test_generated_terms_welltyped(seed):
    rng = random.Random(seed)
    ty = random_type(rng)
    from pfpc.generate import random_term
    t = random_term(rng, ty, size=12)
    assert types_equal(check_program(t), ty)


@given(st.integers(0, 10**9))
@settings(max_examples=120, deadline=None)
def test_preservation_and_progress(seed):
    rng = random.Random(seed)
    t = random_closed_term(rng, size=12)
    ty = check_program(t)
    # walk a short random trajectory; every successor keeps the type
    for _ in range(6):
        if is_value(t):
            break
        succs = step(t)  # progress: does not raise
        assert sum(p for p, _ in succs) == 1
        for _, succ in succs:
            assert types_equal(check_program(succ), ty)
        t = rng.choice(succs)[1]


def test_infer_is_deterministic():
    src = "(fn x:Bool => (x, 2 or[1/2] 3)) tt"
    a = check_program(parse_term(src))
    b = check_program(parse_term(src))
    assert a == b


def test_preservation_on_recursive_corpus():
    # the generator is recursion-free; walk the recursive programs too
    from pfpc import prelude
    from pfpc.syntax import App
    rng = random.Random(99)
    for prog in (App(prelude.coins_term(), prelude.UNIT),
                 App(prelude.geometric_term(), prelude.UNIT),
                 prelude.omega_term()):
        ty = check_program(prog)
        t = prog
        for _ in range(40):
            if is_value(t):
                break
            succs = step(t)
            for _, succ in succs:
                assert types_equal(check_program(succ), ty)
            t = rng.choice(succs)[1]
