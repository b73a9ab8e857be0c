from pfpc import prelude
from pfpc.distribution import explore
from pfpc.surface import pretty_type
from pfpc.syntax import App, Arrow, alpha_eq, types_equal
from pfpc.typecheck import check_program, wf_type


def test_builders_typecheck_at_documented_types():
    assert types_equal(check_program(prelude.UNIT), prelude.UNIT_T)
    assert types_equal(check_program(prelude.TT), prelude.BOOL_T)
    assert types_equal(check_program(prelude.FF), prelude.BOOL_T)
    assert types_equal(check_program(prelude.ZERO), prelude.NAT_T)
    assert types_equal(check_program(prelude.SUCC),
                       Arrow(prelude.NAT_T, prelude.NAT_T))
    for n in (0, 1, 5):
        assert types_equal(check_program(prelude.nat_value(n)), prelude.NAT_T)
    assert types_equal(check_program(prelude.coins_term()),
                       Arrow(prelude.UNIT_T, prelude.UNIT_T))
    assert types_equal(check_program(prelude.geometric_term()),
                       Arrow(prelude.UNIT_T, prelude.NAT_T))
    assert types_equal(check_program(prelude.omega_term()), prelude.UNIT_T)


def test_fix_typechecks_at_any_function_type():
    for dom, cod in [(prelude.UNIT_T, prelude.UNIT_T),
                     (prelude.NAT_T, prelude.BOOL_T),
                     (prelude.BOOL_T, Arrow(prelude.NAT_T, prelude.NAT_T))]:
        fun = Arrow(dom, cod)
        expected = Arrow(Arrow(fun, fun), fun)
        assert types_equal(check_program(prelude.fix_term(dom, cod)), expected)


def test_list_and_stream_types_wellformed():
    wf_type((), prelude.list_type(prelude.BOOL_T))
    wf_type((), prelude.stream_type(prelude.NAT_T))
    assert pretty_type(prelude.list_type(prelude.BOOL_T)) == \
        "mu X. 1 + Bool * X"


def test_fix_unfolds_through_its_body():
    # fix F applied to a value reaches an application of F within a fixed
    # number of deterministic steps; with the constant functional the whole
    # program reduces to the constant's value
    from pfpc.syntax import Lam, Var
    const = Lam("f", Arrow(prelude.UNIT_T, prelude.UNIT_T),
                Lam("x", prelude.UNIT_T, prelude.UNIT))
    prog = App(prelude.apply_fix(prelude.UNIT_T, prelude.UNIT_T, const),
               prelude.UNIT)
    rep = explore(prog, 10)
    assert rep.live_mass == 0
    [(value, mass)] = list(rep.value_mass.items())
    assert mass == 1 and alpha_eq(value, prelude.UNIT)


def test_nat_of_value_rejects_non_numerals():
    assert prelude.nat_of_value(prelude.TT) is None
    assert prelude.nat_of_value(prelude.UNIT) is None
