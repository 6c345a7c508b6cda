import pytest

from utk import kernel as K
from utk import syntax as S
from utk.syntax import (
    Apply, Constant, Declaration, Fst, Id, J, Lambda, Pair, Pi, Refl, Sigma,
    Snd, Star, Unit, Var, universe,
)


def scope():
    return K.GlobalScope()


ID_FN = Lambda(Var(0))


def test_validate_examples():
    assert S.validate(Var(0), 1) is True
    assert S.validate(Var(0), 0) is False
    assert S.validate(Lambda(Var(0)), 0) is True


def test_infer_universe_hierarchy():
    assert K.infer(scope(), [], universe(0)) == universe(1)
    assert K.infer(scope(), [], universe(3)) == universe(4)
    with pytest.raises(K.UniverseOverflowError):
        K.infer(scope(), [], universe(S.MAX_LEVEL))


def test_infer_refl_formation():
    ctx = [("A", universe(0)), ("a", Var(0))]
    ty = K.infer(scope(), ctx, Refl(Var(0)))
    assert ty == Id(Var(1), Var(0), Var(0))


def test_infer_lambda_fails():
    with pytest.raises(K.NoInferableTypeError):
        K.infer(scope(), [], ID_FN)
    with pytest.raises(K.NoInferableTypeError):
        K.infer(scope(), [], Pair(Star(), Star()))


def test_check_identity():
    ctx = [("A", universe(0))]
    K.check(scope(), ctx, ID_FN, Pi(Var(0), Var(1)))


def test_check_universe_strictness():
    with pytest.raises(K.TypeMismatchError):
        K.check(scope(), [], universe(0), universe(0))
    # cumulativity: U0 : U2
    K.check(scope(), [], universe(0), universe(2))


def test_check_pair_against_sigma():
    ctx = [("A", universe(0)), ("a", Var(0))]
    K.check(scope(), ctx, Pair(Var(0), Star()), Sigma(Var(1), Unit()))


def test_j_computation_rule():
    # J(motive, base, a, a, refl a) normalizes to base[a]
    ctx = [("A", universe(0)), ("a", Var(0))]
    motive = Var(4)  # the ambient A, under three binders
    base = Var(1)  # the bound endpoint, under one binder: x -> x ... base : A
    term = J(motive, base, Var(0), Var(0), Refl(Var(0)))
    assert K.normalize(scope(), ctx, term) == Var(0)


def test_projection_rules():
    ctx = [("A", universe(0)), ("a", Var(0))]
    pair = Pair(Var(0), Star())
    annotated = S.Annot(pair, Sigma(Var(1), Unit()))
    assert K.normalize(scope(), ctx, Fst(annotated)) == Var(0)
    assert K.normalize(scope(), ctx, Snd(annotated)) == Star()


def test_eta_pi():
    # \x -> f x is convertible with f at a Pi type
    ctx = [("A", universe(0)), ("f", Pi(Var(0), Var(1)))]
    eta = Lambda(Apply(Var(1), Var(0)))
    assert K.convertible(scope(), ctx, eta, Var(0), Pi(Var(1), Var(2)))


def test_eta_unit():
    ctx = [("p", Unit())]
    assert K.convertible(scope(), ctx, Var(0), Star(), Unit())


def test_eta_sigma():
    ctx = [("A", universe(0)), ("p", Sigma(Var(0), Var(1)))]
    expanded = Pair(Fst(Var(0)), Snd(Var(0)))
    assert K.convertible(scope(), ctx, expanded, Var(0), Sigma(Var(1), Var(2)))


def test_distinct_universes_not_convertible():
    assert not K.convertible(scope(), [], universe(0), universe(1), universe(2))


def test_check_program_and_postulates():
    decls = [
        Declaration("X", universe(0), None),
        Declaration("idX", Pi(Constant("X"), Constant("X")), ID_FN),
        Declaration("x0", Constant("X"), None),
    ]
    sc = K.check_program(decls)
    assert "idX" in sc
    # defined constants unfold
    assert K.normalize(sc, [], Apply(Constant("idX"), Constant("x0"))) == Constant("x0")


def test_check_program_empty():
    sc = K.check_program([])
    assert sc.order == []


def test_check_program_failure_names_declaration():
    decls = [Declaration("bad", universe(0), universe(0))]
    with pytest.raises(K.DeclarationError) as e:
        K.check_program(decls)
    assert e.value.decl_name == "bad"


def test_normalize_idempotent_on_nested_redex():
    ctx = [("A", universe(0)), ("a", Var(0))]
    tm = Apply(S.Annot(Lambda(Var(0)), Pi(Var(1), Var(2))), Var(0))
    n1 = K.normalize(scope(), ctx, tm)
    assert n1 == Var(0)
    assert K.normalize(scope(), ctx, n1) == n1


def test_opaque_definition_blocks_reduction():
    decls = [
        Declaration("X", universe(0), None),
        Declaration("x0", Constant("X"), None),
        Declaration("f", Pi(Constant("X"), Constant("X")), ID_FN, opaque=True),
    ]
    sc = K.check_program(decls)
    nf = K.normalize(sc, [], Apply(Constant("f"), Constant("x0")))
    assert nf == Apply(Constant("f"), Constant("x0"))
