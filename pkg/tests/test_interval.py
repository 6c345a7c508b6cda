import itertools

import pytest

from utk.model import interval as IV
from utk.model.interval import (
    DM, Face, ctx, dm_all, dm_basic, dm_const, dm_eq, dm_is_const, dm_join,
    dm_meet, dm_neg, dm_subst, dm_sym, face_and, face_bot, face_eq_sym,
    face_forall, face_of_eq, face_or, face_subst_clause, face_top,
)

I = ctx("i")
IJ = ctx("i", "j")


# ---------------------------------------------------------------------------
# Independent oracle for the free De Morgan algebra on one generator: the
# free bounded distributive lattice on the literals {i, ~i}, in antichain
# normal form.  Elements are antichains of clauses; a clause is a frozenset
# of literals ("i" or "~i").  This shares no code with the DM4 tables.

def _norm(clauses):
    clauses = set(clauses)
    out = set()
    for c in clauses:
        if any(d < c for d in clauses):
            continue  # absorbed
        out.add(c)
    return frozenset(out)


DNF_BOT = frozenset()
DNF_TOP = frozenset({frozenset()})


def dnf_join(a, b):
    return _norm(a | b)


def dnf_meet(a, b):
    return _norm(frozenset(c | d for c in a for d in b))


def dnf_neg(a):
    # De Morgan duality; negation swaps the literals
    flip = {"i": "~i", "~i": "i"}
    out = DNF_TOP
    for clause in a:
        out = dnf_meet(out, _norm(frozenset(frozenset({flip[l]}) for l in clause)))
    if not a:
        return DNF_TOP
    return out


def dnf_closure():
    gen = frozenset({frozenset({"i"})})
    elems = {DNF_BOT, DNF_TOP, gen}
    changed = True
    while changed:
        changed = False
        current = list(elems)
        for x in current:
            if dnf_neg(x) not in elems:
                elems.add(dnf_neg(x))
                changed = True
        for x, y in itertools.product(current, current):
            for z in (dnf_meet(x, y), dnf_join(x, y)):
                if z not in elems:
                    elems.add(z)
                    changed = True
    return elems


def test_dm4_oracle_cross_check():
    # the oracle is computed first and pinned: the free De Morgan algebra on
    # one generator has exactly six elements
    oracle = dnf_closure()
    assert len(oracle) == 6
    assert len(dm_all(I)) == 6


def test_one_generator_elements_are_the_expected_ones():
    i = dm_sym(I, "i")
    expected = [
        dm_const(I, 0), dm_const(I, 1), i, dm_neg(i),
        dm_meet(i, dm_neg(i)), dm_join(i, dm_neg(i)),
    ]
    tables = {e.table for e in expected}
    assert len(tables) == 6
    assert tables == {e.table for e in dm_all(I)}


# ---------------------------------------------------------------------------
# dm_eq examples

def test_lattice_unit_law():
    i = dm_sym(I, "i")
    assert dm_eq(dm_meet(i, dm_const(I, 1)), i)


def test_de_morgan_law():
    i, j = dm_sym(IJ, "i"), dm_sym(IJ, "j")
    assert dm_eq(dm_neg(dm_meet(i, j)), dm_join(dm_neg(i), dm_neg(j)))


def test_excluded_middle_fails():
    # oracle: the valuation i -> a gives a != 1
    i = dm_sym(I, "i")
    lhs = dm_join(i, dm_neg(i))
    one = dm_const(I, 1)
    assert not dm_eq(lhs, one)
    # the witnessing valuation, read off the table directly
    idx = list(itertools.product((0, 1, 2, 3), repeat=1)).index((1,))
    assert lhs.table[idx] == 1 and one.table[idx] == 3


def test_context_mismatch_raises():
    with pytest.raises(IV.ContextMismatchError):
        dm_eq(dm_sym(I, "i"), dm_sym(IJ, "i"))


def test_substitution():
    i = dm_sym(IJ, "i")
    j = dm_sym(IJ, "j")
    e = dm_meet(i, dm_neg(j))
    sub = dm_subst(e, {"i": dm_const(I, 1), "j": dm_sym(I, "i")}, I)
    assert dm_eq(sub, dm_neg(dm_sym(I, "i")))


def test_connection_squares():
    # i /\ j restricted along j := 1 is i; along j := 0 is 0
    i, j = dm_sym(IJ, "i"), dm_sym(IJ, "j")
    conn = dm_meet(i, j)
    at1 = dm_subst(conn, {"i": dm_sym(I, "i"), "j": dm_const(I, 1)}, I)
    at0 = dm_subst(conn, {"i": dm_sym(I, "i"), "j": dm_const(I, 0)}, I)
    assert dm_eq(at1, dm_sym(I, "i"))
    assert dm_is_const(at0, 0)


def test_dm_basic_subset_of_all():
    alltab = {e.table for e in dm_all(IJ)}
    assert {e.table for e in dm_basic(IJ)} <= alltab
    assert len(dm_all(IJ)) == 168  # free De Morgan algebra on two generators


# ---------------------------------------------------------------------------
# Face lattice

def test_face_clauses_and_entailment():
    f = face_or(face_eq_sym(IJ, "i", 0), face_eq_sym(IJ, "j", 1))
    cl = f.clauses()
    assert frozenset({("i", 0)}) in cl and frozenset({("j", 1)}) in cl
    assert face_eq_sym(IJ, "i", 0).entails(f)
    assert not f.entails(face_eq_sym(IJ, "i", 0))


def test_face_meet_of_opposites_is_bot():
    f = face_and(face_eq_sym(I, "i", 0), face_eq_sym(I, "i", 1))
    assert f.is_bot


def test_face_endpoints_not_top():
    f = face_or(face_eq_sym(I, "i", 0), face_eq_sym(I, "i", 1))
    assert not f.is_top and not f.is_bot


def test_forall_examples():
    # forall i. (i=0) is absurd; forall i. ((i=0) \/ (i=1)) is absurd;
    # forall i. T is trivial
    f0 = face_eq_sym(I, "i", 0)
    assert face_forall(f0, "i").is_bot
    both = face_or(f0, face_eq_sym(I, "i", 1))
    assert face_forall(both, "i").is_bot
    assert face_forall(face_top(I), "i").is_top
    # forall i. ((j=0) \/ (i=0)) = (j=0)
    mixed = face_or(face_eq_sym(IJ, "j", 0), face_eq_sym(IJ, "i", 0))
    assert face_forall(mixed, "i").sat == face_eq_sym(I.union({"j"}) - {"i"}, "j", 0).sat


def test_face_of_eq_translation():
    i, j = dm_sym(IJ, "i"), dm_sym(IJ, "j")
    # (i /\ j = 1) is (i=1) /\ (j=1)
    f = face_of_eq(dm_meet(i, j), 1)
    assert f.sat == face_and(face_eq_sym(IJ, "i", 1), face_eq_sym(IJ, "j", 1)).sat
    # (~i = 0) is (i=1)
    assert face_of_eq(dm_neg(i), 0).sat == face_eq_sym(IJ, "i", 1).sat
    # (0 = 0) is trivially true
    assert face_of_eq(dm_const(IJ, 0), 0).is_top


def test_face_of_eq_respects_dm_equality():
    # the translation factors through De Morgan equality on sampled pairs
    i, j = dm_sym(IJ, "i"), dm_sym(IJ, "j")
    pairs = [
        (i, dm_meet(i, dm_join(i, j))),  # absorption
        (dm_meet(i, dm_const(IJ, 1)), i),
        (dm_neg(dm_neg(i)), i),
    ]
    for x, y in pairs:
        assert dm_eq(x, y)
        for e in (0, 1):
            assert face_of_eq(x, e).sat == face_of_eq(y, e).sat


def test_face_subst_clause():
    f = face_or(face_eq_sym(IJ, "i", 0), face_eq_sym(IJ, "j", 1))
    g = face_subst_clause(f, frozenset({("i", 0)}))
    assert g.is_top
    h = face_subst_clause(f, frozenset({("i", 1)}))
    assert h.sat == face_eq_sym(ctx("j"), "j", 1).sat
