import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_co, naive_contra, nonsingular, symsigs, tensor
from holant.cyclo import I, ONE, Cyclo, zeta
from holant.randgen import rand_orthogonal
from holant.sigalg import sig, vd
from holant.xform import (
    Mat2,
    SingularMatrixError,
    apply_co,
    apply_contra,
    in_stab_A,
    in_stab_P,
    is_orthogonal,
    named,
    stab_A_elements,
)

orthogonals = st.integers(0, 2**32).map(lambda s: rand_orthogonal(random.Random(s)))


def test_named_relations():
    assert named("Z") @ named("Zinv") == named("I")
    assert named("D") @ named("H2") == named("Z")
    assert named("alpha_diag", 8) == named("I")
    assert named("omega_diag", 6, 3) == Mat2.diag(1, -1)
    with pytest.raises(KeyError):
        named("nope")


def test_z_transform_of_eulerian_signature():
    f = sig(3, 0, 1, 0, 3)
    assert apply_contra(named("Zinv"), f) == sig(0, 0, 1, 0, 0).scale(2)
    assert apply_contra(named("Z"), sig(0, 0, 1, 0, 0)) == f.scale(Cyclo(1) / 2)
    assert apply_contra(named("I"), f) == f


def test_row_side_equality():
    eq2 = sig(1, 0, 1)
    assert apply_co(eq2, named("Z")) == sig(0, 1, 0)
    assert apply_co(eq2, named("H2")) == eq2
    f = sig(2, I, 5)
    assert apply_co(f, named("I")) == f


def test_is_orthogonal():
    assert is_orthogonal(named("H2")) == 1
    assert is_orthogonal(named("Z")) is None
    assert is_orthogonal(named("I").scale(3)) == 9


def test_stabilizers():
    assert len(stab_A_elements()) == 24
    D = named("D")
    assert in_stab_A(D) and in_stab_P(D)
    assert in_stab_A(named("Z"))
    assert in_stab_A(named("X")) and in_stab_A(named("H2"))
    assert not in_stab_A(Mat2.diag(1, 2)) and in_stab_P(Mat2.diag(1, 2))
    assert not in_stab_A(named("alpha_diag", 1))
    with pytest.raises(SingularMatrixError):
        in_stab_A(Mat2(1, 1, 1, 1))


def test_stab_A_is_closed():
    els = set(stab_A_elements())
    for a in els:
        for b in els:
            assert (a @ b).normalized() in els


@settings(max_examples=50, deadline=None)
@given(nonsingular(), symsigs(max_arity=4))
def test_contra_matches_full_tensor(T, f):
    assert tensor(apply_contra(T, f)) == naive_contra(T, f)


@settings(max_examples=50, deadline=None)
@given(nonsingular(), symsigs(max_arity=4))
def test_co_matches_full_tensor(T, f):
    assert tensor(apply_co(f, T)) == naive_co(f, T)


@settings(max_examples=50, deadline=None)
@given(nonsingular(), nonsingular(), symsigs(max_arity=5))
def test_functoriality(S, T, f):
    assert apply_contra(S @ T, f) == apply_contra(S, apply_contra(T, f))


@settings(max_examples=60, deadline=None)
@given(orthogonals, symsigs(max_arity=6))
def test_orthogonal_permutes_vanishing_degrees(T, f):
    g = apply_contra(T, f)
    assert sorted([vd(f, 1), vd(f, -1)]) == sorted([vd(g, 1), vd(g, -1)])


@settings(max_examples=60, deadline=None)
@given(orthogonals)
def test_orthogonal_fixes_row_equality(T):
    assert is_orthogonal(T) == 1
    assert apply_co(sig(1, 0, 1), T) == sig(1, 0, 1)
    alpha = zeta(8)
    assert apply_co(sig(1, 0, 1), T @ Mat2.diag(1, alpha)) == sig(1, 0, I)


@settings(max_examples=80, deadline=None)
@given(nonsingular())
def test_row_equality_fixed_only_by_orthogonal(T):
    fixed = apply_co(sig(1, 0, 1), T) == sig(1, 0, 1)
    assert fixed == (is_orthogonal(T) == ONE)
