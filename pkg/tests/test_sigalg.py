import itertools

import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import cyclos, symsigs, unaries
from holant.cyclo import I, ONE, ZERO, Cyclo, zeta
from holant.sigalg import (
    Ambiguous,
    DegenerateForm,
    DoubleRoot,
    IrrationalRoots,
    NoSecondOrder,
    SymSig,
    TwoPower,
    connect,
    decompose2,
    is_degenerate,
    rd,
    reconstruct,
    self_loop,
    sig,
    root_cyclo,
    sqrt_cyclo,
    sym,
    tensor_power,
    vanishing_type,
    vd,
)
from holant.xform import apply_contra, named

SIGNS = st.sampled_from((1, -1))


def naive_sym(n, t, v, vs):
    """Sum over all n! orderings of the unary list, read off by Hamming weight."""
    us = [v] * t + list(vs)
    entries = []
    for w in range(n + 1):
        x = (0,) * (n - w) + (1,) * w
        acc = ZERO
        for perm in itertools.permutations(us):
            term = ONE
            for bit, u in zip(x, perm):
                term = term * u[bit]
            acc = acc + term
        entries.append(acc)
    return SymSig(entries)


def test_tensor_power():
    assert tensor_power((1, I), 2) == sig(1, I, -1)
    assert tensor_power((1, 0), 3) == sig(1, 0, 0, 0)
    a, b = zeta(8), Cyclo(3)
    assert tensor_power((a, b), 1) == SymSig([a, b])


def test_is_degenerate():
    d = is_degenerate(sig(1, I, -1, -I, 1))
    assert d is not None and d.direction == (ONE, I) and d.scale == 1
    assert is_degenerate(sig(3, 0, 1, 0, 3)) is None
    assert is_degenerate(sig(0, 0, 0)) is None
    assert sig(0, 0, 0).is_zero()
    d = is_degenerate(sig(0, 0, 5))
    assert d.direction == (ZERO, ONE) and d.scale == 5


def test_sym_examples():
    a, b = Cyclo(2), zeta(8)
    assert sym(3, 2, (1, I), [(a, b)]) == SymSig([3 * a, 2 * I * a + b, -a + 2 * I * b, -3 * b]).scale(2)
    assert sym(2, 2, (1, I), []) == sig(1, I, -1).scale(2)
    assert sym(2, 1, (1, I), [(1, -I)]) == sig(2, 0, 2)


def test_sym_rejects_bad_counts():
    with pytest.raises(ValueError):
        sym(3, 1, (1, I), [(1, 0)])
    with pytest.raises(ValueError):
        sym(3, 0, (1, I), [(1, 0)] * 3)


def test_rd_vd_examples():
    assert rd(sig(1, I, -1), 1) == 0
    assert rd(sym(4, 3, (1, I), [(0, 1)]), 1) == 1
    assert rd(sig(1, 0, 1), 1) == 1
    assert vd(sig(1, I, -1), 1) == 2
    assert vd(sig(1, 0, 1), 1) == 1
    assert vd(sig(1, -I, -1), -1) == 2


def test_zero_signature_conventions():
    z = sig(0, 0, 0, 0)
    assert rd(z, 1) == -1 and vd(z, 1) == 4


def test_vanishing_type_examples():
    assert vanishing_type(tensor_power((1, I), 5)) == {1}
    assert vanishing_type(sym(5, 4, (1, I), [(1, 0)])) == {1}
    assert vanishing_type(sig(1, 0, 1)) == frozenset()


def test_self_loop_and_connect_examples():
    assert self_loop(sig(3, 0, 1, 0, 3)) == sig(4, 0, 4)
    assert self_loop(sig(1, I, -1, -I)) == sig(0, 0)
    a, b, c = Cyclo(2), I, Cyclo(7)
    assert self_loop(SymSig([a, b, c])) == SymSig([a + c])
    f = sig(3, 0, 1, 0, 3)
    assert connect(f, sig(1, 0)) == sig(3, 0, 1, 0)
    assert connect(f, sig(0, 1)) == sig(0, 1, 0, 3)
    assert connect(f, sig(1, 0, 1)) == sig(4, 0, 4)


def test_decompose2_examples():
    d = decompose2(sig(2, 0, 2, 0, 2))
    assert isinstance(d, TwoPower)
    assert reconstruct(d, 4) == sig(2, 0, 2, 0, 2)
    pair = {tuple(d.v1), tuple(d.v2)}
    # directions are projective; normalise the first entry
    norm = {(ONE, v[1] / v[0]) for v in pair}
    assert norm == {(ONE, ONE), (ONE, -ONE)}
    assert isinstance(decompose2(sig(3, 0, 1, 0, 3)), NoSecondOrder)
    f = SymSig([k * I ** (k - 1) if k else ZERO for k in range(5)])
    d = decompose2(f)
    assert isinstance(d, DoubleRoot)
    assert d.c == 1 and d.d == 0 and d.root == (ONE, I)
    assert isinstance(decompose2(sig(1, 0, 1)), Ambiguous)
    assert isinstance(decompose2(sig(2, 2, 2, 2)), DegenerateForm)


# --- properties ------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.data())
def test_sym_matches_permutation_sum(n, data):
    t = data.draw(st.integers(1, n))
    v = data.draw(unaries())
    vs = [data.draw(unaries()) for _ in range(n - t)]
    assert sym(n, t, v, vs) == naive_sym(n, t, v, vs)


@settings(max_examples=200, deadline=None)
@given(symsigs(max_arity=7), SIGNS)
def test_rd_plus_vd_is_arity(f, s):
    assume(not f.is_zero())
    assert rd(f, s) + vd(f, s) == f.arity


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 8), SIGNS, st.data())
def test_sym_forward_direction(n, s, data):
    t = data.draw(st.integers(0, n - 1))
    vs = [data.draw(unaries(conductors=(1, 4, 8))) for _ in range(t)]
    f = sym(n, n - t, (1, s * I), vs)
    assert f.is_zero() or rd(f, s) <= t


def poly_sig(data, n, d, s):
    """f_k = (s i)^k p(k) with deg p = d exactly."""
    coeffs = [data.draw(cyclos(conductors=(1, 4, 8))) for _ in range(d)]
    coeffs.append(data.draw(cyclos(conductors=(1, 4, 8)).filter(bool)))
    step = I if s > 0 else -I
    return SymSig([step**k * sum((c * k**j for j, c in enumerate(coeffs)), ZERO) for k in range(n + 1)])


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 7), SIGNS, st.data())
def test_self_loop_drops_degree(n, s, data):
    f = poly_sig(data, n, data.draw(st.integers(0, n - 1)), s)
    assert vd(f, s) > 0
    g = self_loop(f)
    assert rd(g, s) == rd(f, s) - 1
    if not g.is_zero():
        assert vd(g, s) == vd(f, s) - 1


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 7), SIGNS, st.data())
def test_connect_keeps_degree(n, s, data):
    g = data.draw(symsigs(min_arity=1, max_arity=min(3, n - 1)))
    assume(not g.is_zero() and vd(g, s) == 0)
    f = poly_sig(data, n, data.draw(st.integers(0, n - g.arity)), s)
    assert rd(connect(f, g), s) == rd(f, s)


@settings(max_examples=60, deadline=None)
@given(symsigs(min_arity=2, max_arity=5), symsigs(min_arity=1, max_arity=2))
def test_connect_matches_tensor_contraction(f, g):
    assume(g.arity <= f.arity)
    n, m = f.arity, g.arity
    out = []
    for k in range(n - m + 1):
        acc = ZERO
        for ys in itertools.product((0, 1), repeat=m):
            acc = acc + f.entries[k + sum(ys)] * g.entries[sum(ys)]
        out.append(acc)
    assert connect(f, g) == SymSig(out)


@settings(max_examples=150, deadline=None)
@given(symsigs(min_arity=3, max_arity=6))
def test_decompose2_round_trip(f):
    d = decompose2(f)
    if isinstance(d, (TwoPower, DoubleRoot, DegenerateForm)):
        assert reconstruct(d, f.arity) == f


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6), st.data())
def test_decompose2_recovers_built_two_powers(n, data):
    a, b = data.draw(cyclos().filter(bool)), data.draw(cyclos().filter(bool))
    u, v = data.draw(unaries()), data.draw(unaries())
    assume(u[0] * v[1] != u[1] * v[0])
    f = tensor_power(u, n).scale(a) + tensor_power(v, n).scale(b)
    d = decompose2(f)
    assert isinstance(d, (TwoPower, IrrationalRoots))
    if isinstance(d, TwoPower):
        assert reconstruct(d, n) == f


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 6), st.data())
def test_z_shape_law(n, data):
    d = data.draw(st.integers(0, n - 1))
    f = poly_sig(data, n, d, 1)
    assert rd(f, 1) == d
    h = apply_contra(named("Zinv"), f)
    assert all(not x for x in h.entries[d + 1 :])
    assert h.entries[d]


def test_powers_of_the_isotropic_vector_have_degree_zero():
    for n in range(1, 8):
        assert rd(tensor_power((1, I), n), 1) == 0
        assert rd(tensor_power((1, -I), n), -1) == 0


@settings(max_examples=60, deadline=None)
@given(cyclos(conductors=(3, 4, 8, 12), max_terms=3))
def test_sqrt_recovers_squares(w):
    s = sqrt_cyclo(w * w)
    assert s is not None and s * s == w * w


def test_sqrt_examples():
    assert sqrt_cyclo(Cyclo(-4)) * sqrt_cyclo(Cyclo(-4)) == -4
    s = sqrt_cyclo(-4 - 3 * I)
    assert s is not None and s * s == -4 - 3 * I and s.conductor == 8
    assert sqrt_cyclo(2 + I) is None


@settings(max_examples=40, deadline=None)
@given(cyclos(conductors=(3, 4, 8), max_terms=2), st.sampled_from((2, 3, 4, 8)))
def test_root_recovers_powers(w, g):
    z = w**g
    r = root_cyclo(z, g)
    assert r is not None and r**g == z


def test_root_rejects_non_powers():
    assert root_cyclo(Cyclo(2), 3) is None
    assert root_cyclo(2 + I, 4) is None


def test_sqrt_of_huge_squarefree_part_is_refused():
    # 1000001 = 101 * 9901: the exact root lives in a field of degree ~ 4 million
    assert sqrt_cyclo(Cyclo(1000001)) is None
    assert sqrt_cyclo(Cyclo(101)) ** 2 == 101
    # f_k = x1^k + x2^k with x^2 = x + 250000
    f = [2, 1]
    for _ in range(3):
        f.append(f[-1] + 250000 * f[-2])
    d = decompose2(sig(*f))
    assert isinstance(d, IrrationalRoots) and d.disc == 1000001
