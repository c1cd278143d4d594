import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from corpus import CORPUS, two_power
from holant.classify import classify_set
from holant.cyclo import I, Cyclo
from holant.grid import SigGrid, holant_brute
from holant.randgen import rand_cyclo, rand_grid, rand_nonzero, rand_sym, rand_unary
from holant.sigalg import SymSig, connect, rd, sig, sym
from holant.tracteval import (
    PreconditionError,
    eval_absorb,
    eval_affine,
    eval_arity2,
    eval_auto,
    eval_product,
    eval_vanishing,
    subdivide,
    vanishing_certificate,
)

seeds = st.integers(0, 2**32)
VAN4 = sym(4, 3, (1, I), [(1, 0)])


def cycle(f, k):
    """k copies of the binary f joined in a ring."""
    verts = [(j, "f") for j in range(k)]
    edges = [((j, 1), ((j + 1) % k, 0)) for j in range(k)]
    return SigGrid({"f": f}, verts, edges)


def bundle(f, g, k):
    """Two arity-k vertices joined by k parallel edges."""
    return SigGrid({"f": f, "g": g}, [("a", "f"), ("b", "g")], [(("a", j), ("b", j)) for j in range(k)])


def disjoint(g1, g2):
    sigs = {("x", n): s for n, s in g1.sigs.items()} | {("y", n): s for n, s in g2.sigs.items()}
    verts = [(("x", v), ("x", n)) for v, n in g1.vertices] + [(("y", v), ("y", n)) for v, n in g2.vertices]
    edges = [((("x", a), p), (("x", b), q)) for (a, p), (b, q) in g1.edges]
    edges += [((("y", a), p), (("y", b), q)) for (a, p), (b, q) in g2.edges]
    return SigGrid(sigs, verts, edges)


EMPTY = SigGrid({}, [], [])


# --- arity 2 ---------------------------------------------------------------

def test_triangle_of_equalities():
    assert eval_arity2(cycle(sig(1, 0, 1), 3)) == 2


def test_path_through_disequality():
    g = SigGrid(
        {"u": sig(1, 1), "ne": sig(0, 1, 0)},
        [("a", "u"), ("m", "ne"), ("b", "u")],
        [(("a", 0), ("m", 0)), (("m", 1), ("b", 0))],
    )
    assert eval_arity2(g) == 2


def test_arity2_rejects_ternary():
    with pytest.raises(ValueError):
        eval_arity2(bundle(sig(1, 2, 3, 4), sig(1, 0, 0, 5), 3))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_arity2_matches_brute(seed):
    rng = random.Random(seed)
    pool = [rand_sym(rng, rng.randint(1, 2)) for _ in range(3)] + [rand_sym(rng, 2)]
    g = rand_grid(rng, pool, max_edges=10)
    assert eval_arity2(g) == holant_brute(g)


# --- vanishing -------------------------------------------------------------

def test_vanishing_examples():
    for k in (1, 2, 3):
        assert eval_vanishing(bundle(VAN4, VAN4, 4), 1) == 0
        g = rand_grid(random.Random(k), [VAN4, sig(1, I, -1)], max_edges=10)
        assert eval_vanishing(g, 1) == 0
    assert eval_vanishing(EMPTY, 1) == 1


def test_vanishing_certificate_counts_factors():
    cert = vanishing_certificate(bundle(VAN4, VAN4, 4), 1)
    assert cert == {"edges": 4, "rd_total": 2, "vanishes": True}
    with pytest.raises(PreconditionError):
        vanishing_certificate(bundle(VAN4, sig(1, 0, 0, 0, 1), 4), 1)
    with pytest.raises(PreconditionError):
        eval_vanishing(bundle(VAN4, VAN4, 4), -1)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_vanishing_matches_brute(seed):
    rng = random.Random(seed)
    s = rng.choice((1, -1))
    pool = []
    for _ in range(rng.randint(1, 3)):
        n = rng.randint(2, 5)
        t = rng.randint(n // 2 + 1, n)
        pool.append(sym(n, t, (1, s * I), [rand_unary(rng) for _ in range(n - t)]))
    a, b = rand_cyclo(rng), rand_cyclo(rng)
    binary = SymSig([(s * I) ** k * (a + b * k) for k in range(3)])
    if not binary.is_zero():
        pool.append(binary)
    g = rand_grid(rng, pool, max_edges=10)
    assert eval_vanishing(g, s) == holant_brute(g)


# --- product ---------------------------------------------------------------

def test_product_examples():
    a, b = Cyclo(3), 2 + I
    f = sig(a, 0, 0, b)
    assert eval_product(bundle(f, f, 3)) == a * a + b * b
    # each of the three edges passes through a disequality
    verts = [("x", "f"), ("y", "f")] + [(("n", j), "ne") for j in range(3)]
    edges = [(("x", j), (("n", j), 0)) for j in range(3)] + [((("n", j), 1), ("y", j)) for j in range(3)]
    g = SigGrid({"f": f, "ne": sig(0, 1, 0)}, verts, edges)
    assert eval_product(g) == 2 * a * b


def test_product_rejects_non_product():
    with pytest.raises(PreconditionError):
        eval_product(bundle(sig(1, 1, 0, 0), sig(1, 0, 0, 1), 3))


def _rand_product_pool(rng):
    pool = [sig(0, 1, 0)]
    for _ in range(rng.randint(1, 3)):
        n = rng.randint(1, 4)
        pool.append(SymSig([rand_nonzero(rng)] + [0] * (n - 1) + [rand_cyclo(rng)]))
    return pool


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_product_matches_brute(seed):
    rng = random.Random(seed)
    g = rand_grid(rng, _rand_product_pool(rng), max_edges=12)
    assert eval_product(g) == holant_brute(g)


# --- affine ----------------------------------------------------------------

def test_affine_examples():
    one_var = SigGrid({"p": sig(1, I), "q": sig(1, 1)}, [("a", "p"), ("b", "q")], [(("a", 0), ("b", 0))])
    assert eval_affine(one_var) == 1 + I
    eq4 = sig(1, 0, 0, 0, 1)
    assert eval_affine(bundle(eq4, eq4, 4)) == 2


def test_affine_rejects_non_affine():
    with pytest.raises(PreconditionError):
        eval_affine(bundle(sig(1, 2, 3, 4), sig(1, 0, 0, 1), 3))


def _rand_affine_sig(rng):
    n = rng.randint(1, 4)
    u, v = rng.choice([((1, 0), (0, 1)), ((1, 1), (1, -1)), ((1, I), (1, -I))])
    return two_power(u, v, n, I ** rng.randint(0, 3)).scale(rng.choice([1, 2, I, 1 + I]))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_affine_matches_brute(seed):
    rng = random.Random(seed)
    pool = [_rand_affine_sig(rng) for _ in range(rng.randint(1, 4))]
    assume(not any(f.is_zero() for f in pool))
    g = rand_grid(rng, pool, max_edges=12)
    assert eval_affine(g) == holant_brute(g)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("r", range(4))
def test_affine_on_f2_forms_matches_tensor_expansion(k, r):
    lam = 1 + I
    f = two_power((1, 1), (1, -1), k, I**r).scale(lam)
    pins = {0: sig(1, 0), 1: sig(0, 1)}
    for w in range(k + 1):
        x = [1] * w + [0] * (k - w)
        verts = [("f", "f")] + [(("p", j), f"pin{x[j]}") for j in range(k)]
        edges = [(("f", j), (("p", j), 0)) for j in range(k)]
        g = SigGrid({"f": f, "pin0": pins[0], "pin1": pins[1]}, verts, edges)
        assert eval_affine(g) == lam * (1 + I**r * (-1) ** w)


# --- absorption ------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from((1, -1)))
def test_absorbing_a_unary_keeps_R2(seed, s):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    f = sym(n, n - 1, (1, s * I), [rand_unary(rng)])
    assume(not f.is_zero())
    assert rd(f, s) <= 1
    u = SymSig(rand_unary(rng))
    h = connect(f, u)
    assert h.is_zero() or rd(h, s) <= 1


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_absorb_matches_brute(seed):
    rng = random.Random(seed)
    s = rng.choice((1, -1))
    n = rng.randint(3, 5)
    f = sym(n, n - 1, (1, s * I), [rand_unary(rng)])
    pool = [f, SymSig(rand_unary(rng)), SymSig(rand_unary(rng))]
    assume(not any(p.is_zero() for p in pool))
    g = rand_grid(rng, pool, max_edges=10)
    assert eval_absorb(g, s) == holant_brute(g)


# --- structure -------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(seeds)
def test_evaluators_are_multiplicative(seed):
    rng = random.Random(seed)
    ppool = _rand_product_pool(rng)
    g1, g2 = rand_grid(rng, ppool, 6), rand_grid(rng, ppool, 6)
    assert eval_product(disjoint(g1, g2)) == eval_product(g1) * eval_product(g2)
    apool = [f for f in (_rand_affine_sig(rng) for _ in range(3)) if not f.is_zero()] or [sig(1, 0, 1)]
    g1, g2 = rand_grid(rng, apool, 6), rand_grid(rng, apool, 6)
    assert eval_affine(disjoint(g1, g2)) == eval_affine(g1) * eval_affine(g2)
    bpool = [rand_sym(rng, 2), rand_sym(rng, 1)]
    g1, g2 = rand_grid(rng, bpool, 6), rand_grid(rng, bpool, 6)
    assert eval_arity2(disjoint(g1, g2)) == eval_arity2(g1) * eval_arity2(g2)
    d = disjoint(g1, g2)
    assert eval_auto(d).value == holant_brute(d)


def test_subdivide_preserves_holant():
    g = rand_grid(random.Random(4), [sig(1, 2, 0, I), sig(0, 1, 3)], max_edges=8)
    assert holant_brute(subdivide(g)) == holant_brute(g)


# --- dispatcher ------------------------------------------------------------

def _wire(pairs):
    used: dict = {}
    out = []
    for u, v in pairs:
        out.append(((u, used.get(u, 0)), (v, used.get(v, 0))))
        used[u] = used.get(u, 0) + 1
        used[v] = used.get(v, 0) + 1
    return out


def test_auto_examples():
    # vertex covers of K3 as (edge constraint | equalities)
    pairs = []
    for j, (u, v) in enumerate([(0, 1), (1, 2), (2, 0)]):
        pairs += [(u, ("e", j)), (v, ("e", j))]
    verts = [(j, "eq") for j in range(3)] + [(("e", j), "vc") for j in range(3)]
    k3 = SigGrid({"eq": sig(1, 0, 1), "vc": sig(0, 1, 1)}, verts, _wire(pairs))
    assert eval_auto(k3).value == 4

    cube_edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)]
    cube = SigGrid({"eq3": sig(1, 0, 0, 1)}, [(v, "eq3") for v in range(8)], _wire(cube_edges))
    res = eval_auto(cube)
    assert res.value == holant_brute(cube) == 2
    assert res.method in ("affine", "product")

    res = eval_auto(bundle(VAN4, VAN4, 4))
    assert (res.value, res.method) == (0, "vanishing")


def test_auto_zero_signature_short_circuits():
    res = eval_auto(bundle(sig(0, 0, 0), sig(1, 0, 1), 2))
    assert res.value == 0 and res.method == "zero-signature"


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_auto_matches_brute_on_tractable_corpus(seed):
    rng = random.Random(seed)
    entry = rng.choice([e for e in CORPUS if e.tractable])
    F = list(entry.sigs)
    assert classify_set(F).tractable
    g = rand_grid(rng, F, max_edges=10)
    res = eval_auto(g)
    assert res.value == holant_brute(g), (entry.name, res.method)
