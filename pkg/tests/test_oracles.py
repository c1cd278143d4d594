import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from holant.bridges import (
    eulerian_grid,
    matching_grid,
    no_sink_grid,
    no_sink_hat,
    no_sink_transformed_grid,
    one_in_one_out_hat,
    vertex_cover_grid,
)
from holant.cyclo import I, Cyclo
from holant.grid import holant_brute, transform_grid
from holant.oracles import (
    OracleBoundError,
    PlainGraph,
    count_eulerian_orientations,
    count_matchings,
    count_no_sink_orientations,
    count_vertex_covers,
    format_graph,
    parse_graph,
    random_regular_multigraph,
    random_simple_graph,
)
from holant.sigalg import sig
from holant.xform import Mat2, apply_co, apply_contra

K3 = PlainGraph(3, [(0, 1), (1, 2), (0, 2)])
K5 = PlainGraph(5, list(itertools.combinations(range(5), 2)))
EDGE = PlainGraph(2, [(0, 1)])
seeds = st.integers(0, 2**32)


def orientations(g):
    """Yield (outdeg, indeg) per orientation; a loop adds one to each."""
    for dirs in itertools.product((0, 1), repeat=len(g.edges)):
        out, inn = [0] * g.n, [0] * g.n
        for (u, v), d in zip(g.edges, dirs):
            a, b = (u, v) if d == 0 else (v, u)
            out[a] += 1
            inn[b] += 1
        yield out, inn


def eo_by_enumeration(g):
    return sum(out == inn for out, inn in orientations(g))


def test_vertex_cover_examples():
    assert count_vertex_covers(K3) == 4
    assert count_vertex_covers(EDGE) == 3
    assert count_vertex_covers(EDGE, 5) == 7
    t = Cyclo(2) + I
    assert count_vertex_covers(EDGE, t) == 2 + t


def test_vertex_cover_bound():
    with pytest.raises(OracleBoundError):
        count_vertex_covers(PlainGraph(21, []))


def test_eulerian_examples():
    assert count_eulerian_orientations(PlainGraph(2, [(0, 1)] * 4)) == math.comb(4, 2)
    assert count_eulerian_orientations(PlainGraph(1, [(0, 0), (0, 0)])) == 4
    assert count_eulerian_orientations(K5) == eo_by_enumeration(K5) == 24
    with pytest.raises(ValueError):
        count_eulerian_orientations(PlainGraph(2, [(0, 1)]))


def test_matching_examples():
    assert count_matchings(K3) == 4
    assert count_matchings(K3, 0) == 0
    assert count_matchings(EDGE, 3) == 10


def test_no_sink_examples():
    # triangle: the 2 cyclic orientations are the only ones without a sink
    assert count_no_sink_orientations(K3) == 2
    assert count_no_sink_orientations(EDGE) == 0


def test_graph_format_round_trip():
    g = random_regular_multigraph(random.Random(1), 5, 4)
    assert parse_graph(format_graph(g)) == g
    with pytest.raises(ValueError):
        parse_graph("e 0 1\n")


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_eulerian_counter_matches_enumeration(seed):
    rng = random.Random(seed)
    g = random_regular_multigraph(rng, rng.randint(2, 4), rng.choice((2, 4)), loops=True)
    assert count_eulerian_orientations(g) == eo_by_enumeration(g)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_no_sink_counter_matches_enumeration(seed):
    g = random_simple_graph(random.Random(seed), 5, 0.6)
    brute = sum(all(o > 0 for o in out) for out, _ in orientations(g))
    assert count_no_sink_orientations(g) == brute


# --- holant bridges --------------------------------------------------------

@settings(max_examples=10, deadline=None)
@given(seeds)
def test_eulerian_bridge(seed):
    rng = random.Random(seed)
    g = random_regular_multigraph(rng, rng.randint(2, 5), 4)
    assert holant_brute(eulerian_grid(g)) == 2**g.n * count_eulerian_orientations(g)


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from([1, 2, 0, "i"]))
def test_cover_and_matching_bridges(seed, lam):
    lam = I if lam == "i" else Cyclo(lam)
    g = random_simple_graph(random.Random(seed), random.Random(seed).randint(1, 7), 0.5)
    # up to 21 graph edges, so 42 grid edges: lift the safety bound, the contraction stays cheap
    assert holant_brute(vertex_cover_grid(g, lam), bound=64) == count_vertex_covers(g, lam)
    assert holant_brute(matching_grid(g, lam), bound=64) == count_matchings(g, lam)


def test_k3_cover_grid():
    assert holant_brute(vertex_cover_grid(K3)) == 4


@pytest.mark.parametrize("k", [2, 3, 4])
def test_no_sink_transform_identity(k):
    T = Mat2(Cyclo(1) / 2, -I / 2, Cyclo(1) / 2, I / 2)
    assert apply_co(sig(0, 1, 0), T) == sig(1, 0, 1).scale(Cyclo(1) / 2)
    assert apply_contra(T.inverse(), sig(0, *([1] * k))) == no_sink_hat(k)
    assert no_sink_hat(k).entries[0] == 2**k - 1


def test_no_sink_bridge():
    rng = random.Random(7)
    for _ in range(5):
        n, k = rng.randint(2, 5), rng.choice((2, 3, 4))
        if n * k % 2:
            continue
        g = random_regular_multigraph(rng, n, k)
        direct = holant_brute(no_sink_grid(g))
        assert direct == count_no_sink_orientations(g)
        T = Mat2(Cyclo(1) / 2, -I / 2, Cyclo(1) / 2, I / 2)
        assert holant_brute(transform_grid(no_sink_grid(g), T)) == direct
        assert holant_brute(no_sink_transformed_grid(g)) == direct * 2 ** len(g.edges)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_one_in_one_out_hats(k):
    f, g = one_in_one_out_hat(k, 1), one_in_one_out_hat(k, -1)
    assert [f[j] for j in range(3)] == [k, I * (k - 2), -(k - 4)]
    assert [g[j] for j in range(3)] == [k, -I * (k - 2), -(k - 4)]
