import itertools
from fractions import Fraction

from hypothesis import strategies as st

from holant.cyclo import ZERO, ONE, Cyclo, zeta
from holant.sigalg import SymSig
from holant.xform import Mat2

SMALL_CONDUCTORS = (1, 3, 4, 5, 8, 12)


@st.composite
def cyclos(draw, conductors=SMALL_CONDUCTORS, max_terms=3, bound=4):
    n = draw(st.sampled_from(conductors))
    terms = draw(
        st.lists(
            st.tuples(st.integers(0, max(n - 1, 0)), st.integers(-bound, bound), st.sampled_from((1, 1, 1, 2, 3))),
            max_size=max_terms,
        )
    )
    z = ZERO
    for k, num, den in terms:
        z = z + zeta(n, k) * Fraction(num, den)
    return z


def nonzero_cyclos(**kw):
    return cyclos(**kw).filter(bool)


@st.composite
def symsigs(draw, min_arity=1, max_arity=5, **kw):
    n = draw(st.integers(min_arity, max_arity))
    return SymSig(draw(st.lists(cyclos(**kw), min_size=n + 1, max_size=n + 1)))


@st.composite
def unaries(draw, **kw):
    u = (draw(cyclos(**kw)), draw(cyclos(**kw)))
    if not u[0] and not u[1]:
        u = (ONE, u[1])
    return u


@st.composite
def nonsingular(draw, **kw):
    T = Mat2(*(draw(cyclos(**kw)) for _ in range(4)))
    if T.is_singular():
        T = Mat2(T.t00 + 1, T.t01, T.t10, T.t11 + 1)
        if T.is_singular():
            T = Mat2(1, T.t01, 0, 1)
    return T


def naive_holant(grid):
    """Plain sum over all 2^|E| edge assignments, symmetric signatures only."""
    ports = {}
    for k, (p, q) in enumerate(grid.edges):
        ports[p] = k
        ports[q] = k
    total = ZERO
    for bits in itertools.product((0, 1), repeat=len(grid.edges)):
        term = ONE
        for vid, name in grid.vertices:
            f = grid.sigs[name]
            w = sum(bits[ports[(vid, p)]] for p in range(f.arity))
            term = term * f.entries[w]
            if not term:
                break
        total = total + term
    return total


def tensor(f: SymSig):
    return {x: f.entries[sum(x)] for x in itertools.product((0, 1), repeat=f.arity)}


def naive_contra(T: Mat2, f: SymSig):
    """(T^{(x)n} f)(x) = sum_y prod T[x_i][y_i] f(y)."""
    rows = T.rows
    tf = tensor(f)
    out = {}
    for x in tf:
        s = ZERO
        for y, fy in tf.items():
            if fy:
                c = fy
                for a, b in zip(x, y):
                    c = c * rows[a][b]
                s = s + c
        out[x] = s
    return out


def naive_co(f: SymSig, T: Mat2):
    """(f T^{(x)n})(y) = sum_x f(x) prod T[x_i][y_i]."""
    Tt = Mat2(T.t00, T.t10, T.t01, T.t11)
    return naive_contra(Tt, f)


def as_cyclo(x):
    return x if isinstance(x, Cyclo) else Cyclo(x)
