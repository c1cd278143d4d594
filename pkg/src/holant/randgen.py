"""Seeded random instances: cyclotomic scalars, signatures, matrices and grids."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .cyclo import I, ONE, Cyclo, zeta
from .grid import SigGrid
from .sigalg import SymSig, sym
from .xform import Mat2, named


def rand_cyclo(rng: random.Random, conductor: int = 8, terms: int = 2, lo: int = -3, hi: int = 3) -> Cyclo:
    out = Cyclo(0)
    for _ in range(rng.randint(1, terms)):
        c = Fraction(rng.randint(lo, hi), rng.choice((1, 1, 1, 2)))
        out = out + c * zeta(conductor, rng.randrange(conductor))
    return out


def rand_nonzero(rng: random.Random, **kw) -> Cyclo:
    while True:
        z = rand_cyclo(rng, **kw)
        if z:
            return z


def rand_sym(rng: random.Random, arity: int, conductor: int = 8, zero_prob: float = 0.2) -> SymSig:
    return SymSig(
        Cyclo(0) if rng.random() < zero_prob else rand_cyclo(rng, conductor) for _ in range(arity + 1)
    )


def rand_unary(rng: random.Random, conductor: int = 8) -> tuple:
    while True:
        u = (rand_cyclo(rng, conductor), rand_cyclo(rng, conductor))
        if u[0] or u[1]:
            return u


def rand_vanishing(rng: random.Random, n: int, sigma: int, conductor: int = 8) -> SymSig:
    """sym(n, t, [1, sigma i], ...) with 2t > n, so the result lies in V^sigma."""
    t = rng.randint(n // 2 + 1, n)
    v = (ONE, I if sigma > 0 else -I)
    return sym(n, t, v, [rand_unary(rng, conductor) for _ in range(n - t)])


def rand_nonsingular(rng: random.Random, conductor: int = 8) -> Mat2:
    while True:
        T = Mat2(*(rand_cyclo(rng, conductor) for _ in range(4)))
        if not T.is_singular():
            return T


def rand_orthogonal(rng: random.Random) -> Mat2:
    """A matrix with T T^t = I built from rational and complex Pythagorean pairs."""
    p, q = rng.randint(1, 5), rng.randint(0, 5)
    den = p * p + q * q
    real = Mat2(Fraction(p * p - q * q, den), Fraction(2 * p * q, den), -Fraction(2 * p * q, den), Fraction(p * p - q * q, den))
    s = Fraction(rng.randint(1, 4), rng.randint(1, 4))
    a = (1 + s * s) / (2 * s)
    b = I * ((s * s - 1) / (2 * s))
    hyper = Mat2(a, b, -b, a)
    extras = [named("H2"), named("X"), Mat2.diag(1, -1), named("I")]
    T = real @ hyper @ rng.choice(extras)
    return T if rng.random() < 0.5 else T @ rng.choice(extras)


def _port_list(arities: Sequence[int], ids: Sequence) -> list:
    return [(vid, p) for vid, a in zip(ids, arities) for p in range(a)]


def _split(rng: random.Random, total: int, max_arity: int) -> list[int]:
    parts = []
    while total > 0:
        a = rng.randint(1, min(max_arity, total))
        parts.append(a)
        total -= a
    return parts


def rand_bipartite_grid(
    rng: random.Random,
    left: Sequence[SymSig],
    right: Sequence[SymSig],
    max_edges: int = 10,
) -> SigGrid:
    """Random closed bipartite grid; left/right are pools of signatures keyed by arity."""
    lmax = max(s.arity for s in left)
    rmax = max(s.arity for s in right)
    for _ in range(1000):
        E = rng.randint(1, max_edges)
        la = _split(rng, E, lmax)
        ra = _split(rng, E, rmax)
        lpool = {a: [s for s in left if s.arity == a] for a in la}
        rpool = {a: [s for s in right if s.arity == a] for a in ra}
        if all(lpool[a] for a in la) and all(rpool[a] for a in ra):
            break
    else:
        raise ValueError("signature pools cannot realise a bipartite grid")
    sigs, verts, sides = {}, [], {}
    for k, a in enumerate(la):
        s = rng.choice(lpool[a])
        name = f"L{left.index(s)}"
        sigs[name] = s
        verts.append((f"l{k}", name))
        sides[f"l{k}"] = 0
    for k, a in enumerate(ra):
        s = rng.choice(rpool[a])
        name = f"R{right.index(s)}"
        sigs[name] = s
        verts.append((f"r{k}", name))
        sides[f"r{k}"] = 1
    lports = _port_list(la, [f"l{k}" for k in range(len(la))])
    rports = _port_list(ra, [f"r{k}" for k in range(len(ra))])
    rng.shuffle(rports)
    edges = list(zip(lports, rports))
    return SigGrid(sigs, verts, edges, [], sides)


def rand_grid(rng: random.Random, pool: Sequence[SymSig], max_edges: int = 10) -> SigGrid:
    """Random closed grid (loops and parallel edges allowed) over signatures in pool."""
    arities = sorted({s.arity for s in pool})
    for _ in range(2000):
        E = rng.randint(1, max_edges)
        total = 2 * E
        parts = []
        while total > 0:
            choices = [a for a in arities if a <= total]
            if not choices:
                break
            a = rng.choice(choices)
            parts.append(a)
            total -= a
        if total == 0 and parts:
            break
    else:
        raise ValueError("signature pool cannot realise a closed grid")
    sigs, verts = {}, []
    for k, a in enumerate(parts):
        s = rng.choice([s for s in pool if s.arity == a])
        name = f"S{list(pool).index(s)}"
        sigs[name] = s
        verts.append((f"v{k}", name))
    ports = _port_list(parts, [f"v{k}" for k in range(len(parts))])
    rng.shuffle(ports)
    edges = [(ports[2 * i], ports[2 * i + 1]) for i in range(len(ports) // 2)]
    return SigGrid(sigs, verts, edges, [])
