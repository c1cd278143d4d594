"""Signature grids encoding the counting problems that ``oracles`` solves directly."""
from __future__ import annotations

from .cyclo import I, Cyclo
from .grid import SigGrid
from .oracles import PlainGraph
from .sigalg import SymSig

__all__ = [
    "vertex_cover_grid",
    "eulerian_grid",
    "matching_grid",
    "no_sink_grid",
    "no_sink_transformed_grid",
    "no_sink_hat",
    "one_in_one_out_hat",
]

EO_SIG = SymSig([3, 0, 1, 0, 3])


def _ports(g: PlainGraph):
    """Assign port numbers per vertex in edge order; yields ((u, pu), (v, pv))."""
    nxt = [0] * g.n
    out = []
    for u, v in g.edges:
        pu = nxt[u]
        nxt[u] += 1
        pv = nxt[v]
        nxt[v] += 1
        out.append(((u, pu), (v, pv)))
    return out


def _equality(k: int) -> SymSig:
    if k == 0:
        return SymSig([2])  # a variable touching no edge still ranges over {0, 1}
    return SymSig([1] + [0] * (k - 1) + [1])


def vertex_cover_grid(g: PlainGraph, lam=1) -> SigGrid:
    """Edge vertices carry [0, 1, lam]; graph vertices carry =_deg."""
    deg = g.degrees()
    sigs = {"edge": SymSig([0, 1, lam])}
    vertices, sides, edges = [], {}, []
    for v in range(g.n):
        name = f"={deg[v]}"
        sigs[name] = _equality(deg[v])
        vertices.append((("v", v), name))
        sides[("v", v)] = 1
    for k, ((u, pu), (v, pv)) in enumerate(_ports(g)):
        e = ("e", k)
        vertices.append((e, "edge"))
        sides[e] = 0
        edges.append(((e, 0), (("v", u), pu)))
        edges.append(((e, 1), (("v", v), pv)))
    return SigGrid(sigs, vertices, edges, [], sides)


def _plain(g: PlainGraph, sig_for_degree) -> SigGrid:
    deg = g.degrees()
    sigs, vertices = {}, []
    for v in range(g.n):
        s = sig_for_degree(deg[v])
        name = f"d{deg[v]}"
        sigs[name] = s
        vertices.append((v, name))
    return SigGrid(sigs, vertices, _ports(g), [])


def eulerian_grid(g: PlainGraph, f: SymSig = EO_SIG) -> SigGrid:
    def pick(d):
        if d != f.arity:
            raise ValueError(f"vertex of degree {d} cannot carry an arity-{f.arity} signature")
        return f

    return _plain(g, pick)


def matching_grid(g: PlainGraph, lam=1) -> SigGrid:
    lam = lam if isinstance(lam, Cyclo) else Cyclo(lam)
    return _plain(g, lambda d: SymSig([lam] + [1] + [0] * (d - 1)) if d else SymSig([lam]))


def no_sink_grid(g: PlainGraph) -> SigGrid:
    """Holant([0,1,0] | [0,1,...,1]): each edge is a disequality, 1 marks the tail."""
    deg = g.degrees()
    sigs = {"neq": SymSig([0, 1, 0])}
    vertices, sides, edges = [], {}, []
    for v in range(g.n):
        name = f"out{deg[v]}"
        sigs[name] = SymSig([0] + [1] * deg[v])
        vertices.append((("v", v), name))
        sides[("v", v)] = 1
    for k, ((u, pu), (v, pv)) in enumerate(_ports(g)):
        e = ("e", k)
        vertices.append((e, "neq"))
        sides[e] = 0
        edges.append(((e, 0), (("v", u), pu)))
        edges.append(((e, 1), (("v", v), pv)))
    return SigGrid(sigs, vertices, edges, [], sides)


def no_sink_hat(k: int) -> SymSig:
    """[2^k - 1, -i, 1, i, -1, ...]: entry j >= 1 is -(i^j)."""
    return SymSig([2**k - 1] + [-(I**j) for j in range(1, k + 1)])


def one_in_one_out_hat(k: int, sign: int = 1) -> SymSig:
    """Entry j is (sign i)^j (k - 2j)."""
    step = I if sign > 0 else -I
    return SymSig([step**j * (k - 2 * j) for j in range(k + 1)])


def no_sink_transformed_grid(g: PlainGraph) -> SigGrid:
    """Plain grid of the transformed vertex signatures; the edge side is (1/2)[1,0,1]."""
    return _plain(g, no_sink_hat)
