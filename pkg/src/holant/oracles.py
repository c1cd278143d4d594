"""Brute-force combinatorial counters used as ground truth.

Nothing here touches signatures or grids; weights stay plain integers
unless a Cyclo weight is passed in.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

__all__ = [
    "PlainGraph",
    "parse_graph",
    "format_graph",
    "count_vertex_covers",
    "count_eulerian_orientations",
    "count_matchings",
    "count_no_sink_orientations",
    "OracleBoundError",
    "random_regular_multigraph",
    "random_simple_graph",
]


class OracleBoundError(ValueError):
    pass


@dataclass
class PlainGraph:
    n: int
    edges: list = field(default_factory=list)  # unordered pairs; (u, u) is a loop

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.n} vertices")

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1  # a loop adds 2
        return deg

    def loops(self) -> int:
        return sum(1 for u, v in self.edges if u == v)


def parse_graph(text: str) -> PlainGraph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n" and len(parts) == 2:
            n = int(parts[1])
        elif parts[0] == "e" and len(parts) == 3:
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    if n is None:
        raise ValueError("graph file needs an 'n <count>' line")
    return PlainGraph(n, edges)


def format_graph(g: PlainGraph) -> str:
    return "\n".join([f"n {g.n}"] + [f"e {u} {v}" for u, v in g.edges]) + "\n"


def count_vertex_covers(g: PlainGraph, lam=1):
    """Sum over vertex covers C of lam^(number of edges with both ends in C)."""
    if g.n > 20:
        raise OracleBoundError("vertex-cover oracle is limited to 20 vertices")
    total = 0
    for mask in range(1 << g.n):
        inside = 0
        ok = True
        for u, v in g.edges:
            iu, iv = (mask >> u) & 1, (mask >> v) & 1
            if not (iu or iv):
                ok = False
                break
            if iu and iv:
                inside += 1
        if ok:
            total = total + lam**inside
    return total


def count_eulerian_orientations(g: PlainGraph) -> int:
    """Orientations with in-degree equal to out-degree everywhere.

    A loop is balance-neutral, and both of its directions are counted.
    """
    if any(d % 2 for d in g.degrees()):
        raise ValueError("Eulerian orientations need all degrees even")
    if len(g.edges) > 24:
        raise OracleBoundError("Eulerian-orientation oracle is limited to 24 edges")
    proper = [(u, v) for u, v in g.edges if u != v]
    # dynamic programme over edges; state = tuple of (out - in) per vertex
    states = {tuple([0] * g.n): 1}
    for u, v in proper:
        nxt: dict = {}
        for st, cnt in states.items():
            for a, b in ((u, v), (v, u)):
                s = list(st)
                s[a] += 1
                s[b] -= 1
                key = tuple(s)
                nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
    return states.get(tuple([0] * g.n), 0) * 2 ** g.loops()


def count_matchings(g: PlainGraph, lam=1):
    """Sum over matchings M of lam^(number of unmatched vertices). Loops never match."""
    if len(g.edges) > 24:
        raise OracleBoundError("matching oracle is limited to 24 edges")
    edges = [(u, v) for u, v in g.edges if u != v]
    total = 0

    def rec(i: int, used: int, size: int):
        nonlocal total
        if i == len(edges):
            total = total + lam ** (g.n - 2 * size)
            return
        rec(i + 1, used, size)
        u, v = edges[i]
        if not (used >> u) & 1 and not (used >> v) & 1:
            rec(i + 1, used | (1 << u) | (1 << v), size + 1)

    rec(0, 0, 0)
    return total


def count_no_sink_orientations(g: PlainGraph) -> int:
    """Orientations where every vertex has at least one outgoing edge."""
    if len(g.edges) > 24:
        raise OracleBoundError("orientation oracle is limited to 24 edges")
    count = 0
    m = len(g.edges)
    for mask in range(1 << m):
        out = [0] * g.n
        for k, (u, v) in enumerate(g.edges):
            tail = u if (mask >> k) & 1 else v
            out[tail] += 1
        if all(out):
            count += 1
    return count


def random_regular_multigraph(rng, n: int, k: int, loops: bool = False, tries: int = 1000) -> PlainGraph:
    """Configuration-model k-regular multigraph (loop-free unless loops=True)."""
    if (n * k) % 2:
        raise ValueError("n * k must be even")
    for _ in range(tries):
        stubs = [v for v in range(n) for _ in range(k)]
        rng.shuffle(stubs)
        edges = [(stubs[2 * i], stubs[2 * i + 1]) for i in range(len(stubs) // 2)]
        if loops or all(u != v for u, v in edges):
            return PlainGraph(n, edges)
    raise ValueError("could not sample a loop-free regular multigraph")


def random_simple_graph(rng, n: int, p: float = 0.5, allow_isolated: bool = True) -> PlainGraph:
    for _ in range(1000):
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
        g = PlainGraph(n, edges)
        if allow_isolated or all(g.degrees()):
            return g
    raise ValueError("could not sample a graph without isolated vertices")
