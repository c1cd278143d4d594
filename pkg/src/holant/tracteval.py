"""Polynomial-time Holant evaluators for the tractable cases, plus a dispatcher."""
from __future__ import annotations

from dataclasses import dataclass

from .classify import Verdict, classify_set, is_affine, is_product
from .cyclo import I, ONE, ZERO, Cyclo
from .grid import BoundExceeded, GridError, SigGrid, brute_bound, holant_brute, transform_grid
from .sigalg import SymSig, connect, is_degenerate, rd, vanishing_type

__all__ = [
    "PreconditionError",
    "eval_arity2",
    "eval_vanishing",
    "vanishing_certificate",
    "eval_product",
    "eval_affine",
    "eval_absorb",
    "eval_auto",
    "subdivide",
    "METHODS",
]

METHODS = ("auto", "brute", "affine", "product", "arity2", "vanishing", "absorb")


class PreconditionError(GridError):
    pass


def _sym(grid: SigGrid, vid) -> SymSig:
    s = grid.signature(vid)
    if not isinstance(s, SymSig):
        raise PreconditionError(f"vertex {vid!r} carries a non-symmetric signature")
    return s


def _edge_vars(grid: SigGrid) -> dict:
    """(vid, port) -> edge index."""
    out = {}
    for e, (p, q) in enumerate(grid.edges):
        out[p] = e
        out[q] = e
    return out


def _closed(grid: SigGrid) -> None:
    if grid.dangling:
        raise PreconditionError("evaluators work on closed grids")


# --- a mutable network of symmetric atoms ----------------------------------

class _Net:
    """Atoms are [signature, [edge ids]]; every edge id occurs on exactly two ports."""

    def __init__(self, grid: SigGrid):
        _closed(grid)
        ev = _edge_vars(grid)
        self.const = ONE
        self.atoms: dict = {}
        self.ends: dict = {}  # edge -> list of (atom id, port)
        self._next = 0
        for vid, _ in grid.vertices:
            s = _sym(grid, vid)
            self._add(s, [ev[(vid, p)] for p in range(s.arity)])

    def _add(self, s: SymSig, edges: list) -> None:
        if s.arity == 0:
            self.const = self.const * s[0]
            return
        aid = self._next
        self._next += 1
        self.atoms[aid] = [s, list(edges)]
        for k, e in enumerate(edges):
            self.ends.setdefault(e, []).append((aid, k))

    def _reindex(self, aid) -> None:
        for k, e in enumerate(self.atoms[aid][1]):
            self.ends[e] = [(a, p) for a, p in self.ends[e] if a != aid] + [(aid, k)]

    def remove(self, aid) -> None:
        for e in self.atoms[aid][1]:
            self.ends[e] = [(a, p) for a, p in self.ends[e] if a != aid]
        del self.atoms[aid]

    def split_degenerate(self, min_arity: int) -> None:
        for aid in list(self.atoms):
            s, edges = self.atoms[aid]
            if s.arity < min_arity:
                continue
            deg = is_degenerate(s)
            if deg is None:
                continue
            self.remove(aid)
            self.const = self.const * deg.scale
            for e in edges:
                self._add(SymSig(deg.direction), [e])

    def other_end(self, aid, port):
        e = self.atoms[aid][1][port]
        ends = self.ends[e]
        for a, p in ends:
            if (a, p) != (aid, port):
                return a, p
        raise AssertionError("dangling edge inside a closed network")


def _mat(s: SymSig):
    return ((s[0], s[1]), (s[1], s[2]))


def _vecmat(v, M):
    return (v[0] * M[0][0] + v[1] * M[1][0], v[0] * M[0][1] + v[1] * M[1][1])


def _matmul(A, B):
    return tuple(
        tuple(A[r][0] * B[0][c] + A[r][1] * B[1][c] for c in range(2)) for r in range(2)
    )


def _walk_arity2(net: _Net) -> Cyclo:
    """Paths become vector-matrix-vector products, cycles become traces."""
    total = net.const
    if any(s.arity > 2 for s, _ in net.atoms.values()):
        raise PreconditionError("a signature of arity above 2 remains")
    seen: set = set()
    for aid, (s, _) in net.atoms.items():
        if s.arity != 1 or aid in seen:
            continue
        seen.add(aid)
        vec = (s[0], s[1])
        cur, port = net.other_end(aid, 0)
        while True:
            seen.add(cur)
            t = net.atoms[cur][0]
            if t.arity == 1:
                total = total * (vec[0] * t[0] + vec[1] * t[1])
                break
            vec = _vecmat(vec, _mat(t))
            cur, port = net.other_end(cur, 1 - port)
    for aid, (s, _) in net.atoms.items():
        if aid in seen:
            continue
        acc = _mat(s)
        seen.add(aid)
        cur, port = net.other_end(aid, 1)
        while cur != aid:
            seen.add(cur)
            acc = _matmul(acc, _mat(net.atoms[cur][0]))
            cur, port = net.other_end(cur, 1 - port)
        total = total * (acc[0][0] + acc[1][1])
    return total


def eval_arity2(grid: SigGrid) -> Cyclo:
    net = _Net(grid)
    net.split_degenerate(3)
    return _walk_arity2(net)


# --- vanishing ---------------------------------------------------------------

def _check_vanishing_family(grid: SigGrid, sigma: int) -> list:
    bad = []
    for vid, _ in grid.vertices:
        s = _sym(grid, vid)
        if s.arity == 0 or sigma in vanishing_type(s):
            continue
        if s.arity == 2 and rd(s, sigma) <= 1:
            continue
        bad.append(vid)
    return bad


def vanishing_certificate(grid: SigGrid, sigma: int) -> dict:
    """After the Z-transform a vertex of recurrence degree d keeps at most d
    factors other than [1, sigma i]; the Holant vanishes when the total is
    below the edge count."""
    bad = _check_vanishing_family(grid, sigma)
    if bad:
        raise PreconditionError(f"vertices outside the vanishing family: {bad}")
    total = sum(rd(_sym(grid, vid), sigma) for vid, _ in grid.vertices if _sym(grid, vid).arity)
    return {"edges": len(grid.edges), "rd_total": total, "vanishes": total < len(grid.edges)}


def eval_vanishing(grid: SigGrid, sigma: int) -> Cyclo:
    _closed(grid)
    cert = vanishing_certificate(grid, sigma)
    if cert["vanishes"]:
        return ZERO
    # only binaries of degree one (and constants) are present
    return eval_arity2(grid)


# --- unary absorption ---------------------------------------------------------

def eval_absorb(grid: SigGrid, sigma: int) -> Cyclo:
    """Absorb unaries into their neighbours, then finish by vanishing or matrix products."""
    net = _Net(grid)
    net.split_degenerate(2)
    queue = [aid for aid, (s, _) in net.atoms.items() if s.arity == 1]
    while queue:
        aid = queue.pop()
        if aid not in net.atoms:
            continue
        u = net.atoms[aid][0]
        nb, port = net.other_end(aid, 0)
        net.remove(aid)
        w, edges = net.atoms[nb]
        if w.arity == 1:
            net.const = net.const * (u[0] * w[0] + u[1] * w[1])
            net.remove(nb)
            continue
        new = connect(w, u)
        rest = edges[:port] + edges[port + 1:]
        net.remove(nb)
        before = set(net.atoms)
        net._add(new, rest)
        created = [a for a in net.atoms if a not in before]
        if not created:
            continue
        (nid,) = created
        deg = is_degenerate(new)
        if new.arity >= 2 and deg is not None:
            net.split_degenerate(2)
            queue.extend(a for a, (s, _) in net.atoms.items() if s.arity == 1)
        elif new.arity == 1:
            queue.append(nid)
    if not net.const:
        return ZERO
    atoms = [s for s, _ in net.atoms.values()]
    if any(sigma in vanishing_type(s) for s in atoms):
        if all(sigma in vanishing_type(s) or (s.arity == 2 and rd(s, sigma) <= 1) for s in atoms):
            return ZERO
        raise PreconditionError("absorption left signatures outside the vanishing family")
    return _walk_arity2(net)


# --- product type -------------------------------------------------------------

def eval_product(grid: SigGrid) -> Cyclo:
    """Parity propagation: equalities tie edges together, disequalities flip them."""
    _closed(grid)
    ev = _edge_vars(grid)
    m = len(grid.edges)
    parent = list(range(m))
    parity = [0] * m  # parity relative to parent

    def find(x):
        if parent[x] == x:
            return x, 0
        r, p = find(parent[x])
        parent[x] = r
        parity[x] ^= p
        return r, parity[x]

    def union(x, y, d) -> bool:
        rx, px = find(x)
        ry, py = find(y)
        if rx == ry:
            return (px ^ py) == d
        parent[rx] = ry
        parity[rx] = px ^ py ^ d
        return True

    const = ONE
    weights = []  # (edge, w0, w1)
    equalities = []  # (edge, a, b)
    for vid, _ in grid.vertices:
        s = _sym(grid, vid)
        rep = is_product(s)
        if rep is None:
            raise PreconditionError(f"vertex {vid!r} is not of product type")
        vs = [ev[(vid, p)] for p in range(s.arity)]
        if rep.kind == "zero":
            return ZERO
        if rep.kind == "degenerate":
            deg = rep.degenerate
            const = const * deg.scale
            for e in vs:
                weights.append((e, deg.direction[0], deg.direction[1]))
        elif rep.kind == "disequality":
            const = const * rep.a
            if not union(vs[0], vs[1], 1):
                return ZERO
        else:
            for e in vs[1:]:
                if not union(vs[0], e, 0):
                    return ZERO
            equalities.append((vs[0], rep.a, rep.b))
    classes: dict = {}
    for e in range(m):
        r, _ = find(e)
        classes.setdefault(r, [ONE, ONE])
    for e, w0, w1 in weights:
        r, p = find(e)
        acc = classes[r]
        acc[0] = acc[0] * (w1 if p else w0)
        acc[1] = acc[1] * (w0 if p else w1)
    for e, a, b in equalities:
        r, p = find(e)
        acc = classes[r]
        acc[0] = acc[0] * (b if p else a)
        acc[1] = acc[1] * (a if p else b)
    total = const
    for w0, w1 in classes.values():
        total = total * (w0 + w1)
    return total


# --- affine: Z4 quadratic Gauss sums ------------------------------------------

class _Quadratic:
    """const + sum lin[v] x_v + 2 sum_{pairs} x_a x_b  (mod 4), with x_v in {0, 1}."""

    def __init__(self):
        self.const = 0
        self.lin: dict = {}
        self.pairs: set = set()

    def add_lin(self, v, c) -> None:
        self.lin[v] = (self.lin.get(v, 0) + c) % 4

    def toggle(self, a, b) -> None:
        if a == b:
            self.add_lin(a, 2)
            return
        key = (a, b) if a < b else (b, a)
        self.pairs ^= {key}

    def neighbours(self, v) -> list:
        return [b if a == v else a for a, b in self.pairs if v in (a, b)]

    def substitute(self, v, c: int, S) -> None:
        """x_v := c XOR (XOR of x_s for s in S); v must not be in S."""
        terms = [None] * c + list(S)  # None stands for the constant bit 1
        l = self.lin.pop(v, 0)
        nbrs = self.neighbours(v)
        self.pairs = {p for p in self.pairs if v not in p}
        if l:
            # XOR as an integer mod 4: sum z - 2 sum_{t<t'} z z'
            for t in terms:
                if t is None:
                    self.const = (self.const + l) % 4
                else:
                    self.add_lin(t, l)
            if l % 2:
                for i in range(len(terms)):
                    for j in range(i + 1, len(terms)):
                        self._two(terms[i], terms[j])
        for b in nbrs:
            # 2 x_v x_b only depends on x_v x_b mod 2
            for t in terms:
                self._two(t, b)

    def _two(self, s, t) -> None:
        """Add 2 * z_s * z_t where None is the constant 1."""
        if s is None and t is None:
            self.const = (self.const + 2) % 4
        elif s is None:
            self.add_lin(t, 2)
        elif t is None:
            self.add_lin(s, 2)
        else:
            self.toggle(s, t)


def _gauss_sum(q: _Quadratic, free: list) -> Cyclo:
    """sum over x in {0,1}^free of i^q(x)."""
    factor = ONE
    remaining = list(free)
    while remaining:
        v = remaining.pop(0)
        l = q.lin.pop(v, 0)
        nbrs = q.neighbours(v)
        q.pairs = {p for p in q.pairs if v not in p}
        if not nbrs:
            factor = factor * (1 + I**l)
            if not factor:
                return ZERO
            continue
        if l % 2 == 0:
            # sum_x i^{x(l + 2L)} = 2 [L = l/2 mod 2]; solve for one neighbour
            pick = nbrs[0]
            q.substitute(pick, (l // 2) % 2, [b for b in nbrs if b != pick])
            remaining.remove(pick)
            factor = factor * 2
        else:
            # 1 + i^l (-1)^L = (1 + i^l) i^{(4 - l) * (L mod 2)}
            factor = factor * (1 + I**l)
            c = 4 - l
            for b in nbrs:
                q.add_lin(b, c)
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    q.toggle(nbrs[i], nbrs[j])
    return factor * I ** (q.const % 4)


def eval_affine(grid: SigGrid) -> Cyclo:
    _closed(grid)
    ev = _edge_vars(grid)
    m = len(grid.edges)
    q = _Quadratic()
    equations = []  # (set of edge vars, rhs)
    scale = ONE
    for vid, _ in grid.vertices:
        s = _sym(grid, vid)
        rep = is_affine(s)
        if rep is None:
            raise PreconditionError(f"vertex {vid!r} is not affine")
        if not rep.scale:
            return ZERO
        scale = scale * rep.scale
        vs = [ev[(vid, p)] for p in range(s.arity)]
        for j, l in enumerate(rep.lin):
            if l:
                q.add_lin(vs[j], l)
        for a, b in rep.cross:
            q.toggle(vs[a], vs[b])
        for idx, rhs in rep.equations:
            row: set = set()
            for j in idx:
                row ^= {vs[j]}
            equations.append((row, rhs))
    # Gaussian elimination over GF(2), ascending variable order
    pivots: dict = {}
    for row, rhs in equations:
        row = set(row)
        for p, (prow, prhs) in pivots.items():
            if p in row:
                row ^= prow
                rhs ^= prhs
        if not row:
            if rhs:
                return ZERO
            continue
        p = min(row)
        for k, (prow, prhs) in list(pivots.items()):
            if p in prow:
                pivots[k] = (prow ^ row, prhs ^ rhs)
        pivots[p] = (row, rhs)
    for p, (row, rhs) in pivots.items():
        q.substitute(p, rhs, sorted(row - {p}))
    free = [v for v in range(m) if v not in pivots]
    return scale * _gauss_sum(q, free)


# --- dispatcher -----------------------------------------------------------------

EQ2 = SymSig([1, 0, 1])


def subdivide(grid: SigGrid) -> SigGrid:
    """Holant(F) as the bipartite Holant(=2 | F): one =2 vertex on every edge."""
    _closed(grid)
    name = "=2"
    while name in grid.sigs:
        name = "_" + name
    sigs = dict(grid.sigs)
    sigs[name] = EQ2
    vertices = list(grid.vertices)
    sides = {vid: 1 for vid, _ in grid.vertices}
    edges = []
    for k, (p, q) in enumerate(grid.edges):
        mid = ("e", k)
        vertices.append((mid, name))
        sides[mid] = 0
        edges.append((p, (mid, 0)))
        edges.append(((mid, 1), q))
    return SigGrid(sigs, vertices, edges, [], sides)


@dataclass(frozen=True)
class EvalResult:
    value: Cyclo
    method: str
    verdict: Verdict | None = None


def _brute(grid: SigGrid, bound) -> EvalResult:
    return EvalResult(holant_brute(grid, bound), "brute")


def eval_auto(grid: SigGrid, bound: int | None = None) -> EvalResult:
    _closed(grid)
    bound = brute_bound() if bound is None else bound
    sigs = grid.signature_set()
    if not all(isinstance(s, SymSig) for s in sigs):
        return _brute(grid, bound)
    nonzero = [s for s in sigs if not s.is_zero()]
    if len(nonzero) < len(sigs):
        return EvalResult(ZERO, "zero-signature")
    verdict = classify_set(nonzero)
    case = verdict.case
    if not verdict.tractable:
        if len(grid.edges) > bound:
            raise BoundExceeded(
                f"hard instance with {len(grid.edges)} edges exceeds the brute-force bound {bound}"
            )
        res = _brute(grid, bound)
        return EvalResult(res.value, res.method, verdict)
    if case in ("Arity<=2",):
        return EvalResult(eval_arity2(grid), "arity2", verdict)
    if case == "Degenerate":
        return EvalResult(eval_product(grid), "product", verdict)
    if case in ("Vanishing", "VanishingPlusBinary"):
        return EvalResult(eval_vanishing(grid, verdict.sigma), "vanishing", verdict)
    if case == "R2sigma-Fibonacci":
        return EvalResult(eval_absorb(grid, verdict.sigma), "absorb", verdict)
    wit = verdict.witness
    if wit is None or wit.T is None:
        res = _brute(grid, bound)
        return EvalResult(res.value, res.method, verdict)
    moved = transform_grid(subdivide(grid), wit.T)
    if wit.target == "A":
        return EvalResult(eval_affine(moved), "affine", verdict)
    return EvalResult(eval_product(moved), "product", verdict)


def eval_method(grid: SigGrid, method: str, sigma: int | None = None, bound: int | None = None) -> EvalResult:
    """Run one named evaluator; ``auto`` goes through the classifier."""
    if method == "auto":
        return eval_auto(grid, bound)
    if method == "brute":
        return _brute(grid, bound)
    if method == "affine":
        return EvalResult(eval_affine(grid), method)
    if method == "product":
        return EvalResult(eval_product(grid), method)
    if method == "arity2":
        return EvalResult(eval_arity2(grid), method)
    if method in ("vanishing", "absorb"):
        if sigma is None:
            sigs = [s for s in grid.signature_set() if isinstance(s, SymSig)]
            signs = set.union(set(), *(set(vanishing_type(s)) for s in sigs))
            sigma = 1 if 1 in signs or not signs else -1
        fn = eval_vanishing if method == "vanishing" else eval_absorb
        return EvalResult(fn(grid, sigma), method)
    raise ValueError(f"unknown method {method!r}")
