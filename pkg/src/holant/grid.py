"""Signature grids, gate contraction and the arity-4 signature-matrix calculus."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Sequence

from .cyclo import ONE, ZERO, Cyclo
from .linalg import as_matrix, det, identity, matmul, transpose
from .sigalg import SymSig, sig
from .xform import Mat2, SingularMatrixError, apply_co, apply_contra

__all__ = [
    "Table",
    "SigGrid",
    "GridError",
    "BoundExceeded",
    "brute_bound",
    "holant_brute",
    "contract",
    "fgate_signature",
    "transform_grid",
    "sig_matrix",
    "table_from_matrix",
    "phi",
    "psi",
    "compressed",
    "is_redundant",
    "rotate90",
    "gadget_chain",
    "approx_sequence",
    "approx_a",
    "block_vandermonde",
    "M_G",
    "A_MAT",
    "B_MAT",
    "tetrahedron",
    "tetrahedron_closed_form",
    "decorated_tetrahedron",
    "decorated_tetrahedron_closed_form",
    "binary_chain",
    "unary_chain",
]

DEFAULT_BOUND = 24


class GridError(ValueError):
    pass


class BoundExceeded(GridError):
    pass


def brute_bound() -> int:
    raw = os.environ.get("HOLANT_BRUTE_BOUND")
    return int(raw) if raw else DEFAULT_BOUND


class Table:
    """Arbitrary (not necessarily symmetric) signature as a 2^k truth table.

    values[idx] where idx has port 0 as the most significant bit.
    """

    __slots__ = ("arity", "values")

    def __init__(self, arity: int, values: Sequence):
        vals = tuple(v if isinstance(v, Cyclo) else Cyclo(v) for v in values)
        if len(vals) != 1 << arity:
            raise ValueError(f"table of arity {arity} needs {1 << arity} values")
        self.arity = arity
        self.values = vals

    @classmethod
    def from_sym(cls, f: SymSig) -> Table:
        n = f.arity
        return cls(n, [f[bin(i).count("1")] for i in range(1 << n)])

    def value(self, bits: Sequence[int]) -> Cyclo:
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return self.values[idx]

    def as_sym(self) -> SymSig | None:
        n = self.arity
        by_weight: list = [None] * (n + 1)
        for i, v in enumerate(self.values):
            w = bin(i).count("1")
            if by_weight[w] is None:
                by_weight[w] = v
            elif by_weight[w] != v:
                return None
        return SymSig(by_weight)

    def __eq__(self, other) -> bool:
        return isinstance(other, Table) and self.arity == other.arity and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.arity, self.values))

    def __repr__(self) -> str:
        return f"Table({self.arity}, [{', '.join(map(str, self.values))}])"


def _arity(s) -> int:
    return s.arity


def _lookup(s):
    """A function from a port-bit tuple to the signature value."""
    if isinstance(s, SymSig):
        ent = s.entries
        return lambda bits: ent[sum(bits)]
    return s.value


Port = tuple  # (vertex id, port index)


@dataclass
class SigGrid:
    """A labelled multigraph; each vertex carries a signature name.

    ``sides`` optionally two-colours the vertices: 0 for the row (left)
    side, 1 for the column (right) side of a bipartite Holant instance.
    """

    sigs: dict
    vertices: list = field(default_factory=list)  # [(vid, signame)]
    edges: list = field(default_factory=list)  # [((vid, port), (vid, port))]
    dangling: list = field(default_factory=list)  # [(vid, port)]
    sides: dict | None = None

    def __post_init__(self):
        self.validate()

    def signature(self, vid):
        return self.sigs[self._names[vid]]

    def validate(self) -> None:
        self._names = {}
        for vid, name in self.vertices:
            if vid in self._names:
                raise GridError(f"duplicate vertex {vid!r}")
            if name not in self.sigs:
                raise GridError(f"vertex {vid!r} uses unknown signature {name!r}")
            self._names[vid] = name
        used: dict = {}
        slots = [p for e in self.edges for p in e] + list(self.dangling)
        for vid, port in slots:
            if vid not in self._names:
                raise GridError(f"unknown vertex {vid!r}")
            ar = _arity(self.sigs[self._names[vid]])
            if not 0 <= port < ar:
                raise GridError(f"port {port} out of range for vertex {vid!r} of arity {ar}")
            if (vid, port) in used:
                raise GridError(f"port {vid}:{port} used twice")
            used[(vid, port)] = True
        for vid, name in self.vertices:
            ar = _arity(self.sigs[name])
            for p in range(ar):
                if (vid, p) not in used:
                    raise GridError(f"port {vid}:{p} is not connected")
        if self.sides is not None:
            for (u, _), (v, _) in self.edges:
                if self.sides[u] == self.sides[v]:
                    raise GridError("edge joins two vertices on the same side")

    def is_bipartite(self) -> bool:
        if self.sides is None:
            return False
        return all(self.sides[u] != self.sides[v] for (u, _), (v, _) in self.edges)

    def signature_set(self) -> list:
        seen = []
        for _, name in self.vertices:
            s = self.sigs[name]
            if s not in seen:
                seen.append(s)
        return seen


def _order_vertices(grid: SigGrid) -> list:
    """Greedy order that keeps the set of open edges small."""
    adj: dict = {vid: [] for vid, _ in grid.vertices}
    for (u, _), (v, _) in grid.edges:
        adj[u].append(v)
        adj[v].append(u)
    remaining = [vid for vid, _ in grid.vertices]
    done: set = set()
    order = []
    while remaining:
        best = max(
            remaining,
            key=lambda x: (sum(1 for y in adj[x] if y in done), -remaining.index(x)),
        )
        order.append(best)
        done.add(best)
        remaining.remove(best)
    return order


def contract(grid: SigGrid, bound: int | None = None) -> dict:
    """Sum over internal edge assignments; returns {dangling bits: value}.

    The sum is the Holant expression taken over all 2^|E| assignments,
    organised as vertex-by-vertex elimination so partial sums are shared.
    """
    bound = brute_bound() if bound is None else bound
    if len(grid.edges) > bound:
        raise BoundExceeded(f"{len(grid.edges)} edges exceed the bound {bound}")
    port_var: dict = {}
    ne = len(grid.edges)
    for e, (p, q) in enumerate(grid.edges):
        port_var[p] = e
        port_var[q] = e
    for d, p in enumerate(grid.dangling):
        port_var[p] = ne + d
    remaining_uses: dict = {}
    for var in port_var.values():
        remaining_uses[var] = remaining_uses.get(var, 0) + 1
    dangling_vars = set(range(ne, ne + len(grid.dangling)))

    open_vars: list = []
    states: dict = {(): ONE}
    for vid in _order_vertices(grid):
        s = grid.signature(vid)
        look = _lookup(s)
        vars_ = [port_var[(vid, p)] for p in range(_arity(s))]
        new_vars = []
        for v in vars_:
            if v not in open_vars and v not in new_vars:
                new_vars.append(v)
        all_vars = open_vars + new_vars
        pos = {v: i for i, v in enumerate(all_vars)}
        idx = [pos[v] for v in vars_]
        for v in vars_:
            remaining_uses[v] -= 1
        keep = [i for i, v in enumerate(all_vars) if remaining_uses[v] > 0 or v in dangling_vars]
        keep_vars = [all_vars[i] for i in keep]
        values = {}
        nxt: dict = {}
        for assign_new in itertools.product((0, 1), repeat=len(new_vars)):
            for st, acc in states.items():
                full = st + assign_new
                bits = tuple(full[i] for i in idx)
                val = values.get(bits)
                if val is None:
                    val = look(bits)
                    values[bits] = val
                if not val:
                    continue
                key = tuple(full[i] for i in keep)
                prod = acc * val
                old = nxt.get(key)
                nxt[key] = prod if old is None else old + prod
        states = {k: v for k, v in nxt.items() if v}
        open_vars = keep_vars
        if not states:
            break
    # order result by dangling declaration order
    out: dict = {}
    if not states:
        return out
    perm = [open_vars.index(ne + d) for d in range(len(grid.dangling))]
    for st, val in states.items():
        out[tuple(st[i] for i in perm)] = val
    return out


def holant_brute(grid: SigGrid, bound: int | None = None) -> Cyclo:
    """Holant value of a closed grid (no dangling edges)."""
    if grid.dangling:
        raise GridError("holant_brute needs a grid without dangling edges")
    return contract(grid, bound).get((), ZERO)


@dataclass(frozen=True)
class GateSignature:
    table: Table
    symmetric: SymSig | None


def fgate_signature(grid: SigGrid, bound: int | None = None) -> GateSignature:
    k = len(grid.dangling)
    if k < 1:
        raise GridError("an F-gate needs at least one dangling edge")
    vals = contract(grid, bound)
    table = Table(k, [vals.get(bits, ZERO) for bits in itertools.product((0, 1), repeat=k)])
    return GateSignature(table, table.as_sym())


def _table_apply(T: Mat2, table: Table) -> Table:
    """T^{(x)k} applied to a column-vector table."""
    vals = list(table.values)
    k = table.arity
    rows = T.rows
    for axis in range(k):
        stride = 1 << (k - 1 - axis)
        new = [ZERO] * len(vals)
        for i in range(len(vals)):
            bit = (i >> (k - 1 - axis)) & 1
            base = i - bit * stride
            new[i] = rows[bit][0] * vals[base] + rows[bit][1] * vals[base + stride]
        vals = new
    return Table(k, vals)


def transform_grid(grid: SigGrid, T: Mat2) -> SigGrid:
    """Row side f -> f T^{(x)n}; column side g -> (T^-1)^{(x)n} g."""
    if grid.sides is None or not grid.is_bipartite():
        raise GridError("transform_grid needs a two-coloured bipartite grid")
    if grid.dangling:
        raise GridError("transform_grid works on closed grids")
    if T.is_singular():
        raise SingularMatrixError("singular transformation")
    Tinv = T.inverse()
    Tt = T.T()
    cache: dict = {}
    new_sigs = {}
    vertices = []
    for vid, name in grid.vertices:
        side = grid.sides[vid]
        key = (name, side)
        if key not in cache:
            s = grid.sigs[name]
            if isinstance(s, SymSig):
                cache[key] = apply_co(s, T) if side == 0 else apply_contra(Tinv, s)
            else:
                cache[key] = _table_apply(Tt, s) if side == 0 else _table_apply(Tinv, s)
        new_name = f"{name}#{'R' if side == 0 else 'C'}"
        new_sigs[new_name] = cache[key]
        vertices.append((vid, new_name))
    return SigGrid(new_sigs, vertices, list(grid.edges), [], dict(grid.sides))


# --- arity-4 signature matrices ---------------------------------------------

def _q(x) -> Cyclo:
    return x if isinstance(x, Cyclo) else Cyclo(x)


A_MAT = as_matrix([[1, 0, 0, 0], [0, Cyclo(1) / 2, Cyclo(1) / 2, 0], [0, 0, 0, 1]])
B_MAT = as_matrix([[1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1]])
M_G = matmul(B_MAT, A_MAT)
J4 = as_matrix([[1 if i + j == 3 else 0 for j in range(4)] for i in range(4)])


def sig_matrix(f) -> list:
    """M[AB][DC] = f(A, B, C, D): rows by bits AB, columns by bits DC."""
    if isinstance(f, SymSig):
        if f.arity != 4:
            raise ValueError("signature matrix needs arity 4")
        look = lambda a, b, c, d: f[a + b + c + d]  # noqa: E731
    elif isinstance(f, Table):
        if f.arity != 4:
            raise ValueError("signature matrix needs arity 4")
        look = lambda a, b, c, d: f.value((a, b, c, d))  # noqa: E731
    else:
        raise TypeError("expected SymSig or Table")
    M = [[ZERO] * 4 for _ in range(4)]
    for a, b, c, d in itertools.product((0, 1), repeat=4):
        M[2 * a + b][2 * d + c] = look(a, b, c, d)
    return M


def table_from_matrix(M) -> Table:
    vals = []
    for a, b, c, d in itertools.product((0, 1), repeat=4):
        vals.append(M[2 * a + b][2 * d + c])
    return Table(4, vals)


def is_redundant(M) -> bool:
    return M[1] == M[2] and all(row[1] == row[2] for row in M)


def phi(M) -> list:
    if len(M) != 4 or any(len(r) != 4 for r in M):
        raise ValueError("phi takes a 4x4 matrix")
    return matmul(matmul(A_MAT, M), B_MAT)


def psi(N) -> list:
    if len(N) != 3 or any(len(r) != 3 for r in N):
        raise ValueError("psi takes a 3x3 matrix")
    return matmul(matmul(B_MAT, N), A_MAT)


class NotRedundantWarning(UserWarning):
    pass


def compressed(f) -> list:
    M = sig_matrix(f)
    if not is_redundant(M):
        import warnings

        warnings.warn("compressing a non-redundant signature matrix", NotRedundantWarning, stacklevel=2)
    return phi(M)


def rotate90(M) -> list:
    """Counterclockwise quarter turn of the gate: g'(A,B,C,D) = g(B,C,D,A)."""
    out = [[ZERO] * 4 for _ in range(4)]
    for a, b, c, d in itertools.product((0, 1), repeat=4):
        out[2 * a + b][2 * d + c] = M[2 * b + c][2 * a + d]
    return out


def gadget_chain(Ms: Sequence, flip_between: bool = False) -> list:
    """Product of signature matrices; a disequality edge reverses the next factor's rows."""
    if not Ms:
        raise ValueError("empty chain")
    out = [list(r) for r in Ms[0]]
    for M in Ms[1:]:
        out = matmul(out, matmul(J4, M) if flip_between else M)
    return out


def approx_a(k: int) -> Cyclo:
    """Closed form a_k = 1/3 - (1/3)(-1/2)^k."""
    from fractions import Fraction

    return Cyclo(Fraction(1, 3) - Fraction(1, 3) * Fraction(-1, 2) ** k)


def approx_sequence(k: int):
    """Matrix of N_k (N_0 = M_g, N_{k+1} = rotate(N_k) followed by g) and a_k."""
    if k < 0:
        raise ValueError("k >= 0")
    M = [list(r) for r in M_G]
    for _ in range(k):
        M = matmul(rotate90(M), M_G)
    return M, M[0][3]


@dataclass(frozen=True)
class BlockVandermonde:
    matrix: list
    det: Cyclo

    @property
    def nonsingular(self) -> bool:
        return bool(self.det)


def block_vandermonde(n: int, blocks: Sequence[int], lam) -> BlockVandermonde:
    """Columns grouped in blocks B_k with (B_k)_{rc} = r^(c-1) lambda^(k r), r, c >= 1."""
    lam = _q(lam)
    if sum(blocks) != n:
        raise ValueError("block sizes must sum to n")
    if not lam:
        raise ValueError("lambda must be nonzero")
    cols = []
    for k, ck in enumerate(blocks):
        for c in range(1, ck + 1):
            cols.append([Cyclo(r ** (c - 1)) * lam ** (k * r) for r in range(1, n + 1)])
    M = transpose(cols)
    return BlockVandermonde(M, det(M))


# --- named gadgets -----------------------------------------------------------

def tetrahedron(t) -> SymSig:
    """Four [t,1,0,0,0] vertices on K4, one dangling edge each."""
    t = _q(t)
    f = sig(t, 1, 0, 0, 0)
    verts = [(v, "f") for v in range(4)]
    edges = []
    nxt = [0] * 4
    for u, v in itertools.combinations(range(4), 2):
        edges.append(((u, nxt[u]), (v, nxt[v])))
        nxt[u] += 1
        nxt[v] += 1
    grid = SigGrid({"f": f}, verts, edges, [(v, 3) for v in range(4)])
    return fgate_signature(grid).symmetric


def tetrahedron_closed_form(t) -> SymSig:
    t = _q(t)
    return sig(t**4 + 6 * t**2 + 3, t**3 + 3 * t, t**2 + 1, t, 1)


def decorated_tetrahedron(c, t) -> SymSig:
    """Tetrahedron whose six edges each pass through neq2 - [c,0,1] - neq2."""
    c, t = _q(c), _q(t)
    sigs = {"f": sig(t, 1, 0, 0, 0), "ne": sig(0, 1, 0), "w": sig(c, 0, 1)}
    verts = [(v, "f") for v in range(4)]
    edges = []
    nxt = [0] * 4
    for u, v in itertools.combinations(range(4), 2):
        a, w, b = f"n{u}{v}a", f"w{u}{v}", f"n{u}{v}b"
        verts += [(a, "ne"), (w, "w"), (b, "ne")]
        edges += [((u, nxt[u]), (a, 0)), ((a, 1), (w, 0)), ((w, 1), (b, 0)), ((b, 1), (v, nxt[v]))]
        nxt[u] += 1
        nxt[v] += 1
    grid = SigGrid(sigs, verts, edges, [(v, 3) for v in range(4)])
    return fgate_signature(grid).symmetric


def decorated_tetrahedron_closed_form(c, t) -> SymSig:
    c, t = _q(c), _q(t)
    return sig(3 * c**2 + 6 * c * t**2 + t**4, 3 * c * t + t**3, c + t**2, t, 1)


def _path_gate(binaries: Sequence[SymSig], separator: SymSig | None) -> SymSig:
    """Binary gate from a path of binary signatures, optional separator between them."""
    sigs: dict = {}
    verts, edges = [], []
    prev = None
    names = []
    for i, b in enumerate(binaries):
        if i and separator is not None:
            names.append(("sep", separator))
        names.append((f"b{i}", b))
    for i, (name, s) in enumerate(names):
        sigs[name] = s
        verts.append((i, name))
        if prev is not None:
            edges.append(((prev, 1), (i, 0)))
        prev = i
    grid = SigGrid(sigs, verts, edges, [(0, 0), (len(names) - 1, 1)])
    return fgate_signature(grid).symmetric


def binary_chain(v, a, b) -> SymSig:
    """[v,1,0] - neq2 - [a,b,1] - neq2 - [v,1,0]."""
    v, a, b = _q(v), _q(a), _q(b)
    return _path_gate([sig(v, 1, 0), sig(a, b, 1), sig(v, 1, 0)], sig(0, 1, 0))


def unary_chain(x, s: int) -> SymSig:
    """s copies of [x,1,0] joined through neq2."""
    if s < 1:
        raise ValueError("s >= 1")
    x = _q(x)
    return _path_gate([sig(x, 1, 0)] * s, sig(0, 1, 0))


def identity4():
    return identity(4)
