"""Symmetric signatures and their recurrence/vanishing calculus.

Signs are the integers +1 and -1; sigma = +1 refers to the unary [1, i].
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import factorint, totient

from .cyclo import I, ONE, ZERO, Cyclo, is_root_of_unity, sqrt_rational, zeta
from .linalg import nullspace, rank

Unary = tuple  # (u0, u1) of Cyclo

__all__ = [
    "SymSig",
    "sig",
    "tensor_power",
    "is_degenerate",
    "Degenerate",
    "sym",
    "rd",
    "vd",
    "vanishing_type",
    "self_loop",
    "connect",
    "decompose2",
    "TwoPower",
    "DoubleRoot",
    "DegenerateForm",
    "NoSecondOrder",
    "reconstruct",
    "sqrt_cyclo",
    "root_cyclo",
    "dot",
]


def _c(x) -> Cyclo:
    return x if isinstance(x, Cyclo) else Cyclo(x)


class SymSig:
    """Symmetric signature [f_0, ..., f_n]; f_w is the value on weight-w inputs."""

    __slots__ = ("entries", "_hash")

    def __init__(self, entries: Iterable):
        ent = tuple(_c(x) for x in entries)
        if not ent:
            raise ValueError("a signature needs at least one entry")
        self.entries = ent
        self._hash = None

    @property
    def arity(self) -> int:
        return len(self.entries) - 1

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymSig):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __repr__(self) -> str:
        return "[" + ", ".join(str(x) for x in self.entries) + "]"

    def is_zero(self) -> bool:
        return not any(self.entries)

    def scale(self, c) -> SymSig:
        c = _c(c)
        return SymSig(c * x for x in self.entries)

    def __add__(self, other: SymSig) -> SymSig:
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return SymSig(a + b for a, b in zip(self, other))

    def __sub__(self, other: SymSig) -> SymSig:
        return self + other.scale(-1)

    def normalized(self) -> SymSig:
        """Scale so the first nonzero entry is 1 (zero signature unchanged)."""
        lead = next((x for x in self.entries if x), None)
        if lead is None or lead == ONE:
            return self
        inv = ONE / lead
        return SymSig(x * inv for x in self.entries)

    def proj_eq(self, other: SymSig) -> bool:
        return self.arity == other.arity and self.normalized() == other.normalized()

    def reversed(self) -> SymSig:
        return SymSig(reversed(self.entries))

    def value(self, bits: Sequence[int]) -> Cyclo:
        return self.entries[sum(bits)]


def sig(*entries) -> SymSig:
    if len(entries) == 1 and not isinstance(entries[0], (int, Cyclo)):
        entries = tuple(entries[0])
    return SymSig(entries)


def dot(u: Unary, v: Unary) -> Cyclo:
    return u[0] * v[0] + u[1] * v[1]


def tensor_power(u: Unary, n: int) -> SymSig:
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    a, b = _c(u[0]), _c(u[1])
    return SymSig((a ** (n - w)) * (b**w) for w in range(n + 1))


@dataclass(frozen=True)
class Degenerate:
    """f = scale * direction^{(x) n}; direction is [1, r] or [0, 1]."""

    direction: Unary
    scale: Cyclo

    def unary(self) -> Unary | None:
        """An exact u with u^{(x) n} = f when the n-th root is available (arity-1 case)."""
        return self.direction


def is_degenerate(f: SymSig) -> Degenerate | None:
    """Return the degenerate form of f, or None (also None for the zero signature)."""
    n = f.arity
    if f.is_zero():
        return None
    if n == 0:
        return Degenerate((ONE, ZERO), f[0])
    f0 = f[0]
    if not f0:
        if any(f[k] for k in range(n)):
            return None
        return Degenerate((ZERO, ONE), f[n])
    r = f[1] / f0
    cur = f0
    for k in range(1, n + 1):
        cur = cur * r
        if cur != f[k]:
            return None
    return Degenerate((ONE, r), f0)


def sym(n: int, t: int, v: Unary, vs: Sequence[Unary]) -> SymSig:
    """Sum over all permutations of the tensor product of t copies of v and vs."""
    if not 1 <= t <= n:
        raise ValueError("need 1 <= t <= n")
    if len(vs) != n - t:
        raise ValueError(f"expected {n - t} extra unaries, got {len(vs)}")
    # weight-w entry = w!(n-w)! * [x^w] prod(a_i + b_i x)
    poly = [ONE]
    for a, b in [v] * t + list(vs):
        a, b = _c(a), _c(b)
        nxt = [ZERO] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k] = nxt[k] + c * a
            nxt[k + 1] = nxt[k + 1] + c * b
        poly = nxt
    return SymSig(poly[w] * (math.factorial(w) * math.factorial(n - w)) for w in range(n + 1))


def _scaled(f: SymSig, sigma: int) -> list[Cyclo]:
    # g_k = (sigma i)^(-k) f_k
    step = -I if sigma > 0 else I
    out, cur = [], ONE
    for x in f.entries:
        out.append(x * cur)
        cur = cur * step
    return out


def rd(f: SymSig, sigma: int) -> int:
    """Recurrence degree: the degree of p with f_k = (sigma i)^k p(k); -1 for zero."""
    g = _scaled(f, sigma)
    best = -1
    t = 0
    while g:
        if any(g):
            best = t
        g = [b - a for a, b in zip(g, g[1:])]
        t += 1
    return best


def vd(f: SymSig, sigma: int) -> int:
    if f.is_zero():
        return f.arity + 1
    return f.arity - rd(f, sigma)


def vanishing_type(f: SymSig) -> frozenset:
    """Signs sigma with 2 vd(f, sigma) > arity(f)."""
    return frozenset(s for s in (1, -1) if 2 * vd(f, s) > f.arity)


def self_loop(f: SymSig) -> SymSig:
    n = f.arity
    if n < 2:
        raise ValueError("self loop needs arity >= 2")
    return SymSig(f[j] + f[j + 2] for j in range(n - 1))


def connect(f: SymSig, g: SymSig) -> SymSig:
    """Attach every edge of g to f: f'_k = sum_j C(m, j) f_{k+j} g_j."""
    n, m = f.arity, g.arity
    if n < m:
        raise ValueError("connect(f, g) needs arity(f) >= arity(g)")
    coeff = [g[j] * math.comb(m, j) for j in range(m + 1)]
    out = []
    for k in range(n - m + 1):
        acc = ZERO
        for j in range(m + 1):
            if coeff[j] and f[k + j]:
                acc = acc + coeff[j] * f[k + j]
        out.append(acc)
    return SymSig(out)


# --- square roots inside cyclotomic fields ---------------------------------

def sqrt_cyclo(z: Cyclo) -> Cyclo | None:
    """A square root of z in some cyclotomic field, or None if none is found.

    Values of the form (root of unity) * (rational) are handled in closed
    form. Anything else is searched for in Q(zeta_L) for L = lcm(N, m),
    m in (4, 8, 12, 24), N the conductor of z, skipping fields of degree
    above 16. That covers the discriminant of any quadratic whose roots lie
    in the field of its coefficients.
    """
    if not z:
        return ZERO
    if z.is_rational():
        return _sqrt_rational_bounded(z.rational())
    rho = z / z.conj()
    m = is_root_of_unity(rho)
    if m is not None:
        k = next(k for k in range(m) if zeta(m, k) == rho)
        t = z / zeta(2 * m, k)
        if t.is_rational():
            r = _sqrt_rational_bounded(t.rational())
            return None if r is None else zeta(4 * m, k) * r
    tried = set()
    for m in (4, 8, 12, 24):
        L = math.lcm(z.conductor, m)
        if L in tried or _totient(L) > 16:
            continue
        tried.add(L)
        w = _sqrt_in_field(z, L)
        if w is not None:
            return w
    return None


def _totient(n: int) -> int:
    return int(totient(n))


# sqrt of a rational with a large squarefree part lives in a huge field;
# past this degree the closed form is refused and the caller sees None
SQRT_DEGREE_LIMIT = 128


def _sqrt_rational_bounded(q: Fraction) -> Cyclo | None:
    num, den = q.numerator, q.denominator
    d = 1
    for p, e in factorint(abs(num) * den).items():
        if e % 2:
            d *= int(p)
    sd = -d if num < 0 else d
    cond = d if sd % 4 == 1 else 4 * d
    if _totient(cond) > SQRT_DEGREE_LIMIT:
        return None
    return sqrt_rational(q)


def root_cyclo(z: Cyclo, g: int) -> Cyclo | None:
    """Some mu with mu^g = z in a cyclotomic field, or None if none is found."""
    if g == 1 or not z:
        return z
    if g % 2 == 0:
        s = sqrt_cyclo(z)
        if s is None:
            return None
        return root_cyclo(s, g // 2) or root_cyclo(-s, g // 2)
    m = is_root_of_unity(z)
    if m is not None:
        k = next(k for k in range(m) if zeta(m, k) == z)
        return zeta(g * m, k)
    if z.is_rational():
        q = z.rational()
        num, den = _int_root(abs(q.numerator), g), _int_root(q.denominator, g)
        if num is not None and den is not None:
            return Cyclo(Fraction(num if q > 0 else -num, den))
    for m in (1, 4, 3 * g):
        L = math.lcm(z.conductor, m)
        if L >= 3 and _totient(L) <= 8:
            w = _root_in_field(z, g, L)
            if w is not None:
                return w
    return None


def _int_root(x: int, g: int) -> int | None:
    r = round(x ** (1.0 / g))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**g == x:
            return c
    return None


def _root_in_field(z: Cyclo, g: int, L: int) -> Cyclo | None:
    # Scale to an algebraic integer so the root has integer power-basis
    # coordinates, then try every choice of g-th root across conjugate pairs
    # of complex embeddings and keep one that comes back exactly.
    import mpmath

    N = z.conductor
    den = math.lcm(*(c.denominator for c in z.coeffs.values()))
    scale = den ** (g - 1)
    target = z * (den * scale)
    coeffs = {j: int(c * den * scale) for j, c in z.coeffs.items()}
    if not _power_residue_everywhere(coeffs, N, L, g):
        return None
    units = [k for k in range(1, L) if math.gcd(k, L) == 1]
    d = len(units)
    size = sum(abs(c) for c in coeffs.values())
    ctx = mpmath.mp.clone()
    ctx.dps = 30 + 2 * len(str(size))
    two_pi_i = 2j * ctx.pi
    vals = {}
    for k in units:
        v = ctx.fsum(c * ctx.exp(two_pi_i * j * k / N) for j, c in coeffs.items())
        vals[k] = ctx.root(v, g)
    Vinv = ctx.inverse(ctx.matrix([[ctx.exp(two_pi_i * j * k / L) for j in range(d)] for k in units]))
    upper = [k for k in units if k <= (L - k) % L]
    unit_roots = [ctx.exp(two_pi_i * r / g) for r in range(g)]
    # +-w are both roots when g is even, so the first choice can be pinned
    first = [0] if g % 2 == 0 else range(g)
    for r0 in first:
        for rest in itertools.product(range(g), repeat=len(upper) - 1):
            root = {}
            for k, r in zip(upper, (r0, *rest)):
                root[k] = vals[k] * unit_roots[r]
                root[(L - k) % L] = ctx.conj(root[k])
            if any(k not in root for k in units):
                continue
            sol = Vinv * ctx.matrix([root[k] for k in units])
            ints = [int(ctx.nint(ctx.re(x))) for x in sol]
            if any(abs(x - a) > 1e-6 for x, a in zip(sol, ints)):
                continue
            w = ZERO
            for j, a in enumerate(ints):
                if a:
                    w = w + zeta(L, j) * a
            if w**g == target:
                return w / den
    return None


def _power_residue_everywhere(coeffs: dict, N: int, L: int, g: int, primes: int = 6) -> bool:
    """Necessary condition for an integral z to be a g-th power in Q(zeta_L).

    For p = 1 mod L every map zeta_L -> r (r of order L mod p) is a ring map
    to F_p, so a g-th power must land on a g-th power residue.
    """
    p, found = 1, 0
    while found < primes:
        p += L
        if not _is_prime(p):
            continue
        found += 1
        e = (p - 1) // math.gcd(g, p - 1)
        gen = next(a for a in range(2, p) if all(pow(a, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)))
        r = pow(gen, (p - 1) // L, p)
        for k in range(1, L):
            if math.gcd(k, L) != 1:
                continue
            rk = pow(r, k * (L // N), p)
            x = sum(c * pow(rk, j, p) for j, c in coeffs.items()) % p
            if x and pow(x, e, p) != 1:
                return False
    return True


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % q for q in range(2, math.isqrt(n) + 1))


def _prime_factors(n: int) -> list:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    return out + ([n] if n > 1 else [])


def _sqrt_in_field(z: Cyclo, L: int) -> Cyclo | None:
    return _root_in_field(z, 2, L)


# --- second-order recurrence decomposition ---------------------------------

@dataclass(frozen=True)
class TwoPower:
    a: Cyclo
    v1: Unary
    b: Cyclo
    v2: Unary
    kernel: tuple


@dataclass(frozen=True)
class DoubleRoot:
    """f = d v^{(x)n} + c * (sum of the n placements of one w among v's).

    With v = [1, x] and w = [0, 1] this reads f_k = c k x^{k-1} + d x^k.
    For the root at infinity v = [0, 1], w = [1, 0].
    """

    c: Cyclo
    d: Cyclo
    root: Unary
    kernel: tuple


@dataclass(frozen=True)
class DegenerateForm:
    u: Degenerate | None  # None for the zero signature


@dataclass(frozen=True)
class NoSecondOrder:
    reason: str = "trivial kernel"


@dataclass(frozen=True)
class IrrationalRoots:
    """Distinct roots exist but need a square root we cannot realise cyclotomically."""

    kernel: tuple
    disc: Cyclo


@dataclass(frozen=True)
class Ambiguous:
    """Binary input: the window matrix has a two-dimensional kernel."""


def _power_entries(v: Unary, n: int) -> list[Cyclo]:
    return list(tensor_power(v, n).entries)


def reconstruct(dec, n: int) -> SymSig:
    if isinstance(dec, TwoPower):
        p1, p2 = _power_entries(dec.v1, n), _power_entries(dec.v2, n)
        return SymSig(dec.a * x + dec.b * y for x, y in zip(p1, p2))
    if isinstance(dec, DoubleRoot):
        y, x = dec.root
        out = []
        for k in range(n + 1):
            base = dec.d * (y ** (n - k)) * (x**k)
            if y:  # w = [0, 1]
                deriv = (y ** (n - k)) * (x ** (k - 1)) * k if k >= 1 else ZERO
            else:  # w = [1, 0]
                deriv = (x**k) * (n - k) if k == n - 1 else ZERO
            out.append(base + dec.c * deriv)
        return SymSig(out)
    if isinstance(dec, DegenerateForm):
        if dec.u is None:
            return SymSig([ZERO] * (n + 1))
        return tensor_power(dec.u.direction, n).scale(dec.u.scale)
    raise ValueError(f"cannot reconstruct {type(dec).__name__}")


def decompose2(f: SymSig):
    """Classify f by the kernel of its stacked windows (f_k, f_{k+1}, f_{k+2})."""
    n = f.arity
    if f.is_zero():
        return DegenerateForm(None)
    deg = is_degenerate(f)
    if deg is not None:
        return DegenerateForm(deg)
    if n < 2:
        return NoSecondOrder("arity below 2")
    windows = [[f[k], f[k + 1], f[k + 2]] for k in range(n - 1)]
    if rank(windows) <= 1:
        return Ambiguous() if n == 2 else NoSecondOrder("rank-one windows, not degenerate")
    ker = nullspace(windows)
    if not ker:
        return NoSecondOrder()
    p0, p1, p2 = ker[0]
    kern = (p0, p1, p2)
    # roots [y, x] of p0 y^2 + p1 y x + p2 x^2
    if not p2:
        if not p1:
            dec = DoubleRoot(f[n - 1], f[n], (ZERO, ONE), kern)
        else:
            v1 = (ONE, -p0 / p1)
            v2 = (ZERO, ONE)
            a = f[0]
            b = f[n] - a * v1[1] ** n
            dec = TwoPower(a, v1, b, v2, kern)
    else:
        disc = p1 * p1 - 4 * p0 * p2
        if not disc:
            x = -p1 / (2 * p2)
            d = f[0]
            c = f[1] - d * x
            dec = DoubleRoot(c, d, (ONE, x), kern)
        else:
            s = sqrt_cyclo(disc)
            if s is None:
                return IrrationalRoots(kern, disc)
            x1 = (-p1 + s) / (2 * p2)
            x2 = (-p1 - s) / (2 * p2)
            a = (f[1] - x2 * f[0]) / (x1 - x2)
            b = f[0] - a
            dec = TwoPower(a, (ONE, x1), b, (ONE, x2), kern)
    if reconstruct(dec, n) != f:
        raise ArithmeticError(f"decomposition of {f} failed to reconstruct")
    return dec
