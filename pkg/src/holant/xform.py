"""2x2 holographic transformations acting on symmetric signatures."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .cyclo import I, ONE, ZERO, Cyclo, sqrt_rational, zeta
from .sigalg import SymSig

__all__ = [
    "Mat2",
    "named",
    "apply_contra",
    "apply_co",
    "is_orthogonal",
    "in_stab_A",
    "in_stab_P",
    "stab_A_elements",
    "SingularMatrixError",
]


class SingularMatrixError(ValueError):
    pass


def _c(x) -> Cyclo:
    return x if isinstance(x, Cyclo) else Cyclo(x)


class Mat2:
    """[[t00, t01], [t10, t11]] with Cyclo entries."""

    __slots__ = ("t00", "t01", "t10", "t11")

    def __init__(self, t00, t01, t10, t11):
        self.t00, self.t01, self.t10, self.t11 = _c(t00), _c(t01), _c(t10), _c(t11)

    @classmethod
    def diag(cls, a, b) -> Mat2:
        return cls(a, 0, 0, b)

    @property
    def rows(self):
        return ((self.t00, self.t01), (self.t10, self.t11))

    def entries(self):
        return (self.t00, self.t01, self.t10, self.t11)

    def det(self) -> Cyclo:
        return self.t00 * self.t11 - self.t01 * self.t10

    def is_singular(self) -> bool:
        return not self.det()

    def inverse(self) -> Mat2:
        d = self.det()
        if not d:
            raise SingularMatrixError("singular 2x2 matrix")
        inv = ONE / d
        return Mat2(self.t11 * inv, -self.t01 * inv, -self.t10 * inv, self.t00 * inv)

    def T(self) -> Mat2:
        return Mat2(self.t00, self.t10, self.t01, self.t11)

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.t00 * other.t00 + self.t01 * other.t10,
            self.t00 * other.t01 + self.t01 * other.t11,
            self.t10 * other.t00 + self.t11 * other.t10,
            self.t10 * other.t01 + self.t11 * other.t11,
        )

    def scale(self, c) -> Mat2:
        c = _c(c)
        return Mat2(*(c * x for x in self.entries()))

    def apply_vec(self, v):
        return (self.t00 * v[0] + self.t01 * v[1], self.t10 * v[0] + self.t11 * v[1])

    def normalized(self) -> Mat2:
        lead = next(x for x in self.entries() if x)
        if lead == ONE:
            return self
        inv = ONE / lead
        return Mat2(*(x * inv for x in self.entries()))

    def proj_eq(self, other: Mat2) -> bool:
        return self.normalized() == other.normalized()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash(self.entries())

    def __repr__(self) -> str:
        e = [str(x) for x in self.entries()]
        return f"[[{e[0]}, {e[1]}], [{e[2]}, {e[3]}]]"


_INV_SQRT2 = None


def _inv_sqrt2() -> Cyclo:
    global _INV_SQRT2
    if _INV_SQRT2 is None:
        _INV_SQRT2 = ONE / sqrt_rational(2)
    return _INV_SQRT2


def named(which: str, *args) -> Mat2:
    """Named constants: Z, Zinv, H2, D, X, I, alpha_diag(k), omega_diag(N, k)."""
    s = _inv_sqrt2()
    if which == "Z":
        return Mat2(s, s, s * I, -s * I)
    if which == "Zinv":
        return Mat2(s, -s * I, s, s * I)
    if which == "H2":
        return Mat2(s, s, s, -s)
    if which == "D":
        return Mat2.diag(1, I)
    if which == "X":
        return Mat2(0, 1, 1, 0)
    if which == "I":
        return Mat2.diag(1, 1)
    if which == "alpha_diag":
        (k,) = args
        return Mat2.diag(1, zeta(8, k))
    if which == "omega_diag":
        n, k = args
        return Mat2.diag(1, zeta(n, k))
    raise KeyError(f"unknown matrix name {which!r}")


def _poly_mul(p, q):
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if not x:
            continue
        for j, y in enumerate(q):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def apply_contra(T: Mat2, f: SymSig) -> SymSig:
    """T^{(x)n} f for a symmetric f.

    With P_f(a, b) = sum_k C(n, k) f_k a^(n-k) b^k, pairing against v^{(x)n}
    gives P_{Tf}(a, b) = P_f(t00 a + t10 b, t01 a + t11 b); the substitution
    is expanded by Horner's rule in the two linear forms.
    """
    n = f.arity
    if n == 0:
        return f
    l1, l2 = [T.t00, T.t10], [T.t01, T.t11]
    acc = [f[0]]
    pw = [ONE]
    for k in range(1, n + 1):
        acc = _poly_mul(acc, l1)
        pw = _poly_mul(pw, l2)
        if f[k]:
            ck = f[k] * math.comb(n, k)
            acc = [x + ck * y if y else x for x, y in zip(acc, pw)]
    return SymSig(x * Fraction(1, math.comb(n, j)) if x else x for j, x in enumerate(acc))


def apply_co(f: SymSig, T: Mat2) -> SymSig:
    """Row-vector action f T^{(x)n}."""
    return apply_contra(T.T(), f)


def is_orthogonal(T: Mat2) -> Cyclo | None:
    """lambda when T T^t = lambda I with lambda != 0, else None."""
    a = T.t00 * T.t00 + T.t01 * T.t01
    b = T.t10 * T.t10 + T.t11 * T.t11
    off = T.t00 * T.t10 + T.t01 * T.t11
    if off or a != b or not a:
        return None
    return a


@lru_cache(maxsize=1)
def stab_A_elements() -> tuple[Mat2, ...]:
    """<D, H2> modulo scalars, each element normalized on its first nonzero entry."""
    gens = [named("D").normalized(), named("H2").normalized()]
    seen = {named("I"): None}
    frontier = [named("I")]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = (m @ g).normalized()
                if p not in seen:
                    seen[p] = None
                    nxt.append(p)
        frontier = nxt
    return tuple(seen)


def in_stab_A(T: Mat2) -> bool:
    if T.is_singular():
        raise SingularMatrixError("stabilizer membership needs a nonsingular matrix")
    return T.normalized() in set(stab_A_elements())


def in_stab_P(T: Mat2) -> bool:
    if T.is_singular():
        raise SingularMatrixError("stabilizer membership needs a nonsingular matrix")
    return (not T.t01 and not T.t10) or (not T.t00 and not T.t11)
