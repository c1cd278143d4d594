"""Membership oracles for the tractable classes and the dichotomy classifier.

Every tractable verdict carries something that can be re-checked: a
transformation for the affine/product cases, a sign for the vanishing
cases. Hard verdicts carry a chain of rule ids from ``RULES``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclo import I, ONE, ZERO, Cyclo, is_root_of_unity, sqrt_rational, zeta
from .sigalg import (
    Degenerate,
    DoubleRoot,
    IrrationalRoots,
    NoSecondOrder,
    SymSig,
    TwoPower,
    decompose2,
    is_degenerate,
    rd,
    root_cyclo,
    tensor_power,
    vanishing_type,
)
from .xform import Mat2, apply_co, apply_contra

__all__ = [
    "AffineRep",
    "ProductRep",
    "Membership",
    "Witness",
    "Verdict",
    "RULES",
    "is_affine",
    "is_product",
    "class_membership",
    "classify_single",
    "classify_set",
    "binary_in_R2",
    "verify_verdict",
]

EQ2 = SymSig([1, 0, 1])

RULES = {
    "arity<=2": "no non-degenerate signature of arity 3 or more",
    "degenerate": "every signature is a tensor power of a unary",
    "dic:single": "a single non-degenerate signature outside P1, P2, A3 and the vanishing classes is hard",
    "single:no-second-order": "no second-order recurrence; the compressed signature matrix route applies",
    "arity4:nonsingular-compressed": "arity-4 signature with a nonsingular compressed matrix",
    "single:double-root": "recurrence with a double root other than [1, i] or [1, -i]",
    "single:two-power": "sum of two tensor powers failing every P1/P2/A3 test",
    "dic:p1": "a P1 pivot forces the set to be A- or P-transformable",
    "dic:p2": "a P2 pivot forces the set to be A- or P-transformable",
    "dic:a3": "an A3 pivot forces the set to be A-transformable",
    "dic:pmvan": "vanishing signatures of opposite sign cannot mix",
    "van:deg": "vanishing pivot of recurrence degree >= 2 next to a unary not parallel to [1, sigma i]",
    "van:bin": "vanishing pivot next to a non-degenerate binary outside R2 for that sign",
    "van:mixed": "a vanishing signature next to a non-vanishing A/P-transformable one",
    "pivot:irrational": "pivot roots are not cyclotomic; set-level search not carried out",
    "named:eulerian-orientation": "projectively [3,0,1,0,3]: Eulerian orientations of 4-regular graphs",
}

CASES = (
    "Arity<=2",
    "A-transformable",
    "P-transformable",
    "VanishingPlusBinary",
    "R2sigma-Fibonacci",
    "Vanishing",
    "Degenerate",
)


# --- affine and product membership ------------------------------------------

@dataclass(frozen=True)
class AffineRep:
    """value(x) = scale * [x satisfies equations] * i^(sum lin_j x_j + 2 sum_{(a,b) in cross} x_a x_b).

    The support is kept as parity equations (a set of indices and a right-hand
    bit), which is the same data as a basis plus offset.
    """

    arity: int
    equations: tuple  # ((frozenset of indices, rhs), ...)
    lin: tuple
    cross: frozenset
    scale: Cyclo
    family: str
    r: int = 0

    def evaluate(self, bits: Sequence[int]) -> Cyclo:
        for idx, rhs in self.equations:
            if sum(bits[j] for j in idx) % 2 != rhs:
                return ZERO
        e = sum(l * b for l, b in zip(self.lin, bits))
        e += 2 * sum(bits[a] * bits[b] for a, b in self.cross)
        return self.scale * I ** (e % 4)


def _i_exponent(z: Cyclo) -> int | None:
    for e in range(4):
        if z == I**e:
            return e
    return None


def _rep_degenerate(n: int, deg: Degenerate) -> AffineRep | None:
    u0, u1 = deg.direction
    if not u0:
        return AffineRep(n, tuple((frozenset([j]), 1) for j in range(n)), (0,) * n, frozenset(),
                         deg.scale * u1**n, "degenerate")
    r = u1 / u0
    scale = deg.scale * u0**n
    if not r:
        return AffineRep(n, tuple((frozenset([j]), 0) for j in range(n)), (0,) * n, frozenset(),
                         scale, "degenerate")
    e = _i_exponent(r)
    if e is None:
        return None
    return AffineRep(n, (), (e,) * n, frozenset(), scale, "degenerate")


_PAIRS = {
    "F1": ((1, 0), (0, 1)),
    "F2": ((1, 1), (1, -1)),
    "F3": ((ONE, I), (ONE, -I)),
}


def _family_rep(family: str, r: int, n: int, lam: Cyclo) -> AffineRep:
    everything = frozenset(range(n))
    all_pairs = frozenset((a, b) for a in range(n) for b in range(a + 1, n))
    if family == "F1":
        eqs = tuple((frozenset([0, j]), 0) for j in range(1, n))
        return AffineRep(n, eqs, (r,) + (0,) * (n - 1), frozenset(), lam, family, r)
    # [1,1]^k + i^r [1,-1]^k evaluates to 1 + i^(r + 2|x|)
    if r == 0:
        eqs, lin, cross, scale = ((everything, 0),), [0] * n, frozenset(), lam * 2
    elif r == 2:
        eqs, lin, cross, scale = ((everything, 1),), [0] * n, frozenset(), lam * 2
    elif r == 1:
        # 1 + i(-1)^p = (1+i) i^(3p), and p = sum x - 2 sum x_a x_b mod 4
        eqs, lin, cross, scale = (), [3] * n, all_pairs, lam * (1 + I)
    else:
        eqs, lin, cross, scale = (), [1] * n, all_pairs, lam * (1 - I)
    if family == "F3":
        lin = [(l + 1) % 4 for l in lin]  # extra factor i^|x|
    return AffineRep(n, eqs, tuple(lin), cross, scale, family, r)


def is_affine(f: SymSig) -> AffineRep | None:
    n = f.arity
    if f.is_zero():
        return AffineRep(n, (), (0,) * n, frozenset(), ZERO, "zero")
    deg = is_degenerate(f)
    if deg is not None:
        return _rep_degenerate(n, deg)
    for family, (v1, v2) in _PAIRS.items():
        p1, p2 = tensor_power(v1, n), tensor_power(v2, n)
        for r in range(4):
            cand = p1 + p2.scale(I**r)
            k = next(j for j, x in enumerate(cand) if x)
            lam = f[k] / cand[k]
            if cand.scale(lam) == f:
                return _family_rep(family, r, n, lam)
    return None


@dataclass(frozen=True)
class ProductRep:
    kind: str  # "zero", "degenerate", "disequality" or "equality"
    a: Cyclo = ZERO
    b: Cyclo = ZERO
    degenerate: Degenerate | None = None


def is_product(f: SymSig) -> ProductRep | None:
    n = f.arity
    if f.is_zero():
        return ProductRep("zero")
    deg = is_degenerate(f)
    if deg is not None:
        return ProductRep("degenerate", degenerate=deg)
    if n == 2 and not f[0] and not f[2]:
        return ProductRep("disequality", a=f[1])
    if n >= 2 and all(not f[k] for k in range(1, n)):
        return ProductRep("equality", a=f[0], b=f[n])
    return None


# --- quadratic extension for roots outside the cyclotomic realm ------------

class _Quad:
    """u + w*s with s^2 = disc, exact over Cyclo."""

    __slots__ = ("u", "w", "disc")

    def __init__(self, u, w, disc):
        self.u, self.w, self.disc = u, w, disc

    def _lift(self, o):
        return o if isinstance(o, _Quad) else _Quad(o, ZERO, self.disc)

    def __add__(self, o):
        o = self._lift(o)
        return _Quad(self.u + o.u, self.w + o.w, self.disc)

    __radd__ = __add__

    def __neg__(self):
        return _Quad(-self.u, -self.w, self.disc)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __mul__(self, o):
        o = self._lift(o)
        return _Quad(self.u * o.u + self.w * o.w * self.disc, self.u * o.w + self.w * o.u, self.disc)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.u * self.u - self.w * self.w * self.disc
        return _Quad(self.u / norm, -self.w / norm, self.disc)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __pow__(self, k: int):
        out = _Quad(ONE, ZERO, self.disc)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_one(self) -> bool:
        return self.u == ONE and not self.w

    def is_zero(self) -> bool:
        return not self.u and not self.w


# --- class membership --------------------------------------------------------

@dataclass(frozen=True)
class Membership:
    classes: frozenset
    beta2: object = None  # Cyclo, or a quadratic-extension value for irrational roots
    decomposition: object = None


def _two_power_data(f: SymSig, dec):
    """(a, v1, b, v2) with entries Cyclo or _Quad."""
    if isinstance(dec, TwoPower):
        return dec.a, dec.v1, dec.b, dec.v2
    p0, p1, p2 = dec.kernel
    s = _Quad(ZERO, ONE, dec.disc)
    x1 = (s - p1) / (p2 * 2)
    x2 = (-s - p1) / (p2 * 2)
    a = (x2 * f[0] - f[1]) / (x2 - x1)
    b = _Quad(f[0], ZERO, dec.disc) - a
    return a, (ONE, x1), b, (ONE, x2)


def _is_zero(z) -> bool:
    return z.is_zero() if isinstance(z, _Quad) else not z


def _is_one(z) -> bool:
    return z.is_one() if isinstance(z, _Quad) else z == ONE


def class_membership(f: SymSig) -> Membership:
    """Which of P1, P2 (= A2), A1, A3 contain f, decided by orthogonal invariants."""
    n = f.arity
    if n < 3:
        raise ValueError("class_membership needs arity >= 3")
    if f.is_zero() or is_degenerate(f) is not None:
        raise ValueError("class_membership needs a non-degenerate signature")
    dec = decompose2(f)
    if not isinstance(dec, (TwoPower, IrrationalRoots)):
        return Membership(frozenset(), None, dec)
    a, v1, b, v2 = _two_power_data(f, dec)
    d11 = v1[0] * v1[0] + v1[1] * v1[1]
    d22 = v2[0] * v2[0] + v2[1] * v2[1]
    d12 = v1[0] * v2[0] + v1[1] * v2[1]
    out = set()
    if _is_zero(d11) and _is_zero(d22):
        out.add("P2")
        return Membership(frozenset(out), None, dec)
    if _is_zero(d11) or _is_zero(d22):
        return Membership(frozenset(), None, dec)
    beta2 = (b * b * d22**n) / (a * a * d11**n)
    sq = beta2 * beta2
    if _is_zero(d12):
        out.add("P1")
        if _is_one(sq if n % 2 == 0 else sq * sq):
            out.add("A1")
    if _is_zero(d12 * d12 + d11 * d22) and _is_one(sq):
        out.add("A3")
    return Membership(frozenset(out), beta2, dec)


def binary_in_R2(g: SymSig, sigma: int) -> bool:
    if g.arity not in (1, 2):
        raise ValueError("binary_in_R2 takes a unary or binary signature")
    return rd(g, sigma) <= 1


# --- verdicts ----------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """Signatures are mapped by T^-1 and the binary equality by T (row side).

    When the diagonal scaling mu is not cyclotomic, T is None and the
    witness is the basis V together with the condition mu^power = value.
    """

    target: str  # "A" or "P"
    T: Mat2 | None
    V: Mat2
    mu_power: tuple | None = None
    tags: tuple = ()


@dataclass(frozen=True)
class Verdict:
    tractable: bool
    case: str | None = None
    witness: Witness | None = None
    sigma: int | None = None
    chain: tuple = ()  # ((rule id, signature or None), ...)
    confidence: str = "certified"
    tags: tuple = field(default=())

    @property
    def outcome(self) -> str:
        return "Tractable" if self.tractable else "Hard"


def _hard(chain, confidence="proof-following") -> Verdict:
    return Verdict(False, chain=tuple(chain), confidence=confidence)


_EO = SymSig([3, 0, 1, 0, 3])


def _single_hard_chain(f: SymSig, dec) -> list:
    chain = [("dic:single", f)]
    if isinstance(dec, NoSecondOrder):
        chain.append(("single:no-second-order", f))
        if f.arity == 4:
            from .grid import compressed
            from .linalg import det

            if det(compressed(f)):
                chain.append(("arity4:nonsingular-compressed", f))
    elif isinstance(dec, DoubleRoot):
        chain.append(("single:double-root", f))
    else:
        chain.append(("single:two-power", f))
    if f.proj_eq(_EO):
        chain.append(("named:eulerian-orientation", f))
    return chain


def classify_single(f: SymSig) -> Verdict:
    n = f.arity
    if f.is_zero() or is_degenerate(f) is not None:
        return Verdict(True, "Degenerate")
    if n <= 2:
        return Verdict(True, "Arity<=2")
    vt = vanishing_type(f)
    if vt:
        return Verdict(True, "Vanishing", sigma=next(iter(vt)))
    mem = class_membership(f)
    if not mem.classes:
        return _hard(_single_hard_chain(f, mem.decomposition), confidence="certified")
    found = _transform_search(f, mem.decomposition, [f])
    if found is None:
        # membership says tractable but roots are not cyclotomic
        case = "A-transformable" if mem.classes & {"A1", "P2", "A3"} else "P-transformable"
        return Verdict(True, case, confidence="proof-following")
    case, wit = found
    return Verdict(True, case, witness=wit, confidence="certified" if wit.T is not None else "proof-following")


# --- set-level A/P transformability -----------------------------------------

def _egcd(a: int, b: int):
    if b == 0:
        return a, 1, 0
    g, s, t = _egcd(b, a % b)
    return g, t, s - (a // b) * t


def _combine(c1, c2):
    """Merge mu^e1 = w1 and mu^e2 = w2 into mu^g = w, or None when inconsistent."""
    (e1, w1), (e2, w2) = c1, c2
    g, s, t = _egcd(e1, e2)
    w = (w1**s) * (w2**t)
    if w ** (e1 // g) != w1 or w ** (e2 // g) != w2:
        return None
    return g, w


def _unary_constraint(u0: Cyclo, u1: Cyclo):
    """Scaled unary [u0, nu u1] lies in the affine list: True, None (impossible) or (e, w)."""
    if not u0 or not u1:
        return True
    return 4, (u0 / u1) ** 4


def _binary_constraint(h: SymSig):
    """Constraint on nu for [h0, nu h1, nu^2 h2] to be affine."""
    h0, h1, h2 = h.entries
    if h.is_zero():
        return True
    deg = is_degenerate(h)
    if deg is not None:
        return _unary_constraint(*deg.direction)
    if not h1:
        return 8, (h0 / h2) ** 4
    if not h0 and not h2:
        return True
    if not h0 or not h2:
        return None
    if h1 * h1 != -(h0 * h2):
        return None
    return 4, (h0 / h2) ** 2


def _high_constraint(g: SymSig):
    """Constraint on mu for diag(1, mu) g to land in F1, F2 or F3 (g non-degenerate, arity >= 3)."""
    m = g.arity
    if all(not g[k] for k in range(1, m)):
        return 4 * m, (g[0] / g[m]) ** 4
    dec = decompose2(g)
    if not isinstance(dec, (TwoPower, IrrationalRoots)):
        return None
    p0, p1, p2 = dec.kernel
    # roots +-x need p1 = 0; x^2 = -p0/p2
    if p1 or not p0 or not p2:
        return None
    x2 = -p0 / p2
    f0, f1 = g[0], g[1]
    # coefficient ratio must be a power of i: f1 = 0, f0 = 0, or f1^2 = -x^2 f0^2
    if f0 and f1 and f1 * f1 != -x2 * f0 * f0:
        return None
    return 4, ONE / (x2 * x2)


def _root_cyclo(w: Cyclo, g: int) -> Cyclo | None:
    """Some mu with mu^g = w inside a cyclotomic field, if we can find one."""
    m = is_root_of_unity(w)
    if m is not None:
        k = next(k for k in range(m) if zeta(m, k) == w)
        return zeta(g * m, k)
    rho = w / w.conj()
    m = is_root_of_unity(rho)
    if m is None:
        return root_cyclo(w, g)
    k = next(k for k in range(m) if zeta(m, k) == rho)
    eps = zeta(2 * m, k)
    t = w / eps
    if not t.is_rational():
        return root_cyclo(w, g)
    q = t.rational()
    unit = zeta(2 * m * g, k)
    if q < 0:
        unit = unit * zeta(2 * g, 1)
        q = -q
    r = _rational_root(q, g)
    return root_cyclo(w, g) if r is None else unit * r


def _int_root(x: int, g: int) -> int | None:
    r = round(x ** (1.0 / g))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**g == x:
            return c
    return None


def _rational_root(q: Fraction, g: int) -> Cyclo | None:
    num, den = _int_root(q.numerator, g), _int_root(q.denominator, g)
    if num is not None and den is not None:
        return Cyclo(Fraction(num, den))
    if g % 2 == 0:
        h = g // 2
        num, den = _int_root(q.numerator, h), _int_root(q.denominator, h)
        if num is not None and den is not None:
            return sqrt_rational(Fraction(num, den))
    return None


def _basis(dec) -> Mat2:
    v1, v2 = dec.v1, dec.v2
    return Mat2(v1[0], v2[0], v1[1], v2[1])


def _constraints_A(V: Mat2, Vinv: Mat2, sigs: Sequence[SymSig]):
    """All constraints mu^e = w, or (None, offender) when some signature cannot fit."""
    out = []
    # binary equality on the row side: T = V diag(1, 1/mu) gives [g11, g12/mu, g22/mu^2]
    c = _binary_constraint(apply_co(EQ2, V))
    if c is None:
        return None, EQ2
    if c is not True:
        out.append((c[0], ONE / c[1]))
    for g in sigs:
        n = g.arity
        if n == 0 or g.is_zero():
            continue
        deg = is_degenerate(g)
        if deg is not None:
            c = _unary_constraint(*Vinv.apply_vec(deg.direction))
        elif n == 1:
            c = _unary_constraint(*Vinv.apply_vec((g[0], g[1])))
        elif n == 2:
            c = _binary_constraint(apply_contra(Vinv, g))
        else:
            c = _high_constraint(apply_contra(Vinv, g))
        if c is None:
            return None, g
        if c is not True:
            out.append(c)
    return out, None


def _transform_search(pivot: SymSig, dec, sigs: Sequence[SymSig]):
    """(case, Witness), or None when no transformation exists; ("irrational", None) when undecided."""
    if not isinstance(dec, TwoPower):
        return None
    V = _basis(dec)
    Vinv = V.inverse()
    # affine target first
    cons, _ = _constraints_A(V, Vinv, sigs)
    if cons is not None:
        acc = (0, ONE)  # mu^0 = 1: no constraint yet
        for c in cons:
            acc = _combine(acc, c)
            if acc is None:
                break
        if acc is not None:
            g, w = acc
            mu = _root_cyclo(w, g) if g else ONE
            if mu is not None:
                Tinv = Mat2.diag(1, mu) @ Vinv
                T = V @ Mat2.diag(1, ONE / mu)
                tags = tuple(is_affine(apply_contra(Tinv, s)).family for s in sigs)
                return "A-transformable", Witness("A", T, V, None, tags)
            return "A-transformable", Witness("A", None, V, (g, w), ())
    # product target: diagonal scaling is free, so T = V
    if is_product(apply_co(EQ2, V)) is not None:
        images = [apply_contra(Vinv, s) for s in sigs]
        reps = [is_product(s) for s in images]
        if all(r is not None for r in reps):
            return "P-transformable", Witness("P", V, V, None, tuple(r.kind for r in reps))
    return None


# --- set classification -------------------------------------------------------

def _is_nondeg(f: SymSig) -> bool:
    return not f.is_zero() and is_degenerate(f) is None


def _pivot_rule(classes: frozenset) -> str:
    if "P2" in classes:
        return "dic:p2"
    if "P1" in classes:
        return "dic:p1"
    return "dic:a3"


def classify_set(F: Sequence[SymSig]) -> Verdict:
    F = [f for f in F if not f.is_zero()]
    if not F:
        raise ValueError("classify_set needs at least one nonzero signature")
    high = [f for f in F if f.arity >= 3 and _is_nondeg(f)]
    if not high:
        if all(not _is_nondeg(f) for f in F):
            return Verdict(True, "Degenerate")
        return Verdict(True, "Arity<=2")
    singles = {}
    for f in high:
        v = classify_single(f)
        if not v.tractable:
            return _hard(v.chain, confidence="certified")
        singles[f] = v
    vanishing = [f for f in high if singles[f].case == "Vanishing"]
    if len(vanishing) == len(high):
        return _classify_vanishing(F, high, singles)
    if vanishing:
        pivot = min((f for f in high if f not in vanishing), key=lambda f: f.arity)
        return _hard([("van:mixed", vanishing[0]), (_pivot_rule(class_membership(pivot).classes), pivot)])
    ordered = sorted(range(len(high)), key=lambda k: (high[k].arity, k))
    undecided = None
    for k in ordered:
        pivot = high[k]
        mem = class_membership(pivot)
        if not isinstance(mem.decomposition, TwoPower):
            undecided = undecided or pivot
            continue
        found = _transform_search(pivot, mem.decomposition, F)
        if found is None:
            offender = _first_offender(mem.decomposition, F)
            chain = [(_pivot_rule(mem.classes), pivot)]
            if offender is not None:
                chain.append((_pivot_rule(mem.classes), offender))
            return _hard(chain)
        case, wit = found
        return Verdict(True, case, witness=wit,
                       confidence="certified" if wit.T is not None else "proof-following")
    return _hard([("pivot:irrational", undecided)])


def _first_offender(dec, F):
    V = _basis(dec)
    Vinv = V.inverse()
    _, off = _constraints_A(V, Vinv, F)
    if off is not None:
        return off
    for s in F:
        if is_product(apply_contra(Vinv, s)) is None:
            return s
    return None


def _parallel_to(direction, sigma: int) -> bool:
    u0, u1 = direction
    return bool(u0) and u1 == u0 * (I if sigma > 0 else -I)


def _classify_vanishing(F, high, singles) -> Verdict:
    signs = {singles[f].sigma for f in high}
    if len(signs) > 1:
        plus = next(f for f in high if singles[f].sigma == 1)
        minus = next(f for f in high if singles[f].sigma == -1)
        return _hard([("dic:pmvan", plus), ("dic:pmvan", minus)], confidence="certified")
    (sigma,) = signs
    binaries = [f for f in F if f.arity == 2 and _is_nondeg(f)]
    degens = [f for f in F if not _is_nondeg(f) and f.arity >= 1]
    for b in binaries:
        if not binary_in_R2(b, sigma):
            return _hard([("van:bin", b), ("van:bin", high[0])], confidence="certified")
    bad_unary = next(
        (u for u in degens if not _parallel_to(is_degenerate(u).direction, sigma)), None
    )
    if bad_unary is None:
        case = "VanishingPlusBinary" if binaries or degens else "Vanishing"
        return Verdict(True, case, sigma=sigma)
    steep = next((f for f in high if rd(f, sigma) >= 2), None)
    if steep is None:
        return Verdict(True, "R2sigma-Fibonacci", sigma=sigma)
    return _hard([("van:deg", steep), ("van:deg", bad_unary)], confidence="certified")


# --- re-verification -----------------------------------------------------------

def verify_verdict(verdict: Verdict, F: Sequence[SymSig]) -> bool:
    """Re-check a tractable verdict against the signatures it was computed for."""
    if not verdict.tractable:
        return all(rule in RULES for rule, _ in verdict.chain)
    F = [f for f in F if not f.is_zero()]
    case = verdict.case
    if case == "Degenerate":
        return all(not _is_nondeg(f) for f in F)
    if case == "Arity<=2":
        return all(f.arity <= 2 or not _is_nondeg(f) for f in F)
    sigma = verdict.sigma
    if case in ("Vanishing", "VanishingPlusBinary"):
        for f in F:
            if sigma in vanishing_type(f):
                continue
            if f.arity == 2 and _is_nondeg(f) and binary_in_R2(f, sigma):
                continue
            return False
        return True
    if case == "R2sigma-Fibonacci":
        return all(not _is_nondeg(f) or rd(f, sigma) <= 1 for f in F)
    wit = verdict.witness
    if wit is None:
        return False
    if wit.T is None:
        cons, _ = _constraints_A(wit.V, wit.V.inverse(), F)
        if cons is None:
            return False
        acc = wit.mu_power
        for c in cons:
            acc = _combine(acc, c)
            if acc is None:
                return False
        return True
    Tinv = wit.T.inverse()
    test = is_affine if wit.target == "A" else is_product
    if test(apply_co(EQ2, wit.T)) is None:
        return False
    return all(test(apply_contra(Tinv, f)) is not None for f in F)
