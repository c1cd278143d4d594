"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored sparsely in the Zumbroich basis of their minimal
conductor, so equality of values is equality of representations.  For a
prime power p^e dividing N, an exponent j is a basis exponent when the top
base-p digit of its p-component lies in {1..p-1} (p odd) or is 0 (p = 2).
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache, reduce

__all__ = [
    "Cyclo",
    "CycloParseError",
    "parse_cyclo",
    "sqrt_rational",
    "is_root_of_unity",
    "to_float",
    "zeta",
    "I",
    "ONE",
    "ZERO",
]


class CycloParseError(ValueError):
    pass


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def _normal_conductor(n: int) -> int:
    # Q(zeta_2m) = Q(zeta_m) for odd m
    return n // 2 if n % 4 == 2 else n


@lru_cache(maxsize=None)
def _prime_data(n: int):
    """Per prime power q = p^e of n: (p, e, q, n // q, inverse of n // q mod q)."""
    data = []
    for p, e in _factor(n):
        q = p**e
        co = n // q
        data.append((p, e, q, co, pow(co, -1, q)))
    return tuple(data)


@lru_cache(maxsize=65536)
def _expand(n: int, j: int) -> tuple[tuple[int, int], ...]:
    """zeta_n^j written in the Zumbroich basis as ((exponent, integer coeff), ...)."""
    terms = {j % n: 1}
    for p, e, q, co, inv in _prime_data(n):
        top = q // p
        step = n // p
        nxt: dict[int, int] = {}
        for k, c in terms.items():
            digit = (k * inv % q) // top
            if p == 2:
                if digit == 1:
                    k2 = (k + n // 2) % n
                    nxt[k2] = nxt.get(k2, 0) - c
                else:
                    nxt[k] = nxt.get(k, 0) + c
            elif digit == 0:
                for b in range(1, p):
                    k2 = (k + b * step) % n
                    nxt[k2] = nxt.get(k2, 0) - c
            else:
                nxt[k] = nxt.get(k, 0) + c
        terms = {k: c for k, c in nxt.items() if c}
    return tuple(sorted(terms.items()))


_TABLES: dict[int, list] = {}


def _table(n: int) -> list:
    tab = _TABLES.get(n)
    if tab is None:
        tab = [_expand(n, j) for j in range(n)]
        _TABLES[n] = tab
    return tab


def _reduce_dense(n: int, dense: dict[int, int]) -> dict[int, int]:
    tab = _table(n)
    out: dict[int, int] = {}
    get = out.get
    for j, c in dense.items():
        if not c:
            continue
        exp = tab[j]
        if len(exp) == 1 and exp[0][0] == j:
            out[j] = get(j, 0) + c
            continue
        for k, s in exp:
            out[k] = get(k, 0) + s * c
    return {k: c for k, c in out.items() if c}


def _shrink(n: int, coeffs: dict[int, int]) -> tuple[int, dict[int, int]]:
    """Drop to the smallest conductor whose field contains the value."""
    if not coeffs:
        return 1, {}
    changed = True
    while changed and n > 1:
        changed = False
        for p, e, q, co, inv in _prime_data(n):
            if e >= 2:
                if all(j % p == 0 for j in coeffs):
                    coeffs = {j // p: c for j, c in coeffs.items()}
                    n //= p
                    if n % 4 == 2:
                        coeffs = {j // 2: c for j, c in coeffs.items()}
                        n //= 2
                    changed = True
                    break
            elif p != 2:
                if len(coeffs) % (p - 1):
                    continue
                step = n // p
                groups: dict[int, dict[int, int]] = {}
                for j, c in coeffs.items():
                    b = j * inv % p
                    rest = (j - b * step) % n
                    groups.setdefault(rest, {})[b] = c
                ok = all(
                    len(g) == p - 1 and len(set(g.values())) == 1 for g in groups.values()
                )
                if ok:
                    coeffs = {rest // p: -next(iter(g.values())) for rest, g in groups.items()}
                    n //= p
                    changed = True
                    break
    return n, coeffs


class Cyclo:
    """Element of Q(zeta_N): sum(c_j zeta_N^j) / den with integer c_j."""

    __slots__ = ("_n", "_c", "_d", "_h")

    def __init__(self, value=0):
        if isinstance(value, Cyclo):
            self._n, self._c, self._d, self._h = value._n, value._c, value._d, value._h
            return
        fr = Fraction(value)
        self._n = 1
        self._c = ((0, fr.numerator),) if fr.numerator else ()
        self._d = fr.denominator
        self._h = None

    @classmethod
    def _make(cls, n: int, coeffs: dict[int, int], den: int, *, reduced=False) -> Cyclo:
        if not reduced:
            coeffs = _reduce_dense(n, coeffs)
        if n > 1:
            n, coeffs = _shrink(n, coeffs)
        if not coeffs:
            n, den = 1, 1
        else:
            g = den if den == 1 else reduce(math.gcd, coeffs.values(), den)
            if g != 1:
                coeffs = {j: c // g for j, c in coeffs.items()}
                den //= g
        obj = cls.__new__(cls)
        obj._n = n
        obj._c = tuple(sorted(coeffs.items()))
        obj._d = den
        obj._h = None
        return obj

    # --- basic accessors -------------------------------------------------
    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return {j: Fraction(c, self._d) for j, c in self._c}

    def is_zero(self) -> bool:
        return not self._c

    def is_rational(self) -> bool:
        return self._n == 1

    def rational(self) -> Fraction:
        if self._n != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self._c[0][1], self._d) if self._c else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._c)

    # --- field embedding -------------------------------------------------
    def _lift(self, n: int) -> dict[int, int]:
        if self._n == n:
            return dict(self._c)
        s = n // self._n
        return _reduce_dense(n, {j * s: c for j, c in self._c})

    @staticmethod
    def _coerce(x) -> Cyclo:
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclo(x)
        if isinstance(x, complex) or isinstance(x, float):
            raise TypeError("floating values cannot be coerced to Cyclo")
        return NotImplemented

    # --- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Cyclo):
            other = Cyclo._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        da, db = self._d, other._d
        if self._n == other._n:
            n = self._n
            out = {j: c * db for j, c in self._c} if db != 1 else dict(self._c)
            get = out.get
            for j, c in other._c:
                out[j] = get(j, 0) + c * da
        else:
            n = _normal_conductor(math.lcm(self._n, other._n))
            a, b = self._lift(n), other._lift(n)
            out = {j: c * db for j, c in a.items()}
            for j, c in b.items():
                out[j] = out.get(j, 0) + c * da
        return Cyclo._make(n, {j: c for j, c in out.items() if c}, da * db, reduced=True)

    __radd__ = __add__

    def __neg__(self) -> Cyclo:
        obj = Cyclo.__new__(Cyclo)
        obj._n, obj._d, obj._h = self._n, self._d, None
        obj._c = tuple((j, -c) for j, c in self._c)
        return obj

    def __pos__(self) -> Cyclo:
        return self

    def __sub__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Cyclo):
            other = Cyclo._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if not self._c or not other._c:
            return ZERO
        if other._n == 1:
            r = other._c[0][1]
            if r == 1 and other._d == 1:
                return self
            return Cyclo._make(self._n, {j: c * r for j, c in self._c}, self._d * other._d, reduced=True)
        if self._n == 1:
            return other * self
        if self._n == other._n:
            n = self._n
            a, b = self._c, other._c
        else:
            n = _normal_conductor(math.lcm(self._n, other._n))
            a, b = tuple(self._lift(n).items()), tuple(other._lift(n).items())
        dense: dict[int, int] = {}
        get = dense.get
        if n & (n - 1) == 0:
            # power-of-two conductor: basis is j < n/2 and zeta^(n/2) = -1
            h = n >> 1
            for j, c in a:
                for k, d in b:
                    m = j + k
                    if m >= h:
                        dense[m - h] = get(m - h, 0) - c * d
                    else:
                        dense[m] = get(m, 0) + c * d
            return Cyclo._make(n, {j: c for j, c in dense.items() if c}, self._d * other._d, reduced=True)
        for j, c in a:
            for k, d in b:
                m = j + k
                if m >= n:
                    m -= n
                dense[m] = get(m, 0) + c * d
        return Cyclo._make(n, dense, self._d * other._d)

    __rmul__ = __mul__

    def galois(self, k: int) -> Cyclo:
        """Image under the automorphism zeta_N -> zeta_N^k (gcd(k, N) = 1)."""
        n = self._n
        if math.gcd(k, n) != 1:
            raise ValueError("automorphism index must be coprime to the conductor")
        return Cyclo._make(n, {j * k % n: c for j, c in self._c}, self._d)

    def conj(self) -> Cyclo:
        return self.galois(-1 % self._n) if self._n > 2 else self

    def inverse(self) -> Cyclo:
        if not self._c:
            raise ZeroDivisionError("Cyclo division by zero")
        n = self._n
        if n == 1:
            return Cyclo(Fraction(self._d, self._c[0][1]))
        # x^{-1} = prod_{sigma != 1} sigma(x) / Norm(x)
        others = ONE
        for k in range(2, n):
            if math.gcd(k, n) == 1:
                others = others * self.galois(k)
        norm = (self * others).rational()
        return others * Cyclo(1 / norm)

    def __truediv__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._c:
            raise ZeroDivisionError("Cyclo division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int) -> Cyclo:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # --- comparison / hashing -------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclo(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self._n == other._n and self._d == other._d and self._c == other._c

    def __hash__(self) -> int:
        if self._h is None:
            if self._n == 1:
                self._h = hash(self.rational())
            else:
                self._h = hash((self._n, self._c, self._d))
        return self._h

    # --- output ----------------------------------------------------------
    def __complex__(self) -> complex:
        return to_float(self)

    def __repr__(self) -> str:
        return f"Cyclo({str(self)!r})"

    def __str__(self) -> str:
        return format_cyclo(self)


def zeta(n: int, k: int = 1) -> Cyclo:
    """The root of unity zeta_n^k = exp(2 pi i k / n)."""
    if n < 1:
        raise ValueError("conductor must be positive")
    m = _normal_conductor(n) if n % 4 == 2 else n
    if m != n:
        # zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
        return (-zeta(m, (m + 1) // 2)) ** (k % n)
    return Cyclo._make(n, {k % n: 1}, 1)


ZERO = Cyclo(0)
ONE = Cyclo(1)
I = zeta(4)


def to_float(z: Cyclo) -> complex:
    n = z._n
    total = 0j
    for j, c in z._c:
        total += c * cmath.exp(2j * math.pi * j / n)
    return total / z._d


def is_root_of_unity(z: Cyclo) -> int | None:
    """Multiplicative order of z, or None when z is not a root of unity."""
    if not z._c:
        return None
    m = 2 * z._n
    if z**m != ONE:
        return None
    order = m
    for p, _ in _factor(m):
        while order % p == 0 and z ** (order // p) == ONE:
            order //= p
    return order


def _legendre(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> Cyclo:
    if p == 2:
        return zeta(8) + zeta(8, 7)
    g = Cyclo._make(p, {k: _legendre(k, p) for k in range(1, p)}, 1)
    # Gauss: g = sqrt(p) for p = 1 mod 4 and g = i sqrt(p) for p = 3 mod 4
    return g if p % 4 == 1 else -I * g


def sqrt_rational(q) -> Cyclo:
    """Square root of a rational; nonnegative real for q >= 0, i*sqrt(-q) otherwise."""
    q = Fraction(q)
    if q == 0:
        return ZERO
    neg = q < 0
    m = abs(q.numerator) * q.denominator
    out = Cyclo(Fraction(1, q.denominator))
    outer = 1
    from sympy import factorint

    for p, e in sorted(factorint(m).items()):
        p, e = int(p), int(e)  # sympy hands back gmpy2 integers when gmpy2 is installed
        outer *= p ** (e // 2)
        if e % 2:
            out = out * _sqrt_prime(p)
    out = out * outer
    return out * I if neg else out


# --- literal grammar ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt|z|i)\b|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, word, sym = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif word is not None:
            toks.append(("word", word))
        elif sym is not None:
            if sym.isspace():
                pos = m.end()
                continue
            if sym not in "+-*/^()":
                raise CycloParseError(f"unexpected character {sym!r} in {text!r}")
            toks.append(("sym", sym))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise CycloParseError(f"expected {want!r} at token {self.pos} in {self.text!r}")
        self.pos += 1
        return tok[1]

    def parse(self) -> Cyclo:
        if not self.toks:
            raise CycloParseError("empty literal")
        val = self.expr()
        if self.pos != len(self.toks):
            raise CycloParseError(f"trailing input in {self.text!r}")
        return val

    def expr(self) -> Cyclo:
        val = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Cyclo:
        val = self.unary()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    raise ZeroDivisionError(f"division by zero in {self.text!r}")
                val = val / rhs
        return val

    def unary(self) -> Cyclo:
        if self.peek() == ("sym", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("sym", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Cyclo:
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            neg = False
            if self.peek() == ("sym", "-"):
                self.take()
                neg = True
            e = self.take("num")
            return base ** (-e if neg else e)
        return base

    def atom(self) -> Cyclo:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Cyclo(val)
        if kind == "word":
            self.take()
            if val == "i":
                return I
            self.take("sym", "(")
            if val == "z":
                n = self.take("num")
                self.take("sym", ")")
                if n < 1:
                    raise CycloParseError("z(N) needs N >= 1")
                return zeta(n)
            arg = self.expr()
            self.take("sym", ")")
            if not arg.is_rational():
                raise CycloParseError("sqrt() takes a rational argument")
            return sqrt_rational(arg.rational())
        if (kind, val) == ("sym", "("):
            self.take()
            inner = self.expr()
            self.take("sym", ")")
            return inner
        raise CycloParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_cyclo(text: str) -> Cyclo:
    """Parse a literal such as ``3/2``, ``1+2*i``, ``z(8)^3`` or ``sqrt(5)``."""
    return _Parser(text).parse()


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_cyclo(z: Cyclo) -> str:
    if not z._c:
        return "0"
    n = z._n
    parts = []
    for j, c in z._c:
        f = Fraction(c, z._d)
        if j == 0:
            mono = ""
        elif n == 4:
            mono = "i"
        else:
            mono = f"z({n})" if j == 1 else f"z({n})^{j}"
        mag = abs(f)
        if not mono:
            body = _frac_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_frac_str(mag)}*{mono}"
        parts.append(("-" if f < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
