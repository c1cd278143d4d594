"""Dense exact matrices over Cyclo (lists of rows); just what the package needs."""
from __future__ import annotations

from .cyclo import ONE, ZERO, Cyclo

Matrix = list


def as_matrix(rows) -> list[list[Cyclo]]:
    return [[Cyclo(x) if not isinstance(x, Cyclo) else x for x in row] for row in rows]


def identity(n: int) -> list[list[Cyclo]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a, b):
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = ZERO
            for k in range(inner):
                x = row[k]
                if x:
                    y = b[k][j]
                    if y:
                        acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def kron(a, b):
    return [
        [x * y for x in ra for y in rb]
        for ra in a
        for rb in b
    ]


def _echelon(rows):
    """Row-reduce a copy; returns (reduced rows, pivot columns, determinant sign/scale)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    det = ONE
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            det = ZERO
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            det = -det
        p = m[r][c]
        det = det * p
        inv = ONE / p
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots, det


def det(a) -> Cyclo:
    n = len(a)
    if n == 0:
        return ONE
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    _, pivots, d = _echelon(a)
    return d if len(pivots) == n else ZERO


def rank(a) -> int:
    if not a:
        return 0
    return len(_echelon(a)[1])


def nullspace(a) -> list[list[Cyclo]]:
    """Basis of {x : a x = 0}."""
    ncols = len(a[0])
    red, pivots, _ = _echelon(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def inverse(a):
    n = len(a)
    aug = [list(row) + idrow for row, idrow in zip(a, identity(n))]
    red, pivots, _ = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]
