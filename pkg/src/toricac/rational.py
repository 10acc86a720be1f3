"""Exact rational linear algebra over :class:`fractions.Fraction`.

Vectors are plain tuples; matrices are sequences of row tuples. Nothing in
here ever touches a float.
"""
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .errors import ZeroVector


def Q(x):
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0)


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def primitive(v):
    """Divide an integer vector by the gcd of its coordinates.

    >>> primitive((4, -2))
    (2, -1)
    """
    v = tuple(int(a) for a in v)
    g = reduce(gcd, v, 0)
    if g == 0:
        raise ZeroVector("the zero vector has no primitive generator")
    return tuple(a // g for a in v)


def is_primitive(v):
    return any(v) and reduce(gcd, v, 0) == 1


def integral_direction(v):
    """Primitive integer vector positively parallel to a rational vector."""
    v = [Q(a) for a in v]
    den = reduce(lcm, (a.denominator for a in v), 1)
    return primitive(tuple(int(a * den) for a in v))


def denominator_lcm(values):
    return reduce(lcm, (Q(a).denominator for a in values), 1)


def row_reduce(rows):
    """Reduced row echelon form. Returns (rref rows, pivot columns)."""
    m = [[Q(a) for a in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(row_reduce(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of {x : rows . x = 0} as a list of Fraction tuples."""
    if not rows:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    ncols = len(rows[0])
    red, pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, pivots):
            x[p] = -r[f]
        basis.append(tuple(x))
    return basis


def solve(rows, rhs):
    """Solve rows . x = rhs. Returns one solution or None if inconsistent.

    Free variables are set to zero, so for a square invertible system the
    unique solution comes back.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    red, pivots = row_reduce(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in zip(red, pivots):
        x[p] = r[-1]
    return tuple(x)


def int_det(rows):
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def integer_rows(pairs):
    """Scale each (normal, offset) constraint to integers, keeping its direction."""
    out = []
    for n, o in pairs:
        den = reduce(lcm, (Q(a).denominator for a in n), Q(o).denominator)
        out.append((tuple(int(Q(a) * den) for a in n), int(Q(o) * den)))
    return out


def det(rows):
    m = [[Q(a) for a in r] for r in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def nonneg_solution(A, b):
    """Find x >= 0 with A x = b by an exact phase-one simplex (Bland's rule).

    The tableau is kept fraction-free: integer rows T with a common positive
    divisor D, updated by integer-preserving pivots. Returns a tuple of
    Fractions or None when infeasible.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return tuple(Fraction(0) for _ in range(n))
    total = n + m
    rows = []
    for i, ((r, bi), (ri, bb)) in enumerate(zip(zip(A, b), integer_rows(list(zip(A, b))))):
        if bb < 0:
            ri, bb = tuple(-a for a in ri), -bb
        rows.append(list(ri) + [int(k == i) for k in range(m)] + [bb])
    basis = [n + i for i in range(m)]
    # phase-one objective row: reduced costs of sum of artificials
    cost = [0] * (total + 1)
    for r in rows:
        for j in range(n):
            cost[j] -= r[j]
        cost[-1] -= r[-1]
    D = 1
    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                if best is None:
                    best = i
                    continue
                rb = rows[best]
                lhs, rhs = r[-1] * rb[enter], rb[-1] * r[enter]
                if lhs < rhs or (lhs == rhs and basis[i] < basis[best]):
                    best = i
        if best is None:
            break
        i = best
        pr = rows[i]
        piv = pr[enter]
        for k in range(m):
            if k != i:
                f = rows[k][enter]
                rows[k] = [(a * piv - f * c) // D for a, c in zip(rows[k], pr)]
        f = cost[enter]
        cost = [(a * piv - f * c) // D for a, c in zip(cost, pr)]
        D = piv
        basis[i] = enter
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * total
    for i, j in enumerate(basis):
        x[j] = Fraction(rows[i][-1], D)
    return tuple(x[:n])


def feasible_point(eq=(), ge=()):
    """Find x (free) with a.x = c for (a, c) in eq and a.x >= c for (a, c) in ge.

    Returns a point or None.
    """
    cons = list(eq) + list(ge)
    if not cons:
        return None
    d = len(cons[0][0])
    neq = len(eq)
    nge = len(ge)
    A, b = [], []
    for k, (a, c) in enumerate(cons):
        row = [Q(x) for x in a] + [-Q(x) for x in a]
        slack = [Fraction(0)] * nge
        if k >= neq:
            slack[k - neq] = Fraction(-1)
        A.append(row + slack)
        b.append(Q(c))
    sol = nonneg_solution(A, b)
    if sol is None:
        return None
    return tuple(sol[i] - sol[d + i] for i in range(d))
