"""Brute-force reference computations, deliberately naive and independent of
the optimized code paths in the package."""
from fractions import Fraction
from itertools import combinations, product


def gauss_solve(rows, rhs):
    """Unique solution of a square system by plain Gaussian elimination, or None."""
    n = len(rows)
    m = [[Fraction(a) for a in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def vertices(cons, d):
    """Vertices of {m : <m, n> >= -o} by trying every d-subset of constraints."""
    out = set()
    for sub in combinations(cons, d):
        x = gauss_solve([n for n, _ in sub], [-o for _, o in sub])
        if x is None:
            continue
        if all(sum(a * b for a, b in zip(n, x)) >= -o for n, o in cons):
            out.add(x)
    return sorted(out)


def lattice_points(cons, box):
    """Integer points of the constraint set inside the cube [-box, box]^d."""
    d = len(cons[0][0])
    return sorted(p for p in product(range(-box, box + 1), repeat=d)
                  if all(sum(a * b for a, b in zip(n, p)) >= -o for n, o in cons))


def divisor_polytope(fan, coeffs):
    return [(fan.rays[i], Fraction(a)) for i, a in enumerate(coeffs)]


def positive_part(fan, coeffs):
    """P_rho = -min over the polytope of <m, v_rho>, from brute-force vertices."""
    vs = vertices(divisor_polytope(fan, coeffs), fan.dim)
    return tuple(-min(sum(a * b for a, b in zip(m, v)) for m in vs) for v in fan.rays)


def nonneg_feasible(A, b, bound):
    """Whether A x = b has a solution with x in {0..bound}^n (integer search)."""
    n = len(A[0])
    for x in product(range(bound + 1), repeat=n):
        if all(sum(a * xi for a, xi in zip(r, x)) == bi for r, bi in zip(A, b)):
            return True
    return False


def two_d_discrepancy(v, u, w, au=0, aw=0):
    """Discrepancy of a lattice vector v in the cone (u, w) of a surface with
    boundary coefficients au, aw: write v = s u + t w, log discrepancy is
    s (1 - au) + t (1 - aw), and the discrepancy subtracts 1."""
    det = u[0] * w[1] - u[1] * w[0]
    s = Fraction(v[0] * w[1] - v[1] * w[0], det)
    t = Fraction(u[0] * v[1] - u[1] * v[0], det)
    return s * (1 - Fraction(au)) + t * (1 - Fraction(aw)) - 1
