"""Shared strategies and transforms for the property tests."""
import random

from hypothesis import strategies as st

from toricac.fan import make_fan


def random_unimodular(rng, d, steps=6):
    """Product of random elementary integer matrices (determinant +-1)."""
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        c = rng.choice((-1, 1))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        m[0] = [-a for a in m[0]]
    return m


def apply(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def transform_fan(fan, m):
    return make_fan([apply(m, r) for r in fan.rays], fan.cones)


seeds = st.integers(0, 10**6)


def rng_from(seed):
    return random.Random(seed)


def is_nef(fan, coeffs):
    """Convexity oracle: every local functional m_sigma (with <m, v> = -a on the
    rays of sigma) satisfies <m, v> >= -a on all rays."""
    import oracles

    for c in fan.cones:
        m = oracles.gauss_solve([fan.rays[i] for i in c], [-coeffs[i] for i in c])
        if m is None:
            return False
        if any(sum(x * y for x, y in zip(m, v)) < -a for v, a in zip(fan.rays, coeffs)):
            return False
    return True


def nef_minorants(D, P, rng, count=100, max_tries=20000):
    """Random nef divisors P' <= D of two kinds: D minus a random sparse
    effective divisor, and c P + div(chi^m) minus a small sparse divisor."""
    from fractions import Fraction

    out = []
    n = len(D.coeffs)
    for k in range(max_tries):
        if len(out) == count:
            break
        E = [Fraction(0)] * n
        for i in rng.sample(range(n), rng.randint(1, min(3, n))):
            E[i] = Fraction(rng.randint(0, 4), rng.choice((1, 2, 3)))
        if k % 2:
            cand = [a - e for a, e in zip(D.coeffs, E)]
        else:
            c = Fraction(rng.randint(1, 6), 6)
            m = [Fraction(rng.randint(-2, 2), rng.choice((2, 3, 6))) for _ in range(D.fan.dim)]
            cand = [c * p + sum(x * y for x, y in zip(m, v)) - e / 4
                    for p, v, e in zip(P.coeffs, D.fan.rays, E)]
        if all(a <= b for a, b in zip(cand, D.coeffs)) and is_nef(D.fan, cand):
            out.append(tuple(cand))
    return out
