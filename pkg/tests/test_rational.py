import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toricac.errors import ZeroVector
from toricac.rational import (Q, det, feasible_point, int_det, integral_direction, nonneg_solution,
                              nullspace, primitive, rank, solve)

import oracles

small = st.integers(-6, 6)


def test_coercion():
    assert Q("3/6") == Fraction(1, 2)
    assert Q(4) == Fraction(4)
    with pytest.raises(TypeError):
        Q(0.5)


def test_primitive():
    assert primitive((4, -2)) == (2, -1)
    assert integral_direction((Fraction(1, 2), Fraction(-1, 3))) == (3, -2)
    with pytest.raises(ZeroVector):
        primitive((0, 0))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_int_det_matches_fraction_det(m):
    assert int_det(m) == det(m)


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(rows):
    ker = nullspace(rows)
    assert rank(rows) + len(ker) == 4
    for k in ker:
        assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in rows)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(small, min_size=3, max_size=3))
def test_solve_square(rows, rhs):
    ref = oracles.gauss_solve(rows, rhs)
    x = solve(rows, rhs)
    if ref is not None:
        assert x == ref


def test_nonneg_solution_against_integer_search():
    rng = random.Random(7)
    for _ in range(300):
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        x0 = [rng.randint(0, 2) for _ in range(n)]
        feasible = rng.random() < 0.5
        b = [sum(a * x for a, x in zip(r, x0)) + (0 if feasible else rng.randint(-2, 2)) for r in A]
        x = nonneg_solution(A, b)
        if x is not None:
            assert all(xi >= 0 for xi in x)
            assert all(sum(a * xi for a, xi in zip(r, x)) == bi for r, bi in zip(A, b))
        elif feasible:
            pytest.fail("feasible system reported infeasible")
        if oracles.nonneg_feasible(A, b, 3):
            assert x is not None


def test_feasible_point():
    p = feasible_point(eq=[((1, 1), 1)], ge=[((1, 0), Fraction(1, 3)), ((0, 1), Fraction(1, 3))])
    assert p[0] + p[1] == 1 and p[0] >= Fraction(1, 3) and p[1] >= Fraction(1, 3)
    assert feasible_point(ge=[((1,), 1), ((-1,), 0)]) is None
