from fractions import Fraction

import pytest
from hypothesis import given

from toricac import fixtures
from toricac.divisor import (TorusDivisor, anticanonical, canonical, polytope_of, positivity,
                             sections_count, support_function)
from toricac.errors import NonIntegral
from toricac.fan import make_fan

import oracles
from helpers import random_unimodular, rng_from, seeds, transform_fan


def test_anticanonical_positivity():
    for name in ("P2", "P1xP1", "F1", "P3", "P112", "P113"):
        pos = positivity(anticanonical(fixtures.NAMED[name]()))
        assert pos.ample and pos.nef and pos.big and pos.semiample, name
    pos = positivity(anticanonical(fixtures.hirzebruch(2)))
    assert pos.nef and pos.big and not pos.ample
    pos = positivity(anticanonical(fixtures.p113_blowup()))
    assert pos.big and not pos.nef


def test_cartier_index():
    # the 1/3(1,1) point has Gorenstein index 3
    assert positivity(anticanonical(fixtures.p113())).cartier_index == 3
    assert positivity(anticanonical(fixtures.p112())).cartier_index == 1
    D = TorusDivisor(fixtures.p113(), (0, 0, 1))
    assert positivity(D).cartier_index == 3


def test_non_q_cartier_on_square_cone():
    sq = fixtures.cone_over_square()
    D = TorusDivisor(sq, (1, 0, 0, 0, 0))
    pos = positivity(D)
    assert not pos.q_cartier and not pos.nef
    assert positivity(anticanonical(sq)).q_cartier


def test_section_counts_match_lattice_oracle():
    X = fixtures.p2()
    mK = anticanonical(X)
    for m in range(1, 4):
        cons = oracles.divisor_polytope(X, mK.coeffs)
        cons = [(v, a * m) for v, a in cons]
        assert sections_count(mK, m) == len(oracles.lattice_points(cons, 3 * m + 1))
    assert sections_count(mK, 1) == 10
    with pytest.raises(NonIntegral):
        sections_count(TorusDivisor(X, (Fraction(1, 2), 0, 0)), 1)


def test_support_function_and_canonical():
    X = fixtures.p2()
    mK = anticanonical(X)
    assert canonical(X) == -mK
    assert support_function(mK, (1, 1)) == -2
    assert support_function(mK, (3, -1)) == -5  # 4 (1,0) + (-1,-1)


def test_linear_equivalence_moves_polytope():
    X = fixtures.hirzebruch(1)
    D = anticanonical(X)
    m = (1, -2)
    shifted = polytope_of(D.translate(m))
    # adding div(chi^m) shifts the polytope by -m
    assert shifted.same_points(polytope_of(D).translate((-1, 2)))


@given(seeds)
def test_positivity_is_unimodular_invariant(seed):
    rng = rng_from(seed)
    X = fixtures.random_fan_2d(rng)
    coeffs = tuple(Fraction(rng.randint(-2, 3), rng.choice((1, 2))) for _ in X.rays)
    Y = transform_fan(X, random_unimodular(rng, 2))
    a = positivity(TorusDivisor(X, coeffs))
    b = positivity(TorusDivisor(Y, coeffs))
    assert a == b


def test_divisor_arity():
    X = make_fan([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(ValueError):
        TorusDivisor(X, (1, 1))
