import pytest
from hypothesis import given

from toricac import fixtures
from toricac.divisor import anticanonical, polytope_of
from toricac.errors import DuplicateRay, NotAFan, OutsideSupport, RayExists
from toricac.fan import (bistellar_flip, circuit_relation, fan_from_rays_2d, flippable_walls,
                         make_fan, normal_fan, pulling_triangulation, refines, star_subdivision,
                         unimodular_equivalent, walls)

from helpers import random_unimodular, rng_from, seeds, transform_fan


def test_validation_errors():
    with pytest.raises(DuplicateRay):
        make_fan([(1, 0), (2, 0), (0, 1)], [(0, 2), (1, 2)])
    with pytest.raises(NotAFan):
        # overlapping cones that do not meet in a face
        make_fan([(1, 0), (0, 1), (1, 1), (1, 2)], [(0, 3), (2, 1)])
    with pytest.raises(NotAFan):
        make_fan([(1, 0), (0, 1), (-1, -1)], [(0, 1)])


def test_completeness_flags():
    assert fixtures.p2().complete and fixtures.p2().simplicial
    half = make_fan([(1, 0), (0, 1), (-1, 0)], [(0, 1), (1, 2)])
    assert not half.complete
    sq = fixtures.cone_over_square()
    assert sq.complete and not sq.simplicial


def test_star_subdivision_of_p2_is_f1():
    f1 = star_subdivision(fixtures.p2(), (1, 1))
    assert unimodular_equivalent(f1, fixtures.hirzebruch(1))
    assert refines(f1, fixtures.p2()) and not refines(fixtures.p2(), f1)
    with pytest.raises(RayExists):
        star_subdivision(f1, (1, 1))
    half = make_fan([(1, 0), (0, 1)], [(0, 1)])
    with pytest.raises(OutsideSupport):
        star_subdivision(half, (-1, -1))


def test_normal_fan_of_anticanonical_polytope():
    for name in ("P2", "P1xP1", "P3"):
        X = fixtures.NAMED[name]()
        assert normal_fan(polytope_of(anticanonical(X))) == X
    F2 = fixtures.hirzebruch(2)
    Y = normal_fan(polytope_of(anticanonical(F2)))
    assert sorted(Y.rays) == [(-1, 2), (0, -1), (1, 0)]


def test_circuit_relation():
    assert circuit_relation([(1, 0), (-1, 2), (0, 1)]) == (1, 1, -2)


def test_walls_of_hirzebruch():
    for a in range(4):
        F = fixtures.hirzebruch(a)
        ws = walls(F)
        assert len(ws) == 4
        for w in ws:
            total = [sum(b * F.rays[i][k] for i, b in w.relation) for k in range(2)]
            assert total == [0, 0]
            assert w.coeff(w.left_ray_id) > 0 and w.coeff(w.right_ray_id) > 0
        # neighbours of (0,-1) are (1,0) and (-1,a), which sum to -a (0,-1)
        top = F.ray_index((0, -1))
        w = next(w for w in ws if w.facet_ray_ids == (top,))
        assert abs(w.coeff(top)) == a


def test_flip_is_an_involution():
    X = fixtures.flip_circuit()
    ws = flippable_walls(X)
    assert ws
    Y = bistellar_flip(X, [ws[0]])
    assert Y != X and Y.complete and Y.simplicial and set(Y.rays) == set(X.rays)
    back = next(w for w in walls(Y) if set(w.ray_ids) == set(ws[0].ray_ids))
    assert bistellar_flip(Y, [back]) == X


def test_pulling_triangulation_of_square_cone():
    sq = fixtures.cone_over_square()
    T = pulling_triangulation(sq)
    assert T.simplicial and T.complete and set(T.rays) == set(sq.rays)
    assert refines(T, sq) and len(T.cones) == 6


@given(seeds)
def test_unimodular_invariance(seed):
    rng = rng_from(seed)
    X = fixtures.random_fan_2d(rng) if seed % 2 else fixtures.random_fan_3d(rng)
    m = random_unimodular(rng, X.dim)
    Y = transform_fan(X, m)
    assert unimodular_equivalent(X, Y)
    assert Y.complete == X.complete and Y.simplicial == X.simplicial
    assert len(walls(Y)) == len(walls(X))


def test_fan_from_rays_2d_order():
    F = fan_from_rays_2d([(0, -1), (1, 0), (-1, 0), (0, 1)])
    assert F == fixtures.p1p1()
