from fractions import Fraction

import pytest
from hypothesis import given

from toricac import fixtures
from toricac.divisor import TorusDivisor, anticanonical, polytope_of, positivity
from toricac.errors import NotBig
from toricac.fan import refines
from toricac.pipeline import q_factorialize
from toricac.zariski import anticanonical_model, flop_chain, good_zariski, sqm_to_zariski

import oracles
from helpers import nef_minorants, random_unimodular, rng_from, seeds, transform_fan

F = Fraction


def test_p113_blowup_decomposition():
    X = fixtures.p113_blowup()
    gz = good_zariski(anticanonical(X))
    assert gz.P.coeffs == (1, 1, 1, F(2, 3))
    assert gz.N.coeffs == (0, 0, 0, F(1, 3))
    assert gz.nef and gz.effective
    assert all(hp == hd for _, hp, hd in gz.sections_equal)


def test_f2_decomposition_is_trivial():
    mK = anticanonical(fixtures.hirzebruch(2))
    gz = good_zariski(mK)
    assert gz.P == mK and not any(gz.N.coeffs)


@pytest.mark.parametrize("name", ["P2", "F2", "P113_blowup", "X_E", "Y_E", "P3"])
def test_positive_part_matches_vertex_oracle(name):
    X = fixtures.NAMED[name]()
    mK = anticanonical(X)
    gz = good_zariski(mK)
    assert gz.P.coeffs == oracles.positive_part(X, mK.coeffs)


@pytest.mark.parametrize("name", ["P2", "F2", "P113_blowup", "X_E"])
def test_positive_part_is_maximal(name, seed=11):
    import random
    X = fixtures.NAMED[name]()
    mK = anticanonical(X)
    P = good_zariski(mK).P
    minorants = nef_minorants(mK, P, random.Random(seed))
    assert len(minorants) == 100
    assert all(all(a <= b for a, b in zip(Q, P.coeffs)) for Q in minorants)


def test_absent_when_fan_does_not_refine_model():
    X = fixtures.flip_circuit()
    Y, _ = anticanonical_model(X)
    gz = good_zariski(anticanonical(X))
    assert (gz is None) == (not refines(X, Y))


def test_not_big():
    X = fixtures.p2()
    with pytest.raises(NotBig):
        good_zariski(TorusDivisor(X, (0, 0, 0)))


def test_anticanonical_models():
    Y, mKY = anticanonical_model(fixtures.hirzebruch(2))
    assert sorted(Y.rays) == [(-1, 2), (0, -1), (1, 0)] and positivity(mKY).ample
    Y, _ = anticanonical_model(fixtures.p113_blowup())
    assert sorted(Y.rays) == [(-1, -3), (0, 1), (1, 0)]
    assert anticanonical_model(fixtures.p2())[0] == fixtures.p2()


@given(seeds)
def test_sqm_lands_on_a_refinement_of_the_model(seed):
    rng = rng_from(seed)
    X = fixtures.random_fan_3d(rng, flips=1)
    Xp, cert = sqm_to_zariski(q_factorialize(X))
    Y, _ = anticanonical_model(X)
    assert cert.valid and refines(Xp, Y) and set(Xp.rays) == set(X.rays)
    assert polytope_of(anticanonical(Xp)).same_points(polytope_of(anticanonical(X)))
    if X.dim == 2:
        assert cert.identity


@given(seeds)
def test_decomposition_is_unimodular_invariant(seed):
    rng = rng_from(seed)
    X = fixtures.random_fan_2d(rng)
    Y = transform_fan(X, random_unimodular(rng, 2))
    a = good_zariski(anticanonical(X))
    b = good_zariski(anticanonical(Y))
    assert a.P.coeffs == b.P.coeffs and a.N.coeffs == b.N.coeffs


def test_flop_chain_reaches_target():
    X = fixtures.flip_circuit()
    Xp, cert = sqm_to_zariski(X, explicit_flops=True)
    if cert.identity:
        assert cert.flop_chain == ()
    else:
        assert cert.flop_chain is not None
        assert cert.flop_chain[0] == X and cert.flop_chain[-1] == Xp
    assert flop_chain(X, X, depth=2) == (X,)
