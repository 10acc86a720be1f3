"""A terminal 3-fold where the two redundancy tests disagree.

On the minimal terminal resolution Z of the second corpus fan, the divisor
D_v with v = (-2, 1, 0) is contracted by the anticanonical morphism Z -> Y
onto a curve (v lies inside a 2-dimensional cone of Y), so it sits in the
exceptional locus. The K-negative extremal class R given by the relation
(-1,0,0) + (-1,1,0) - (-2,1,0) = 0 contracts the same divisor, but along the
other ruling: P . R = 4/5 + 2/3 - 1 = 7/15 > 0. Exc(R) is inside B+(-K) while
R is not P-trivial. Everything below is certified without the package's
extremality or base-locus routines.
"""
from fractions import Fraction

import pytest

from toricac import fixtures
from toricac.divisor import anticanonical
from toricac.errors import InternalConsistencyError
from toricac.mmp import is_redundant, mmp_step, redundancy_tests, wall_classes
from toricac.pipeline import theorem_b_diagram
from toricac.rational import feasible_point
from toricac.singularities import LogPair, classify_pair
from toricac.zariski import good_zariski

CIRCUIT = ((-2, 1, 0), (-1, 0, 0), (-1, 1, 0))


def _setup():
    X = fixtures.random_corpus(2)[1]
    d = theorem_b_diagram(X)
    Z = d.nodes["X'_mint"]
    classes = wall_classes(Z, anticanonical(Z))
    R = next(c for c in classes if c.circuit_key() == CIRCUIT)
    return Z, d.nodes["Y"], classes, R


def test_disagreement_is_genuine():
    Z, Y, classes, R = _setup()
    assert classify_pair(LogPair.trivial(Z)).cls == "terminal" and Z.simplicial
    assert R.k_dot < 0 and R.kind == "divisorial"
    v = (-2, 1, 0)
    assert [Z.rays[i] for i in R.negatives] == [v]
    # D_v is f-exceptional and maps onto a curve of Y
    assert v not in Y.rays and len(Y.locate(v)) == 2
    # P . R > 0
    P = good_zariski(anticanonical(Z)).P
    assert sum(a * b for a, b in zip(P.coeffs, R.relation)) == Fraction(7, 15)
    # R spans an extremal ray of the cone of curves: a nef H vanishes on R and
    # is >= 1 on every other wall class
    others = [c for c in classes if c.relation != R.relation]
    H = feasible_point(eq=[(R.relation, 0)], ge=[(c.relation, 1) for c in others])
    assert H is not None
    assert all(sum(h * b for h, b in zip(H, c.relation)) >= 0 for c in classes)
    # the contraction exists: the star of v re-merges to a complete simplicial fan
    Zc, kind = mmp_step(Z, R)
    assert kind == "divisorial" and Zc.complete and Zc.simplicial
    # and the package reports both sides as computed
    assert redundancy_tests(Z, R) == (False, True)


def test_cross_checked_redundancy_raises():
    Z, _, _, R = _setup()
    with pytest.raises(InternalConsistencyError):
        is_redundant(Z, R)
    assert is_redundant(Z, R, check=False) is False
