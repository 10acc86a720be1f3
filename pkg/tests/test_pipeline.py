import pytest

from toricac import fixtures
from toricac.errors import DimensionLimit, NotFano
from toricac.fan import refines
from toricac.pipeline import (check_fano_type, dominated_by_terminalization, enumerate_models,
                              theorem_b_diagram, weak_fano_certificate)
from toricac.zariski import anticanonical_model


@pytest.mark.parametrize("name", sorted(fixtures.NAMED))
def test_diagram_on_fixtures(name):
    X = fixtures.NAMED[name]()
    d = theorem_b_diagram(X)
    assert all(a.valid for a in d.arrows)
    assert all(p.same_points(d.polytopes["Y"]) for p in d.polytopes.values())
    assert refines(d.nodes["X'_nrd"], d.nodes["Y"])
    if X.dim == 2:
        assert d.sqm.identity


def test_diagram_on_corner_blowup():
    d = theorem_b_diagram(fixtures.corner_redundant_blowup())
    assert d.nodes["X'_nrd"] == fixtures.corner_resolution()
    assert d.nodes["Y"] == fixtures.corner_fano()
    assert [s.kind for s in d.trace.steps] == ["divisorial"]


@pytest.mark.parametrize("name", ["P2", "F2", "P113_blowup", "X_E", "P3", "cone_over_square"])
def test_fano_type(name):
    ok, cert = check_fano_type(fixtures.NAMED[name]())
    assert ok and cert.valid
    b = cert.pair.boundary
    assert all(a < 1 for a in b.coeffs)


def test_fano_type_boundary_of_blowup():
    ok, cert = check_fano_type(fixtures.p113_blowup())
    assert ok and cert.pair.boundary.coefficient((0, -1)) * 3 == 1
    assert cert.boundary.multiple == 3


def test_weak_fano():
    wf = weak_fano_certificate(fixtures.p113_blowup())
    assert wf.lc and wf.nef_big and wf.N.coefficient((0, -1)) * 3 == 1


def test_enumerate_models_counts():
    assert len(enumerate_models(fixtures.p2())) == 1
    assert len(enumerate_models(fixtures.p112())) == 2
    assert len(enumerate_models(fixtures.p113())) == 2
    assert len(enumerate_models(fixtures.corner_fano())) == 32
    assert len(enumerate_models(fixtures.corner_fano(), pool="nonpositive")) == 64


def test_enumerated_models_are_dominated():
    Y = fixtures.p113()
    for X in enumerate_models(Y):
        assert anticanonical_model(X)[0] == Y
        assert dominated_by_terminalization(X, Y)
        assert check_fano_type(X)[0]


def test_enumerate_models_rejects():
    with pytest.raises(NotFano):
        enumerate_models(fixtures.hirzebruch(2))
    with pytest.raises(DimensionLimit):
        enumerate_models(fixtures.p3())


def test_enumerate_models_3d_on_request():
    models = enumerate_models(fixtures.p3(), max_dim=3, allow_3d=True)
    assert models == [fixtures.p3()]
