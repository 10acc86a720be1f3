"""The factorization diagram around the anticanonical model, the Fano-type
decision with its boundary certificate, the weak Fano certificate and the
enumeration of Q-factorial models sharing an anticanonical model.

Diagram nodes and arrows::

    X <-q- X_q -s-> X'  <-phi- X'_mint -r-> X'_nrd
                    |  f'        | f~         | pi
                    Y ---------- Y ---------- Y
"""
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

from .divisor import TorusDivisor, anticanonical, polytope_of, positivity, support_data
from .errors import (DiagramInvariantViolation, DimensionLimit, NotBig, NotFano, NotQCartier,
                     ZariskiAbsent)
from .fan import bistellar_flip, fan_from_rays_2d, flippable_walls, pulling_triangulation, refines
from .mmp import redundant_mmp
from .polytope import RationalPolytope, lattice_points
from .rational import is_primitive
from .singularities import (GeneralPart, LogPair, classify_pair, construct_klt_cy_boundary,
                            minimal_terminal_resolution)
from .zariski import _refinement_on_rays, anticanonical_model, good_zariski, sqm_to_zariski

NODES = ("X", "X_q", "X'", "X'_mint", "X'_nrd", "Y")


def q_factorialize(X):
    """Simplicial refinement on the same rays (identity on simplicial fans)."""
    return pulling_triangulation(X)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    kind: str
    certificate: dict

    @property
    def valid(self):
        return all(bool(v) for v in self.certificate.values())


@dataclass(frozen=True)
class PipelineDiagram:
    nodes: dict  # name -> Fan
    polytopes: dict  # name -> RationalPolytope of -K
    arrows: tuple
    trace: object
    sqm: object

    def arrow(self, name):
        return next(a for a in self.arrows if a.name == name)

    @property
    def model_vertices(self):
        return self.polytopes["Y"].vertices()


def _big_qcartier_anticanonical(X):
    mK = anticanonical(X)
    if not support_data(mK).q_cartier:
        raise NotQCartier("-K_X is not Q-Cartier")
    poly = polytope_of(mK)
    if not poly.is_full_dimensional():
        raise NotBig("-K_X is not big")
    return poly


def theorem_b_diagram(X):
    """Build X_q, X', X'_mint, X'_nrd and Y and check every diagram invariant."""
    poly = _big_qcartier_anticanonical(X)
    Xq = q_factorialize(X)
    Xp, sqm = sqm_to_zariski(Xq)
    Y, _ = anticanonical_model(Xp)
    Xm, mint = minimal_terminal_resolution(Xp)
    trace, Xn = redundant_mmp(Xm)
    nodes = {"X": X, "X_q": Xq, "X'": Xp, "X'_mint": Xm, "X'_nrd": Xn, "Y": Y}
    polys = {k: polytope_of(anticanonical(f)) for k, f in nodes.items()}
    same_rays = set(Xq.rays) == set(X.rays)
    arrows = (
        Arrow("q", "X_q", "X", "q-factorialization",
              {"refines": refines(Xq, X), "small": same_rays, "simplicial": Xq.simplicial}),
        Arrow("s", "X_q", "X'", "flop-sequence SQM",
              {"small": sqm.same_rays, "good_zariski": sqm.zariski_present,
               "refines_model": sqm.refines_model}),
        Arrow("phi", "X'_mint", "X'", "minimal terminal resolution",
              {"refines": mint.refines, "terminal": mint.terminal,
               "relatively_nef": mint.relatively_nef}),
        Arrow("f'", "X'", "Y", "anticanonical morphism", {"refines": refines(Xp, Y)}),
        Arrow("f~", "X'_mint", "Y", "anticanonical morphism", {"refines": refines(Xm, Y)}),
        Arrow("r", "X'_mint", "X'_nrd", "redundant MMP trace",
              {"polytopes_preserved": all(s.model_polytope_before.same_points(s.model_polytope_after)
                                          for s in trace.steps),
               "rays_subset": set(Xn.rays) <= set(Xm.rays)}),
        Arrow("pi", "X'_nrd", "Y", "anticanonical morphism", {"refines": refines(Xn, Y)}),
    )
    into = {"X_q": "q", "X'": "s", "X'_mint": "phi", "X'_nrd": "r", "Y": "f'"}
    for name in NODES[1:]:
        if not polys[name].same_points(poly):
            raise DiagramInvariantViolation(into[name], f"P_-K at node {name} differs from P_-K at X")
    for a in arrows:
        if not a.valid:
            bad = [k for k, v in a.certificate.items() if not v]
            raise DiagramInvariantViolation(a.name, "failed checks: " + ", ".join(bad))
    return PipelineDiagram(nodes, polys, arrows, trace, sqm)


# -- Fano type ---------------------------------------------------------------------

@dataclass(frozen=True)
class FanoTypeCertificate:
    """Boundary on X (restricted from X', which has the same rays) with the
    checks done on X'."""
    pair: LogPair
    boundary: object  # CYBoundary on X'

    @property
    def valid(self):
        return self.boundary.valid

    def describe(self):
        return self.boundary.describe()


def check_fano_type(X):
    """(True, certificate) if X is of Fano type, else (False, reason)."""
    mK = anticanonical(X)
    if not support_data(mK).q_cartier:
        raise NotQCartier("-K_X is not Q-Cartier")
    if not polytope_of(mK).is_full_dimensional():
        return False, "-K not big"
    Y, mKY = anticanonical_model(X)
    if not classify_pair(LogPair.trivial(Y)).at_least("klt"):
        return False, "anticanonical model is not klt"
    if not positivity(mKY).ample:
        return False, "-K of the anticanonical model is not ample"
    Xp, _ = sqm_to_zariski(q_factorialize(X))
    cy = construct_klt_cy_boundary(Xp)
    return True, FanoTypeCertificate(_restrict(cy.pair, X), cy)


def _restrict(pair, X):
    def move(D):
        return TorusDivisor(X, tuple(D.coefficient(v) for v in X.rays))
    gp = pair.general_part
    return LogPair(X, move(pair.boundary), GeneralPart(gp.multiple, gp.coefficient, move(gp.base_divisor)))


class WeakFano(NamedTuple):
    N: TorusDivisor
    lc: bool
    nef_big: bool


def weak_fano_certificate(X):
    """(N, (X, N) lc, -(K + N) nef and big) from the good Zariski decomposition of -K."""
    gz = good_zariski(anticanonical(X))
    if gz is None:
        raise ZariskiAbsent("-K_X has no good Zariski decomposition on this fan")
    lc = classify_pair(LogPair(X, gz.N)).at_least("lc")
    pos = positivity(gz.P)
    return WeakFano(gz.N, lc, pos.nef and pos.big)


# -- finiteness of models ----------------------------------------------------------

def nonpositive_rays(Y):
    """Primitive non-ray vectors with discrepancy <= 0 over Y."""
    from .singularities import _log_function, _slab_points
    ms = _log_function(LogPair.trivial(Y))
    out = set()
    for ci in range(len(Y.cones)):
        out.update(p for p in _slab_points(Y, ci, ms[ci], 1) if is_primitive(p))
    return sorted(out - set(Y.rays))


def _check_fano_model(Y):
    if not positivity(anticanonical(Y)).ample:
        raise NotFano("-K_Y is not ample")
    if not classify_pair(LogPair.trivial(Y)).at_least("klt"):
        raise NotFano("Y is not klt")


def _triangulations_on(Y, rays, budget):
    """Complete simplicial fans on exactly ``rays`` reachable by flips from a
    refinement of Y, up to ``budget`` fans."""
    start = _refinement_on_rays(Y, rays)
    seen = {start}
    queue = deque([start])
    while queue and len(seen) < budget:
        f = queue.popleft()
        for w in flippable_walls(f):
            try:
                g = bistellar_flip(f, [w])
            except Exception:
                continue
            if g not in seen and g.complete and g.simplicial:
                seen.add(g)
                queue.append(g)
    return seen


def enumerate_models(Y, max_dim=2, pool="mint", allow_3d=False, triangulation_budget=200):
    """Q-factorial complete fans X with rays(Y) <= rays(X) <= pool and
    anticanonical model Y, sorted by (ray count, rays).

    ``pool`` is "mint" (rays of the minimal terminal resolution of Y) or
    "nonpositive" (every primitive vector with discrepancy <= 0 over Y).
    Dimension 3 needs ``allow_3d`` and is a flip-graph search bounded by
    ``triangulation_budget`` per ray set.
    """
    if Y.dim > max_dim or Y.dim >= 4 or (Y.dim == 3 and not allow_3d):
        raise DimensionLimit(f"model enumeration in dimension {Y.dim} is not enabled")
    _check_fano_model(Y)
    target = polytope_of(anticanonical(Y))
    if pool == "mint":
        mint, _ = minimal_terminal_resolution(Y)
        extra = sorted(set(mint.rays) - set(Y.rays))
    else:
        extra = nonpositive_rays(Y)
    found = set()
    for k in range(len(extra) + 1):
        for S in combinations(extra, k):
            rays = list(Y.rays) + list(S)
            if Y.dim == 2:
                cands = [fan_from_rays_2d(rays)]
            else:
                cands = _triangulations_on(Y, rays, triangulation_budget)
            for X in cands:
                if polytope_of(anticanonical(X)).same_points(target):
                    found.add(X)
    return sorted(found, key=lambda f: (len(f.rays), sorted(f.rays), sorted(
        tuple(sorted(f.rays[i] for i in c)) for c in f.cones)))


def dominated_by_terminalization(X, Y):
    """Whether the minimal terminal resolution of Y refines X (after an SQM of X
    onto the same rays when needed)."""
    mint, _ = minimal_terminal_resolution(Y)
    if refines(mint, X):
        return True
    if not set(X.rays) <= set(mint.rays):
        return False
    return refines(mint, _refinement_on_rays(Y, X.rays))
