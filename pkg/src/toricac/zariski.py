"""Good Zariski decompositions, anticanonical models and the small
modification that makes -K admit a good decomposition.

On a complete toric variety the positive part of a big divisor D is read off
the polytope: p_rho = -min_{m in P_D} <m, v_rho>. The decomposition D = P + N
is good exactly when the fan refines the normal fan of P_D.
"""
from collections import deque
from dataclasses import dataclass, field
from math import lcm

from . import config
from .divisor import TorusDivisor, anticanonical, polytope_of, positivity, sections_count
from .errors import InternalConsistencyError, NotBig, NotSimplicial, ResourceLimit, TriangulationFailure
from .fan import bistellar_flip, flippable_walls, normal_fan, pulling_triangulation, refines, star_subdivision
from .polytope import minimize_linear
from .rational import denominator_lcm

# lattice-point counts beyond this box size are skipped (None in sections_equal)
SECTION_CHECK_BOX = 50_000


@dataclass(frozen=True)
class GoodZariski:
    D: TorusDivisor
    P: TorusDivisor
    N: TorusDivisor
    model: object
    sections_equal: tuple  # ((m, h0(mP), h0(mD)), ...); counts None when skipped

    @property
    def nef(self):
        return positivity(self.P).nef

    @property
    def effective(self):
        return self.N.is_effective()


def _big_polytope(D):
    P = polytope_of(D)
    if not P.is_full_dimensional():
        raise NotBig("divisor polytope is not full-dimensional")
    return P


def positive_candidate(D):
    """Largest divisor P <= D with the same polytope."""
    P = _big_polytope(D)
    return TorusDivisor(D.fan, tuple(-minimize_linear(P, v) for v in D.fan.rays))


def good_zariski(D):
    """The good Zariski decomposition of a big divisor, or None when it does not
    exist on this fan."""
    poly = _big_polytope(D)
    P = positive_candidate(D)
    model = normal_fan(poly)
    if not refines(D.fan, model):
        return None
    pos = positivity(P)
    if not pos.nef:
        raise InternalConsistencyError("fan refines the normal fan but P is not nef")
    N = D - P
    # equal polytopes give h0(mP) = h0(mD) for every m; counting is a spot check
    if not polytope_of(P).same_points(poly):
        raise InternalConsistencyError("P_P differs from P_D")
    c = lcm(pos.cartier_index, denominator_lcm(D.coeffs))
    checks = []
    box = min(SECTION_CHECK_BOX, config.settings.max_box_volume)
    for m in (c, 2 * c):
        try:
            hp = sections_count(P, m, max_box_volume=box)
            hd = sections_count(D, m, max_box_volume=box)
        except ResourceLimit:
            checks.append((m, None, None))
            continue
        if hp != hd:
            raise InternalConsistencyError(f"h0({m}P) = {hp} but h0({m}D) = {hd}")
        checks.append((m, hp, hd))
    return GoodZariski(D, P, N, model, tuple(checks))


def anticanonical_model(X):
    """Y = normal fan of P_{-K_X}, with its (ample) anticanonical divisor."""
    poly = _big_polytope(anticanonical(X))
    Y = normal_fan(poly)
    minus_KY = anticanonical(Y)
    if not polytope_of(minus_KY).same_points(poly):
        raise InternalConsistencyError("P_{-K_Y} differs from P_{-K_X}")
    return Y, minus_KY


@dataclass(frozen=True)
class SmallnessCertificate:
    identity: bool
    same_rays: bool
    refines_model: bool
    zariski_present: bool
    flop_chain: tuple | None = field(default=None)

    @property
    def valid(self):
        return self.same_rays and self.refines_model and self.zariski_present


def _refinement_on_rays(model, rays):
    """Pulling triangulation of the model fan, then star subdivisions at the
    remaining rays in lexicographic order."""
    fan = pulling_triangulation(model)
    for v in sorted(set(rays) - set(fan.rays)):
        fan = star_subdivision(fan, v)
    return fan


def sqm_to_zariski(Xq, explicit_flops=False, depth=None):
    """Small modification of a simplicial complete fan on which -K admits a good
    Zariski decomposition. Returns (Xp, certificate)."""
    if not Xq.simplicial:
        raise NotSimplicial("sqm_to_zariski expects a Q-factorial (simplicial) fan")
    poly = _big_polytope(anticanonical(Xq))
    model = normal_fan(poly)
    if refines(Xq, model):
        return Xq, SmallnessCertificate(True, True, True, True, ())
    Xp = _refinement_on_rays(model, Xq.rays)
    same = set(Xp.rays) == set(Xq.rays)
    if not (Xp.simplicial and same and refines(Xp, model)):
        raise TriangulationFailure("could not build a simplicial refinement on the given rays")
    present = good_zariski(anticanonical(Xp)) is not None
    chain = None
    if explicit_flops:
        chain = flop_chain(Xq, Xp, config.settings.flip_search_depth if depth is None else depth)
    return Xp, SmallnessCertificate(False, same, True, present, chain)


def flop_chain(source, target, depth, max_nodes=5000):
    """Breadth-first search for a sequence of bistellar flips source -> target.

    Returns the tuple of intermediate fans (source first, target last), or None
    if none is found within ``depth`` flips.
    """
    if source == target:
        return (source,)
    seen = {source: None}
    queue = deque([(source, 0)])
    while queue:
        fan, k = queue.popleft()
        if k >= depth:
            continue
        for w in flippable_walls(fan):
            try:
                nxt = bistellar_flip(fan, [w])
            except Exception:
                continue
            if nxt in seen:
                continue
            seen[nxt] = fan
            if nxt == target:
                path = [nxt]
                while seen[path[-1]] is not None:
                    path.append(seen[path[-1]])
                return tuple(reversed(path))
            if len(seen) > max_nodes:
                return None
            queue.append((nxt, k + 1))
    return None
