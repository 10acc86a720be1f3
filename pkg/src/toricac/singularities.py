"""Discrepancies of toric log pairs, their classification, minimal terminal
resolutions and the klt Calabi-Yau boundary built from a Zariski decomposition.

For a pair (X, Delta = sum d_rho D_rho) with K + Delta Q-Cartier, let psi be
the function linear on each cone with psi(v_rho) = 1 - d_rho. The toric
divisor of a primitive vector v has discrepancy psi(v) - 1.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .divisor import TorusDivisor, anticanonical, canonical, polytope_of, positivity, support_data
from .errors import (InternalConsistencyError, NotKltCandidate, NotQCartier, OutsideSupport,
                     ResourceLimit, ZariskiAbsent)
from .fan import make_fan, pulling_triangulation, star_subdivision, walls
from .polytope import RationalPolytope, lattice_points
from .rational import dot, is_primitive, nonneg_solution, nullspace, primitive, rank, solve, vsub

CLASSES = ("terminal", "canonical", "klt", "lc", "worse")


@dataclass(frozen=True)
class GeneralPart:
    """coefficient * (general member of |multiple * base_divisor|), kept symbolic."""
    multiple: int
    coefficient: Fraction
    base_divisor: TorusDivisor


@dataclass(frozen=True)
class LogPair:
    fan: object
    boundary: TorusDivisor
    general_part: GeneralPart | None = None

    def __post_init__(self):
        if any(d < 0 for d in self.boundary.coeffs):
            raise ValueError("boundary coefficients must be non-negative")

    @classmethod
    def trivial(cls, fan):
        return cls(fan, TorusDivisor(fan, (0,) * len(fan.rays)))


@dataclass(frozen=True)
class DiscrepancyReport:
    cls: str
    witnesses: tuple  # ((v, discrepancy), ...) for exceptional v with discrepancy <= 0
    min_witness: tuple | None

    def at_least(self, name):
        return CLASSES.index(self.cls) <= CLASSES.index(name)


def _log_function(pair):
    """Per-cone functionals m with <m, v_rho> = 1 - d_rho."""
    KD = canonical(pair.fan) + pair.boundary
    sd = support_data(KD)
    if not sd.q_cartier:
        raise NotQCartier("K + Delta is not Q-Cartier")
    return sd.functionals


def log_discrepancy(pair, v):
    """Discrepancy a(E_v; X, Delta) of the toric divisor of primitive v."""
    v = tuple(v)
    ms = _log_function(pair)
    for ci in range(len(pair.fan.cones)):
        if pair.fan.cone_contains(ci, v):
            return dot(ms[ci], v) - 1
    raise OutsideSupport(f"{v} is outside the support")


def _slab_points(fan, ci, m, level):
    """Lattice points v != 0 of cone ci with <m, v> <= level."""
    cons = [(u, 0) for u, _ in fan.facets(ci)]
    cons.append((tuple(-a for a in m), level))
    poly = RationalPolytope.from_inequalities(cons, dim=fan.dim)
    return [p for p in lattice_points(poly) if any(p)]


def classify_pair(pair):
    """Classify a toric pair as terminal, canonical, klt, lc or worse."""
    fan = pair.fan
    ms = _log_function(pair)
    d = pair.boundary.coeffs
    gp = pair.general_part
    cap = None
    if gp is not None:
        if gp.coefficient > 1:
            return DiscrepancyReport("worse", (), None)
        if gp.coefficient == 1:
            cap = "lc"
    if any(x > 1 for x in d):
        return DiscrepancyReport("worse", (), None)
    if any(x == 1 for x in d):
        return DiscrepancyReport("lc", (), None)
    rays = set(fan.rays)
    seen = {}
    for ci in range(len(fan.cones)):
        for p in _slab_points(fan, ci, ms[ci], 1):
            if p in rays or p in seen or not is_primitive(p):
                continue
            seen[p] = dot(ms[ci], p) - 1
    witnesses = tuple(sorted(seen.items()))
    if witnesses:
        lowest = min(witnesses, key=lambda t: (t[1], t[0]))
    else:
        lowest = _min_witness_beyond(fan, ms, rays)
    if not witnesses:
        cls = "terminal"
    elif all(a >= 0 for _, a in witnesses):
        cls = "canonical"
    else:
        # every d < 1 so psi > 0 away from the origin: all discrepancies > -1
        if lowest[1] <= -1:
            raise InternalConsistencyError("discrepancy <= -1 with boundary < 1")
        cls = "klt"
    if cap is not None and CLASSES.index(cls) < CLASSES.index(cap):
        cls = cap
    return DiscrepancyReport(cls, witnesses, lowest)


def _min_witness_beyond(fan, ms, rays):
    best = None
    for ci in range(len(fan.cones)):
        try:
            pts = _slab_points(fan, ci, ms[ci], 2)
        except ResourceLimit:
            continue
        for p in pts:
            if p in rays or not is_primitive(p):
                continue
            a = dot(ms[ci], p) - 1
            if best is None or (a, p) < (best[1], best[0]):
                best = (p, a)
    return best


# -- minimal terminal resolution ----------------------------------------------

def _bounded_facets(points, cone_rays):
    """Bounded facets of conv(points) + cone, as lists of the points on each."""
    d = len(cone_rays[0])
    out = {}
    for sub in combinations(points, d):
        base = sub[0]
        ker = nullspace([vsub(q, base) for q in sub[1:]], d) if d > 1 else [(Fraction(1),)]
        if len(ker) != 1:
            continue
        u = ker[0]
        c = dot(u, base)
        if c == 0:
            continue
        if c < 0:
            u, c = tuple(-a for a in u), -c
        if any(dot(u, r) <= 0 for r in cone_rays):
            continue
        if any(dot(u, q) < c for q in points):
            continue
        on = tuple(sorted(q for q in points if dot(u, q) == c))
        out[on] = True
    return list(out)


def _extreme_points(pts):
    """Points of ``pts`` spanning extreme rays of the cone they generate."""
    out = []
    for p in pts:
        others = [q for q in pts if q != p]
        if not others:
            out.append(p)
            continue
        A = [list(col) for col in zip(*others)]
        if nonneg_solution(A, list(p)) is None:
            out.append(p)
    return out


@dataclass(frozen=True)
class MintCertificate:
    refines: bool
    terminal: bool
    relatively_nef: bool
    extracted: tuple  # ((ray, discrepancy over X), ...)

    @property
    def valid(self):
        return self.refines and self.terminal and self.relatively_nef


def minimal_terminal_resolution(X):
    """Q-factorial terminal refinement with K relatively nef.

    Per cone sigma, take the primitive lattice points with discrepancy <= 0
    (psi <= 1), cone over the bounded faces of conv(points) + sigma, then make
    every lattice point on those faces a ray (pulling triangulation followed by
    star subdivisions in lexicographic order).
    """
    K = canonical(X)
    sd = support_data(K)
    if not sd.q_cartier:
        raise NotQCartier("K_X is not Q-Cartier")
    ms = sd.functionals  # <m, v_rho> = 1 on the cone
    on_faces = set()
    cones = []
    for ci, c in enumerate(X.cones):
        pts = [p for p in _slab_points(X, ci, ms[ci], 1) if is_primitive(p)]
        cone_rays = X.cone_vectors(c)
        for face in _bounded_facets(pts, cone_rays):
            on_faces.update(face)
            cones.append(tuple(sorted(_extreme_points(list(face)))))
    rays = list(X.rays) + sorted({v for cone in cones for v in cone} - set(X.rays))
    index = {v: i for i, v in enumerate(rays)}
    hull_fan = make_fan(rays, [[index[v] for v in cone] for cone in cones])
    fan = pulling_triangulation(hull_fan)
    for v in sorted(on_faces - set(fan.rays)):
        fan = star_subdivision(fan, v)
    return fan, _mint_certificate(X, fan)


def _mint_certificate(X, Xm):
    from .fan import refines
    ref = refines(Xm, X)
    rep = classify_pair(LogPair.trivial(Xm))
    base = LogPair.trivial(X)
    extracted = tuple(sorted((v, log_discrepancy(base, v)) for v in Xm.rays if v not in set(X.rays)))
    if any(a > 0 for _, a in extracted):
        raise InternalConsistencyError("extracted a divisor of positive discrepancy")
    nef = True
    for w in walls(Xm):
        cone_ids = w.facet_ray_ids
        p = tuple(sum(Xm.rays[i][j] for i in cone_ids) for j in range(Xm.dim))
        if len(X.locate(p)) and rank(X.cone_vectors(X.locate(p))) == X.dim:
            # wall curve is contracted to a point of X: need K . C >= 0
            if -sum(b for _, b in w.relation) < 0:
                nef = False
    return MintCertificate(ref, rep.cls == "terminal", nef, extracted)


# -- Calabi-Yau boundary ---------------------------------------------------------

@dataclass(frozen=True)
class CYBoundary:
    """A klt Calabi-Yau boundary N + (1/m1) G with G general in |m1 P|."""
    pair: LogPair
    multiple: int
    n_below_one: bool
    n_pair_klt: bool
    p_semiample: bool
    principal: tuple | None  # character m' with K + Delta_torus = div(chi^m')

    @property
    def valid(self):
        return self.n_below_one and self.n_pair_klt and self.p_semiample and self.principal is not None

    def describe(self):
        gp = self.pair.general_part
        parts = [f"{a}*D{v}" for v, a in zip(self.pair.fan.rays, self.pair.boundary.coeffs) if a]
        parts.append(f"{gp.coefficient}*|{gp.multiple}P| general member")
        return " + ".join(parts)


def construct_klt_cy_boundary(X):
    """Delta = N + (1/m1) G with G a general member of |m1 P|, -K_X = P + N."""
    from .zariski import good_zariski
    gz = good_zariski(anticanonical(X))
    if gz is None:
        raise ZariskiAbsent("-K_X has no good Zariski decomposition on this fan")
    P, N = gz.P, gz.N
    if any(a >= 1 for a in N.coeffs):
        raise NotKltCandidate("negative part has a coefficient >= 1")
    pos = positivity(P)
    c = pos.cartier_index
    m1 = c if c >= 2 else 2
    pair = LogPair(X, N, GeneralPart(m1, Fraction(1, m1), P))
    n_klt = classify_pair(LogPair(X, N)).at_least("klt")
    # K + N + (1/m1)(div(chi^m0) + m1 P) for a lattice point m0 of P_{m1 P}
    m0 = polytope_of(P * m1).vertices()[0]
    coeffs = [Fraction(-1) + n + (dot(m0, v) + m1 * p) / m1
              for v, n, p in zip(X.rays, N.coeffs, P.coeffs)]
    principal = solve([list(v) for v in X.rays], coeffs)
    return CYBoundary(pair, m1, all(a < 1 for a in N.coeffs), n_klt, pos.semiample, principal)
