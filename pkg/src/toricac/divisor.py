"""Torus-invariant Q-divisors D = sum a_rho D_rho and their positivity."""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import InternalConsistencyError, NonIntegral
from .fan import normal_fan, refines
from .polytope import RationalPolytope, lattice_points, minimize_linear
from .rational import Q, denominator_lcm, dot, solve


@dataclass(frozen=True)
class TorusDivisor:
    fan: object
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != len(self.fan.rays):
            raise ValueError(f"{len(self.coeffs)} coefficients for {len(self.fan.rays)} rays")
        object.__setattr__(self, "coeffs", tuple(Q(a) for a in self.coeffs))

    def __add__(self, other):
        return TorusDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return TorusDivisor(self.fan, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TorusDivisor(self.fan, tuple(-a for a in self.coeffs))

    def __mul__(self, c):
        c = Q(c)
        return TorusDivisor(self.fan, tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __le__(self, other):
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def __ge__(self, other):
        return all(a >= b for a, b in zip(self.coeffs, other.coeffs))

    def coefficient(self, ray):
        return self.coeffs[self.fan.ray_index(ray)]

    def is_integral(self):
        return all(a.denominator == 1 for a in self.coeffs)

    def is_effective(self):
        return all(a >= 0 for a in self.coeffs)

    def translate(self, m):
        """Linearly equivalent divisor D + div(chi^m)."""
        return TorusDivisor(self.fan, tuple(a + dot(m, v) for a, v in zip(self.coeffs, self.fan.rays)))

    def polytope(self):
        return polytope_of(self)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.coeffs) + ")"


def anticanonical(fan):
    """-K = sum of all torus-invariant prime divisors."""
    return TorusDivisor(fan, (1,) * len(fan.rays))


def canonical(fan):
    return TorusDivisor(fan, (-1,) * len(fan.rays))


def polytope_of(D):
    return RationalPolytope.from_inequalities(
        [(v, a) for v, a in zip(D.fan.rays, D.coeffs)], dim=D.fan.dim)


@dataclass(frozen=True)
class SupportData:
    """Per-cone functionals m_sigma with <m_sigma, v_rho> = -a_rho on sigma."""
    functionals: tuple  # one per maximal cone, or None where unsolvable
    cartier_index: int | None

    @property
    def q_cartier(self):
        return all(m is not None for m in self.functionals)


def support_data(D):
    fan = D.fan
    ms = []
    for c in fan.cones:
        rows = [list(fan.rays[i]) for i in c]
        ms.append(solve(rows, [-D.coeffs[i] for i in c]))
    if any(m is None for m in ms):
        return SupportData(tuple(ms), None)
    return SupportData(tuple(ms), lcm(*(denominator_lcm(m) for m in ms)))


def support_function(D, v):
    """Value of the piecewise-linear function psi_D(v) = <m_sigma, v> on the cone of v."""
    fan = D.fan
    sd = support_data(D)
    for ci in range(len(fan.cones)):
        if fan.cone_contains(ci, v):
            m = sd.functionals[ci]
            if m is None:
                from .errors import NotQCartier
                raise NotQCartier("divisor is not Q-Cartier on the cone of v")
            return dot(m, v)
    from .errors import OutsideSupport
    raise OutsideSupport(f"{tuple(v)} is outside the support")


@dataclass(frozen=True)
class Positivity:
    q_cartier: bool
    cartier_index: int | None
    nef: bool
    big: bool
    ample: bool
    semiample: bool


def _nef_by_convexity(D, sd, P):
    # each local functional must lie in P_D, i.e. psi_D is the minimum of them
    for m in sd.functionals:
        if not P.contains(m):
            return False
    return True


def _nef_by_polytope(D, P, big):
    if P.is_empty():
        return False
    for v, a in zip(D.fan.rays, D.coeffs):
        if -minimize_linear(P, v) != a:
            return False
    if big:
        return refines(D.fan, normal_fan(P))
    # lower-dimensional P: some vertex must minimise every ray of each cone at once
    verts = P.vertices()
    for c in D.fan.cones:
        if not any(all(dot(m, D.fan.rays[i]) == -D.coeffs[i] for i in c) for m in verts):
            return False
    return True


def positivity(D):
    """Q-Cartier, nef, big, ample and semiample flags of a torus-invariant divisor.

    Nefness is computed twice, by per-cone convexity and by the polytope
    round trip, and the two must agree.
    """
    sd = support_data(D)
    P = polytope_of(D)
    big = P.is_full_dimensional()
    if not sd.q_cartier:
        return Positivity(False, None, False, big, False, False)
    nef = _nef_by_convexity(D, sd, P)
    if nef != _nef_by_polytope(D, P, big):
        raise InternalConsistencyError("nefness tests disagree")
    if nef:
        # semiample cross-check: |cD| is generated by the lattice points at the vertices
        c = sd.cartier_index
        if any(Fraction(x * c).denominator != 1 for m in P.vertices() for x in m):
            raise InternalConsistencyError("vertices of cP_D are not lattice points")
    ample = nef and big and normal_fan(P) == D.fan
    return Positivity(True, sd.cartier_index, nef, big, ample, nef)


def sections_count(D, m, max_box_volume=None):
    """dim H^0(O(mD)) = number of lattice points of P_{mD}."""
    if m == 0:
        return 1
    mD = D * m
    if not mD.is_integral():
        raise NonIntegral(f"{m}D is not an integral divisor")
    return len(lattice_points(polytope_of(mD), max_box_volume))
