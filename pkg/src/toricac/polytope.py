"""Bounded rational polytopes in inequality form.

A polytope is a list of half-spaces ``<m, normal> >= -offset``; this is the
shape in which divisor polytopes ``P_D = {m : <m, v_rho> >= -a_rho}`` arise.
Vertices are found by intersecting every d-subset of constraint hyperplanes,
which is fine for the few dozen constraints the toric code produces.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from functools import lru_cache
from math import ceil, floor, gcd, prod

from . import config
from .errors import Empty, NotFullDimensional, ResourceLimit, Unbounded
from .rational import Q, dot, int_det, integer_rows, integral_direction, nullspace, rank, row_reduce, vsub


@dataclass(frozen=True, eq=False)
class RationalPolytope:
    dim: int
    h_rep: tuple  # ((normal, offset), ...) meaning <m, normal> >= -offset
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_inequalities(cls, pairs, dim=None):
        pairs = tuple((tuple(Q(a) for a in n), Q(o)) for n, o in pairs)
        if not pairs:
            raise ValueError("a polytope needs at least one inequality")
        return cls(dim if dim is not None else len(pairs[0][0]), pairs)

    @classmethod
    def from_points(cls, points):
        """Convex hull of full-dimensional rational points."""
        pts = [tuple(Q(a) for a in p) for p in points]
        return cls.from_inequalities(hull_facets(pts), dim=len(pts[0]))

    def contains(self, m):
        return all(dot(n, m) >= -o for n, o in self.h_rep)

    def vertices(self):
        if "v" not in self._cache:
            self._cache["v"] = _vertices(self.dim, self.h_rep)
        return self._cache["v"]

    def is_empty(self):
        try:
            self.vertices()
        except Empty:
            return True
        return False

    def affine_dim(self):
        try:
            vs = self.vertices()
        except Empty:
            return -1
        return rank([vsub(v, vs[0]) for v in vs[1:]]) if len(vs) > 1 else 0

    def is_full_dimensional(self):
        return self.affine_dim() == self.dim

    def facets(self):
        """Irredundant inequalities as (primitive integer normal, offset), sorted."""
        if "f" in self._cache:
            return self._cache["f"]
        if not self.is_full_dimensional():
            raise NotFullDimensional("facets are only defined for full-dimensional polytopes")
        vs = self.vertices()
        out = {}
        for n, o in self.h_rep:
            tight = [v for v in vs if dot(n, v) == -o]
            if len(tight) < self.dim:
                continue
            if rank([vsub(v, tight[0]) for v in tight[1:]]) != self.dim - 1:
                continue
            u = integral_direction(n)
            # rescale offset to the primitive normal
            scale = next(Fraction(a) / b for a, b in zip(u, n) if b != 0)
            out[u] = o * scale
        self._cache["f"] = tuple(sorted(out.items()))
        return self._cache["f"]

    def dilate(self, m):
        return RationalPolytope(self.dim, tuple((n, o * m) for n, o in self.h_rep))

    def translate(self, t):
        """The shifted polytope P + t."""
        # <x - t, n> >= -o  <=>  <x, n> >= -(o - <t, n>)
        return RationalPolytope(self.dim, tuple((n, o - dot(n, t)) for n, o in self.h_rep))

    def same_points(self, other):
        """Exact equality of point sets (vertex-set comparison)."""
        a, b = self.is_empty(), other.is_empty()
        if a or b:
            return a and b
        return self.vertices() == other.vertices()

    def __repr__(self):
        try:
            vs = self.vertices()
            body = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in vs)
            return f"RationalPolytope[{body}]"
        except (Empty, Unbounded) as e:
            return f"RationalPolytope<{type(e).__name__}>"


def _full_rank_vertices(d, cons):
    # integer Cramer's rule: vertex = nums / den for each nonsingular d-subset
    rows = integer_rows(cons)
    found = set()
    seen = set()
    for idx in combinations(range(len(rows)), d):
        A = [rows[i][0] for i in idx]
        den = int_det(A)
        if den == 0:
            continue
        rhs = [-rows[i][1] for i in idx]
        nums = []
        for j in range(d):
            Aj = [r[:j] + (b,) + r[j + 1:] for r, b in zip(A, rhs)]
            nums.append(int_det(Aj))
        if den < 0:
            den, nums = -den, [-a for a in nums]
        key = tuple(nums) + (den,)
        g = gcd(den, *nums)
        key = tuple(a // g for a in key)
        if key in seen:
            continue
        seen.add(key)
        # <a, nums/den> >= -b  <=>  <a, nums> + b den >= 0  (den > 0)
        if all(sum(x * y for x, y in zip(a, nums)) + b * den >= 0 for a, b in rows):
            found.add(tuple(Fraction(a, den) for a in nums))
    return found


@lru_cache(maxsize=4096)
def _vertices(d, cons):
    normals = [n for n, _ in cons]
    r = rank(normals)
    if r < d:
        # lineality space: pin the non-pivot coordinates to zero, the rest is pointed
        _, keep = row_reduce(normals)
        sub = [(tuple(n[j] for j in keep), o) for n, o in cons]
        if (keep and _full_rank_vertices(len(keep), sub)) or (not keep and all(o >= 0 for _, o in cons)):
            raise Unbounded("polyhedron contains a line")
        raise Empty("infeasible system")
    verts = _full_rank_vertices(d, cons)
    if not verts:
        raise Empty("infeasible system")
    # pointed: bounded iff the recession cone {x : Ax >= 0} is zero; its extreme
    # rays are kernels of (d-1)-subsets of rows
    for idx in combinations(range(len(cons)), d - 1):
        rows = [normals[i] for i in idx]
        ker = nullspace(rows, d) if rows else nullspace([], d)
        if len(ker) != 1:
            continue
        k = ker[0]
        for s in (1, -1):
            if all(s * dot(n, k) >= 0 for n in normals):
                raise Unbounded(f"recession direction {tuple(s * a for a in k)}")
    return tuple(sorted(verts))


def polytope_vertices(p):
    """Exact vertex set, deduplicated and sorted lexicographically."""
    return list(p.vertices())


def minimize_linear(p, v):
    """Exact minimum of <m, v> over the polytope (attained at a vertex)."""
    return min(dot(m, v) for m in p.vertices())


def lattice_points(p, max_box_volume=None):
    """All integer points of a bounded polytope, sorted.

    Scans the bounding box over all coordinates but the last, and solves for
    the admissible range of the last coordinate directly.
    """
    limit = config.settings.max_box_volume if max_box_volume is None else max_box_volume
    try:
        vs = p.vertices()
    except Empty:
        return []
    d = p.dim
    lo = [ceil(min(v[i] for v in vs)) for i in range(d)]
    hi = [floor(max(v[i] for v in vs)) for i in range(d)]
    if any(a > b for a, b in zip(lo, hi)):
        return []
    volume = prod(b - a + 1 for a, b in zip(lo, hi))
    if volume > limit:
        raise ResourceLimit(f"bounding box holds {volume} points (limit {limit})")
    out = []
    ranges = [range(a, b + 1) for a, b in zip(lo[:-1], hi[:-1])]
    # integer rows: <x, n> + o >= 0 with n, o integral
    rows = integer_rows(p.h_rep)
    for head in product(*ranges):
        zlo, zhi = lo[-1], hi[-1]
        ok = True
        for n, o in rows:
            rest = sum(a * x for a, x in zip(n, head)) + o
            c = n[-1]
            # c z + rest >= 0
            if c > 0:
                zlo = max(zlo, -(rest // c))
            elif c < 0:
                zhi = min(zhi, rest // -c)
            elif rest < 0:
                ok = False
                break
        if ok:
            out.extend(head + (z,) for z in range(zlo, zhi + 1))
    return out


def hull_facets(points):
    """Facet inequalities (primitive integer normal, offset) of a full-dimensional hull."""
    pts = sorted(set(tuple(Q(a) for a in p) for p in points))
    d = len(pts[0])
    if rank([vsub(p, pts[0]) for p in pts[1:]]) != d:
        raise NotFullDimensional("points do not span the ambient space affinely")
    out = {}
    for idx in combinations(range(len(pts)), d):
        base = pts[idx[0]]
        rows = [vsub(pts[i], base) for i in idx[1:]]
        ker = nullspace(rows, d)
        if len(ker) != 1:
            continue
        u = ker[0]
        vals = [dot(u, p) - dot(u, base) for p in pts]
        if all(x >= 0 for x in vals):
            pass
        elif all(x <= 0 for x in vals):
            u = tuple(-a for a in u)
        else:
            continue
        n = integral_direction(u)
        out[n] = -dot(n, base)
    return sorted(out.items())
