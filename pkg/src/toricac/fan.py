"""Rational polyhedral fans.

A fan is stored by its maximal cones only, each a sorted tuple of indices into
the ray table. Lower-dimensional faces are derived when needed. Equality is
up to re-indexing of rays, never up to lattice automorphism; use
:func:`unimodular_equivalent` for the latter.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations, permutations

from .errors import (DimensionMismatch, DuplicateRay, NotAFan, NotFullDimensional,
                     NotSimplicial, NotStronglyConvex, OutsideSupport, RayExists,
                     TriangulationFailure)
from .rational import (Q, dot, feasible_point, int_det, integral_direction, nullspace,
                       primitive, rank, solve)


@dataclass(frozen=True, eq=False)
class Fan:
    dim: int
    rays: tuple
    cones: tuple
    complete: bool = False
    simplicial: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    # -- identity ---------------------------------------------------------
    def key(self):
        return (self.dim, frozenset(self.rays),
                frozenset(frozenset(self.rays[i] for i in c) for c in self.cones))

    def __eq__(self, other):
        return isinstance(other, Fan) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Fan(dim={self.dim}, rays={list(self.rays)}, cones={list(self.cones)})"

    # -- lookups ----------------------------------------------------------
    def ray_index(self, v):
        idx = self._cache.get("ray_index")
        if idx is None:
            idx = self._cache["ray_index"] = {r: i for i, r in enumerate(self.rays)}
        return idx.get(tuple(v))

    def cone_vectors(self, cone):
        return [self.rays[i] for i in cone]

    def facets(self, ci):
        """Facets of maximal cone ``ci`` as (inner normal, frozenset of ray ids)."""
        cache = self._cache.setdefault("facets", {})
        if ci not in cache:
            cache[ci] = _cone_facets(self.rays, self.cones[ci], self.dim)
        return cache[ci]

    def cone_contains(self, ci, v):
        return all(dot(u, v) >= 0 for u, _ in self.facets(ci))

    def cones_containing(self, v):
        return [ci for ci in range(len(self.cones)) if self.cone_contains(ci, v)]

    def locate(self, v):
        """Ray ids of the smallest cone of the fan containing ``v``."""
        for ci, c in enumerate(self.cones):
            if self.cone_contains(ci, v):
                face = set(c)
                for u, tight in self.facets(ci):
                    if dot(u, v) == 0:
                        face &= tight
                return tuple(sorted(face))
        raise OutsideSupport(f"{tuple(v)} is not in the support of the fan")

    def faces(self):
        """All nonzero cones of a simplicial fan, as sorted ray-id tuples."""
        if not self.simplicial:
            raise NotSimplicial("faces() enumerates subsets of simplicial cones only")
        out = set()
        for c in self.cones:
            for k in range(1, len(c) + 1):
                out.update(combinations(c, k))
        return sorted(out, key=lambda t: (len(t), t))

    def coordinates(self, ci, v):
        """Coefficients of ``v`` in the basis of simplicial cone ``ci``."""
        vecs = self.cone_vectors(self.cones[ci])
        cols = [list(r) for r in zip(*vecs)]
        return solve(cols, list(v))

    def star(self, ray_id):
        return [ci for ci, c in enumerate(self.cones) if ray_id in c]


def _cone_facets(rays, cone, d):
    vecs = [rays[i] for i in cone]
    if rank(vecs) != d:
        raise NotAFan(f"cone {cone} is not full-dimensional")
    if len(cone) == d:
        return _simplicial_facets(vecs, cone, d)
    out = {}
    if d == 1:
        u = primitive(vecs[0])
        if any(dot(u, v) < 0 for v in vecs):
            raise NotStronglyConvex(f"cone {cone} contains a line")
        return ((u, frozenset()),)
    for sub in combinations(range(len(vecs)), d - 1):
        rows = [vecs[i] for i in sub]
        if rank(rows) != d - 1:
            continue
        k = nullspace(rows, d)[0]
        vals = [dot(k, v) for v in vecs]
        if all(x >= 0 for x in vals):
            pass
        elif all(x <= 0 for x in vals):
            k = tuple(-a for a in k)
        else:
            continue
        u = integral_direction(k)
        if u in out:
            continue
        out[u] = frozenset(cone[i] for i, v in enumerate(vecs) if dot(u, v) == 0)
    if rank(list(out)) != d:
        raise NotStronglyConvex(f"cone {cone} contains a line")
    for i, v in zip(cone, vecs):
        tight = [u for u, t in out.items() if i in t]
        if rank(tight) != d - 1:
            raise NotAFan(f"ray {v} is not an extreme ray of cone {cone}")
    return tuple(sorted(out.items()))


def _simplicial_facets(vecs, cone, d):
    # the facet opposite ray i is normal to the other d-1 rays: cofactor vector
    out = []
    for i in range(d):
        rows = [vecs[j] for j in range(d) if j != i]
        u = tuple((-1) ** k * int_det([r[:k] + r[k + 1:] for r in rows]) for k in range(d))
        if dot(u, vecs[i]) < 0:
            u = tuple(-a for a in u)
        out.append((primitive(u), frozenset(cone[j] for j in range(d) if j != i)))
    return tuple(sorted(out))


def make_fan(rays, cones, check_faces=True):
    """Primitivize rays, sort cone indices and run :func:`validate`.

    ``check_faces=False`` skips the pairwise face-condition LPs for fans that
    are fans by construction (normal fans of polytopes).
    """
    rays = tuple(primitive(r) for r in rays)
    dim = len(rays[0]) if rays else 0
    cones = tuple(sorted(set(tuple(sorted(c)) for c in cones)))
    return validate(Fan(dim, rays, cones), check_faces)


def validate(fan, check_faces=True):
    """Check the fan axioms and return the fan with complete/simplicial flags set."""
    d = fan.dim
    if not fan.rays:
        raise NotAFan("no rays")
    if any(len(r) != d for r in fan.rays):
        raise NotAFan("rays of mixed dimension")
    rays = tuple(primitive(r) for r in fan.rays)
    if len(set(rays)) != len(rays):
        raise DuplicateRay("two rays have the same primitive generator")
    cones = tuple(sorted(set(tuple(sorted(c)) for c in fan.cones)))
    if len(cones) != len(fan.cones):
        raise NotAFan("repeated maximal cone")
    for c in cones:
        if len(set(c)) != len(c) or any(not 0 <= i < len(rays) for i in c):
            raise NotAFan(f"bad ray indices in cone {c}")
    used = set().union(*cones) if cones else set()
    if used != set(range(len(rays))):
        raise NotAFan("some ray lies in no maximal cone")
    f = Fan(d, rays, cones)
    for ci in range(len(cones)):
        f.facets(ci)
    simplicial = all(len(c) == d for c in cones)
    if simplicial and _complete_simplicial_ok(f):
        complete = True
    else:
        if check_faces:
            _check_face_condition(f)
        complete = _all_facets_shared(f)
    return Fan(d, rays, cones, complete, simplicial, f._cache)


def _facet_pairs(f):
    pairs = {}
    for ci in range(len(f.cones)):
        for u, tight in f.facets(ci):
            pairs.setdefault(tight, []).append((ci, u))
    return pairs


def _complete_simplicial_ok(f):
    """Fast exact test for complete simplicial fans.

    Every facet must border exactly two cones lying on opposite sides, and a
    generic interior point of one cone must lie in no other cone. Together
    these force the cones to tile space with the face condition.
    """
    d = f.dim
    for tight, lst in _facet_pairs(f).items():
        if len(lst) != 2:
            return False
        (c1, u1), (c2, u2) = lst
        if u1 != tuple(-a for a in u2):
            return False
    c0 = f.cones[0]
    p = tuple(sum((k + 1) * f.rays[i][j] for k, i in enumerate(c0)) for j in range(d))
    return len(f.cones_containing(p)) == 1


def _check_face_condition(f):
    """Every pair of maximal cones meets in a common face (exact LP separation)."""
    for a, b in combinations(range(len(f.cones)), 2):
        ca, cb = set(f.cones[a]), set(f.cones[b])
        common = ca & cb
        eq = [(f.rays[i], 0) for i in sorted(common)]
        ge = [(f.rays[i], 1) for i in sorted(ca - common)]
        ge += [(tuple(-x for x in f.rays[i]), 1) for i in sorted(cb - common)]
        if feasible_point(eq=eq, ge=ge) is None:
            raise NotAFan(f"cones {f.cones[a]} and {f.cones[b]} do not meet in a common face")


def _all_facets_shared(f):
    for ci in range(len(f.cones)):
        for _, tight in f.facets(ci):
            others = [cj for cj, c in enumerate(f.cones) if cj != ci and tight <= set(c)]
            if len(others) != 1:
                return False
    return True


# -- operations -------------------------------------------------------------

def star_subdivision(fan, v):
    """Blow up: subdivide every cone containing ``v`` by joining ``v`` to its facets."""
    v = primitive(v)
    if fan.ray_index(v) is not None:
        raise RayExists(f"{v} is already a ray")
    hit = fan.cones_containing(v)
    if not hit:
        raise OutsideSupport(f"{v} is not in the support of the fan")
    new = len(fan.rays)
    cones = [c for ci, c in enumerate(fan.cones) if ci not in hit]
    for ci in hit:
        for u, tight in fan.facets(ci):
            if dot(u, v) > 0:
                cones.append(tuple(sorted(tight)) + (new,))
    return make_fan(fan.rays + (v,), cones)


def refines(fine, coarse):
    """True iff every maximal cone of ``fine`` lies in a maximal cone of ``coarse``."""
    if fine.dim != coarse.dim:
        raise DimensionMismatch(f"dimensions {fine.dim} and {coarse.dim}")
    for c in fine.cones:
        vecs = fine.cone_vectors(c)
        if not any(all(coarse.cone_contains(cj, v) for v in vecs)
                   for cj in range(len(coarse.cones))):
            return False
    return True


def normal_fan(p):
    """Inner normal fan of a full-dimensional polytope: one cone per vertex."""
    if not p.is_full_dimensional():
        raise NotFullDimensional("normal fan needs a full-dimensional polytope")
    facets = p.facets()
    rays = [u for u, _ in facets]
    cones = []
    for m in p.vertices():
        cones.append([i for i, (u, o) in enumerate(facets) if dot(u, m) == -o])
    return make_fan(rays, cones, check_faces=False)


@dataclass(frozen=True)
class Wall:
    """Interior facet shared by two maximal simplicial cones.

    ``relation`` maps ray ids to integer coefficients b with sum b_i v_i = 0,
    normalized to a primitive integer vector with b_left > 0.
    """
    facet_ray_ids: tuple
    left_ray_id: int
    right_ray_id: int
    relation: tuple  # ((ray_id, coefficient), ...) sorted by ray id

    def coeff(self, i):
        return dict(self.relation).get(i, 0)

    @property
    def ray_ids(self):
        return tuple(i for i, _ in self.relation)

    def negatives(self):
        return frozenset(i for i, b in self.relation if b < 0)

    def positives(self):
        return frozenset(i for i, b in self.relation if b > 0)


def circuit_relation(vectors):
    """Primitive integer generator of the 1-dim kernel, first entry made positive."""
    cols = [list(r) for r in zip(*vectors)]
    ker = nullspace(cols, len(vectors))
    if len(ker) != 1:
        raise NotSimplicial("vectors do not form a circuit")
    k = ker[0]
    b = integral_direction(k)
    if b[0] < 0:
        b = tuple(-x for x in b)
    return b


def walls(fan):
    """One :class:`Wall` per interior facet of a complete simplicial fan."""
    if not fan.simplicial:
        raise NotSimplicial("walls need a simplicial fan")
    if "walls" in fan._cache:
        return fan._cache["walls"]
    by_facet = {}
    for ci, c in enumerate(fan.cones):
        for i in c:
            by_facet.setdefault(tuple(x for x in c if x != i), []).append((ci, i))
    out = []
    for facet, lst in sorted(by_facet.items()):
        if len(lst) != 2:
            continue
        (_, left), (_, right) = sorted(lst)
        ids = (left, right) + facet
        b = circuit_relation([fan.rays[i] for i in ids])
        if b[1] <= 0:
            raise NotAFan(f"cones across facet {facet} lie on the same side")
        out.append(Wall(facet, left, right, tuple(sorted(zip(ids, b)))))
    fan._cache["walls"] = tuple(out)
    return fan._cache["walls"]


# -- triangulations -----------------------------------------------------------

def _lex_order(fan):
    return {i: (fan.rays[i], i) for i in range(len(fan.rays))}


def _face_facets(fan, ci, face):
    """Facets of a face (ray-id set) of maximal cone ``ci``."""
    k = rank(fan.cone_vectors(sorted(face)))
    cands = set()
    for _, tight in fan.facets(ci):
        sub = frozenset(face) & tight
        if sub != frozenset(face) and sub and rank(fan.cone_vectors(sorted(sub))) == k - 1:
            cands.add(sub)
    if k == 1:
        cands = {frozenset()}
    return cands


def _pull(fan, ci, face, order):
    face = frozenset(face)
    k = rank(fan.cone_vectors(sorted(face)))
    if len(face) == k:
        return [face]
    apex = min(face, key=order.__getitem__)
    out = []
    for g in _face_facets(fan, ci, face):
        if apex in g:
            continue
        for t in _pull(fan, ci, g, order):
            out.append(t | {apex})
    return out


def pulling_triangulation(fan):
    """Simplicial refinement on the same rays: pull every non-simplicial cone at
    its lexicographically least ray (ties by ray index), recursively on faces.
    """
    if fan.simplicial:
        return fan
    order = _lex_order(fan)
    cones = []
    for ci, c in enumerate(fan.cones):
        if len(c) == fan.dim:
            cones.append(c)
        else:
            cones.extend(tuple(sorted(t)) for t in _pull(fan, ci, c, order))
    out = make_fan(fan.rays, cones)
    if not out.simplicial or set(out.rays) != set(fan.rays):
        raise TriangulationFailure("pulling triangulation did not produce a simplicial fan")
    return out


def bistellar_flip(fan, wall_list):
    """Replace the positive-side triangulation of each circuit by the negative side.

    For each wall the union U of its two cones is retriangulated: cones
    ``U - {j}`` for positive j are removed, ``U - {j}`` for negative j added.
    """
    cones = set(fan.cones)
    for w in wall_list:
        U = set(w.facet_ray_ids) | {w.left_ray_id, w.right_ray_id}
        for j in w.positives():
            cones.discard(tuple(sorted(U - {j})))
        for j in w.negatives():
            cones.add(tuple(sorted(U - {j})))
    return make_fan(fan.rays, cones)


def flippable_walls(fan):
    """Walls whose circuit admits a bistellar flip keeping the ray set (|J-| >= 2)."""
    return [w for w in walls(fan) if len(w.negatives()) >= 2]


# -- construction helpers -----------------------------------------------------

def _angle_cmp(u, v):
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1
    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def fan_from_rays_2d(rays):
    """The complete 2-dimensional fan whose cones join angularly adjacent rays."""
    rays = [primitive(r) for r in rays]
    order = sorted(range(len(rays)), key=cmp_to_key(lambda a, b: _angle_cmp(rays[a], rays[b])))
    cones = [(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]
    return make_fan(rays, cones)


def face_fan(points):
    """Fan over the proper faces of conv(points); origin must be interior."""
    from .polytope import RationalPolytope
    pts = [tuple(p) for p in points]
    hull = RationalPolytope.from_points(pts)
    if not hull.contains(tuple(0 for _ in pts[0])) or any(o <= 0 for _, o in hull.facets()):
        raise NotAFan("origin is not an interior point of the hull")
    verts = [tuple(int(a) for a in v) for v in hull.vertices()]
    cones = []
    for u, o in hull.facets():
        cones.append([i for i, v in enumerate(verts) if dot(u, v) == -o])
    return make_fan(verts, cones)


def unimodular_equivalent(f, g):
    """Decide whether some GL(n, Z) map carries fan ``f`` onto fan ``g``."""
    if f.dim != g.dim or len(f.rays) != len(g.rays) or len(f.cones) != len(g.cones):
        return False
    d = f.dim
    base = f.cones[0][:d]
    src = [f.rays[i] for i in base]
    if rank(src) != d:
        base = next(b for b in combinations(range(len(f.rays)), d)
                    if rank([f.rays[i] for i in b]) == d)
        src = [f.rays[i] for i in base]
    target = g.key()
    for img in permutations(range(len(g.rays)), d):
        dst = [g.rays[i] for i in img]
        # solve M src_k = dst_k, row by row
        M = []
        for r in range(d):
            row = solve([list(s) for s in src], [t[r] for t in dst])
            if row is None:
                break
            M.append(row)
        else:
            if any(Fraction(x).denominator != 1 for row in M for x in row):
                continue
            Mi = [[int(x) for x in row] for row in M]
            from .rational import det
            if abs(det(Mi)) != 1:
                continue
            def apply(v):
                return tuple(sum(Mi[r][c] * v[c] for c in range(d)) for r in range(d))
            image = Fan(d, tuple(apply(v) for v in f.rays), f.cones)
            if image.key() == target:
                return True
    return False
