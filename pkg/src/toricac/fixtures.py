"""Named example fans and a seeded random corpus of complete simplicial fans."""
import random
from math import gcd

from .fan import (bistellar_flip, face_fan, fan_from_rays_2d, flippable_walls, make_fan,
                  pulling_triangulation, star_subdivision)
from .errors import ToricError


def p2():
    return make_fan([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (2, 0)])


def f1():
    return star_subdivision(p2(), (1, 1))


def hirzebruch(a):
    return fan_from_rays_2d([(1, 0), (0, 1), (-1, a), (0, -1)])


def p112():
    return fan_from_rays_2d([(1, 0), (-1, 2), (0, -1)])


def p113():
    return fan_from_rays_2d([(1, 0), (0, 1), (-1, -3)])


def p113_blowup():
    """P(1,1,3) with the klt ray (0,-1) extracted; -K is big but not nef."""
    return fan_from_rays_2d([(1, 0), (0, 1), (-1, -3), (0, -1)])


def corner_fano():
    """Toric Fano surface with a 1/8(1,3) point and a 1/3(1,1) point."""
    return fan_from_rays_2d([(0, 1), (8, -3), (-1, 0), (0, -1)])


def corner_resolution():
    """Minimal resolution of :func:`corner_fano`."""
    return fan_from_rays_2d([(0, 1), (1, 0), (3, -1), (8, -3), (5, -2), (2, -1), (1, -1),
                             (0, -1), (-1, 0)])


def corner_redundant_blowup():
    """:func:`corner_resolution` blown up at the crepant point (4,-1)."""
    return star_subdivision(corner_resolution(), (4, -1))


def p1p1():
    return fan_from_rays_2d([(1, 0), (0, 1), (-1, 0), (0, -1)])


def p3():
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
    return make_fan(rays, [c for c in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))])


def cone_over_square():
    """Complete 3D fan with one non-simplicial cone over a square."""
    rays = [(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1), (0, 0, -1)]
    return make_fan(rays, [(0, 2, 1, 3), (0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4)])


def flip_circuit():
    """Complete simplicial 3D fan containing the circuit 2a + 2d = b + c with both
    cones (a, b, c) and (b, c, d), so the wall (b, c) has two negative rays."""
    pts = [(0, 0, 1), (1, 0, 0), (1, 2, 0), (1, 1, -1), (-1, 0, 0), (-1, -1, 0), (0, -1, -1), (-1, 1, 1)]
    return pulling_triangulation(face_fan(pts))


NAMED = {
    "P2": p2, "F1": f1, "F2": lambda: hirzebruch(2), "P1xP1": p1p1, "P112": p112, "P113": p113,
    "P113_blowup": p113_blowup, "Y_E": corner_fano, "Xp_E": corner_resolution,
    "X_E": corner_redundant_blowup, "P3": p3, "cone_over_square": cone_over_square,
}


# -- random corpus ------------------------------------------------------------------

def _random_primitive(rng, dim, box):
    while True:
        v = tuple(rng.randint(-box, box) for _ in range(dim))
        g = 0
        for a in v:
            g = gcd(g, a)
        if g == 1:
            return v


def random_fan_2d(rng, n_rays=None, box=3):
    """Complete 2D fan on random primitive rays, redrawn until the rays span positively."""
    n = n_rays or rng.randint(3, 7)
    while True:
        rays = {_random_primitive(rng, 2, box) for _ in range(n)}
        rays = sorted(rays)
        try:
            f = fan_from_rays_2d(rays)
        except ToricError:
            continue
        if f.complete:
            return f


def random_fan_3d(rng, n_points=None, box=2, subdivisions=None, flips=None):
    """Face fan of random lattice points, optionally star-subdivided and flipped."""
    while True:
        n = n_points or rng.randint(5, 7)
        pts = sorted({_random_primitive(rng, 3, box) for _ in range(n)})
        try:
            f = face_fan(pts)
        except ToricError:
            continue
        if not f.simplicial:
            continue
        k = rng.randint(0, 1) if subdivisions is None else subdivisions
        for _ in range(k):
            ci = rng.randrange(len(f.cones))
            v = tuple(sum(f.rays[i][j] for i in f.cones[ci]) for j in range(3))
            try:
                f = star_subdivision(f, v)
            except ToricError:
                pass
        m = rng.randint(0, 1) if flips is None else flips
        for _ in range(m):
            ws = flippable_walls(f)
            if not ws:
                break
            try:
                g = bistellar_flip(f, [rng.choice(ws)])
            except ToricError:
                continue
            if g.complete and g.simplicial:
                f = g
        return f


def random_corpus(n=50, seed=20240601, dims=(2, 3)):
    """Deterministic list of ``n`` complete simplicial fans alternating over ``dims``."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        d = dims[len(out) % len(dims)]
        out.append(random_fan_2d(rng) if d == 2 else random_fan_3d(rng))
    return out
