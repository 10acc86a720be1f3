"""Extremal wall classes, redundancy, divisorial contractions and flips, and the
MMP relative to the anticanonical model.

A wall curve C between two simplicial cones has D_rho . C proportional to the
coefficient b_rho of the circuit relation sum b_rho v_rho = 0, with the same
positive factor for every rho. Every test below only looks at signs and zeros
of such sums, so normalization never matters.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import config
from .divisor import anticanonical, polytope_of
from .errors import (FiberType, InternalConsistencyError, IterationLimit, NonConvexStar, NotAFan,
                     NotKNegative, NotSimplicial, ZariskiAbsent)
from .fan import bistellar_flip, make_fan, walls
from .rational import nonneg_solution, rank, row_reduce


@dataclass(frozen=True)
class WallClass:
    walls: tuple
    relation: tuple  # primitive relation on the full ray set (length = #rays)
    k_dot: Fraction  # K . C up to a positive factor
    p_dot: Fraction  # D_test . C up to a positive factor
    negatives: frozenset  # ray ids with negative coefficient
    rays: tuple  # ray vectors of the fan the class lives on

    @property
    def support(self):
        return tuple(i for i, b in enumerate(self.relation) if b)

    def circuit_key(self):
        """Sorted ray vectors of the circuit; the lexicographic selection key."""
        return tuple(sorted(self.rays[i] for i in self.support))

    @property
    def kind(self):
        n = len(self.negatives)
        return "fiber" if n == 0 else ("divisorial" if n == 1 else "flip")

    def __repr__(self):
        return (f"WallClass(circuit={list(self.circuit_key())}, k_dot={self.k_dot}, "
                f"p_dot={self.p_dot}, kind={self.kind})")


def _full_relation(fan, w):
    rel = [0] * len(fan.rays)
    for i, b in w.relation:
        rel[i] = b
    g = 0
    for b in rel:
        g = gcd(g, b)
    return tuple(b // g for b in rel)


def _wall_groups(fan):
    groups = {}
    for w in walls(fan):
        groups.setdefault(_full_relation(fan, w), []).append(w)
    return groups


def _extremal(vectors):
    """Indices of vectors not in the cone generated by the others."""
    if vectors:
        # project injectively onto pivot coordinates to shrink the LPs
        _, piv = row_reduce(vectors)
        vectors = [tuple(v[j] for j in piv) for v in vectors]
    out = []
    for i, v in enumerate(vectors):
        others = [u for j, u in enumerate(vectors) if j != i]
        if not others:
            out.append(i)
            continue
        A = [list(col) for col in zip(*others)]
        if nonneg_solution(A, list(v)) is None:
            out.append(i)
    return out


def _make_class(fan, rel, ws, D):
    k = -sum(Fraction(b) for b in rel)
    p = sum(a * b for a, b in zip(D.coeffs, rel))
    neg = frozenset(i for i, b in enumerate(rel) if b < 0)
    return WallClass(tuple(ws), rel, k, p, neg, fan.rays)


def wall_classes(X, D_test):
    """All numerical classes of wall curves, without the extremality filter."""
    if not X.simplicial:
        raise NotSimplicial("wall classes need a simplicial fan")
    groups = _wall_groups(X)
    return [_make_class(X, rel, ws, D_test) for rel, ws in sorted(groups.items())]


def extremal_wall_classes(X, D_test, among=None):
    """Wall classes spanning extremal rays of the cone of wall curves.

    With ``among`` (a predicate on classes) the cone is the one spanned by the
    selected classes only, e.g. the curves contracted over a model.
    """
    classes = wall_classes(X, D_test)
    if among is not None:
        classes = [c for c in classes if among(c)]
    return [classes[i] for i in _extremal([c.relation for c in classes])]


# -- augmented base locus ----------------------------------------------------------

def bplus_locus(X, D):
    """Cones of X whose orbits lie in the exceptional locus of the morphism to
the model of D: those containing a cone whose image cone has larger dimension."""
    from .zariski import good_zariski
    gz = good_zariski(D)
    if gz is None:
        raise ZariskiAbsent("divisor has no good Zariski decomposition on this fan")
    model = gz.model
    faces = X.faces()
    drop = []
    for tau in faces:
        s = tuple(sum(X.rays[i][j] for i in tau) for j in range(X.dim))
        if rank(model.cone_vectors(model.locate(s))) > len(tau):
            drop.append(set(tau))
    # the exceptional locus is closed: add every orbit in the closure of a dropped one
    return {tau for tau in faces if any(t <= set(tau) for t in drop)}


def _positive_part(X):
    from .zariski import good_zariski
    if "positive_part" not in X._cache:
        gz = good_zariski(anticanonical(X))
        if gz is None:
            raise ZariskiAbsent("-K has no good Zariski decomposition on this fan")
        X._cache["positive_part"] = gz.P
    return X._cache["positive_part"]


def _is_terminal(X):
    from .singularities import LogPair, classify_pair
    return classify_pair(LogPair.trivial(X)).cls == "terminal"


def _is_extremal(X, wc):
    # the extremal relations of X depend only on the fan; cache them on it
    if "extremal_relations" not in X._cache:
        classes = wall_classes(X, anticanonical(X))
        X._cache["extremal_relations"] = frozenset(
            classes[i].relation for i in _extremal([c.relation for c in classes]))
    return wc.relation in X._cache["extremal_relations"]


def redundancy_tests(X, wc):
    """Both redundancy tests, computed independently: (P . C == 0, Exc in B+).

    The second entry is None for non-extremal or fiber-type classes, which
    have no birational contraction.
    """
    P = _positive_part(X)
    p_trivial = sum(a * b for a, b in zip(P.coeffs, wc.relation)) == 0
    if not wc.negatives or not _is_extremal(X, wc):
        return p_trivial, None
    if "bplus_anticanonical" not in X._cache:
        X._cache["bplus_anticanonical"] = bplus_locus(X, anticanonical(X))
    return p_trivial, tuple(sorted(wc.negatives)) in X._cache["bplus_anticanonical"]


def is_redundant(X, wc, check=True):
    """A K-negative class is redundant iff it is P-trivial, P the positive part of -K.

    For extremal classes on terminal inputs the answer is compared with the
    exceptional-locus test against the augmented base locus, and a
    disagreement raises InternalConsistencyError. Non-extremal classes have
    no contraction, so there is nothing to compare.
    """
    if wc.k_dot >= 0:
        raise NotKNegative(f"class {wc!r} is not K-negative")
    if not check or not _is_terminal(X):
        P = _positive_part(X)
        return sum(a * b for a, b in zip(P.coeffs, wc.relation)) == 0
    answer, direct = redundancy_tests(X, wc)
    if direct is not None and direct != answer:
        raise InternalConsistencyError(
            f"P-triviality ({answer}) and exceptional-locus test ({direct}) disagree "
            f"for {wc!r}")
    return answer


# -- steps -----------------------------------------------------------------------

def mmp_step(X, wc):
    """Contract or flip the class; returns (next fan, 'divisorial' | 'flip')."""
    if wc.k_dot >= 0:
        raise NotKNegative(f"class {wc!r} is not K-negative")
    neg = sorted(wc.negatives)
    if not neg:
        raise FiberType("all circuit coefficients are non-negative: fiber-type contraction")
    if len(neg) >= 2:
        return bistellar_flip(X, wc.walls), "flip"
    (rho,) = neg
    cones = {c for c in X.cones if rho not in c}
    for w in wc.walls:
        U = set(w.facet_ray_ids) | {w.left_ray_id, w.right_ray_id}
        cones.add(tuple(sorted(U - {rho})))
    keep = [i for i in range(len(X.rays)) if i != rho]
    new_id = {old: new for new, old in enumerate(keep)}
    rays = [X.rays[i] for i in keep]
    try:
        Y = make_fan(rays, [[new_id[i] for i in c] for c in cones])
    except NotAFan as e:
        raise NonConvexStar(f"star of ray {X.rays[rho]} does not re-merge: {e}") from e
    if not Y.complete:
        raise NonConvexStar(f"star of ray {X.rays[rho]} does not re-merge to a complete fan")
    return Y, "divisorial"


@dataclass(frozen=True)
class MmpStep:
    kind: str
    wall_class: WallClass
    before: object
    after: object
    model_polytope_before: object
    model_polytope_after: object


@dataclass(frozen=True)
class MmpTrace:
    steps: tuple

    def __len__(self):
        return len(self.steps)

    def removed_rays(self):
        return [sorted(set(s.before.rays) - set(s.after.rays)) for s in self.steps]


def redundant_candidates(X):
    """K-negative extremal classes of curves contracted over the anticanonical model."""
    P = _positive_part(X)
    return [c for c in extremal_wall_classes(X, P, among=lambda c: c.p_dot == 0) if c.k_dot < 0]


def redundant_mmp(X, iteration_limit=None):
    """Run redundant contractions and flips until no K-negative P-trivial class remains."""
    limit = iteration_limit or config.settings.iteration_limit or 10 * len(X.rays)
    steps = []
    cur = X
    while True:
        cands = redundant_candidates(cur)
        if not cands:
            break
        if len(steps) >= limit:
            raise IterationLimit(
                f"redundant MMP did not stop after {limit} steps; infinite sequences of "
                "redundant flips are not expected, so this points at a bug")
        wc = min(cands, key=WallClass.circuit_key)
        before = polytope_of(anticanonical(cur))
        nxt, kind = mmp_step(cur, wc)
        after = polytope_of(anticanonical(nxt))
        if not before.same_points(after):
            raise InternalConsistencyError(f"{kind} step changed the anticanonical polytope")
        steps.append(MmpStep(kind, wc, cur, nxt, before, after))
        cur = nxt
    return MmpTrace(tuple(steps)), cur


@dataclass(frozen=True)
class ProbeEntry:
    wall_class: WallClass
    contracted: object
    polytope_changed: bool


def minimality_probe(X):
    """For each K-negative divisorial extremal class, contract it on a copy and
    record whether the anticanonical polytope changes."""
    P = _positive_part(X)
    before = polytope_of(anticanonical(X))
    out = []
    for wc in extremal_wall_classes(X, P):
        if wc.k_dot >= 0 or wc.kind != "divisorial":
            continue
        try:
            Y, _ = mmp_step(X, wc)
        except NonConvexStar:
            continue
        out.append(ProbeEntry(wc, Y, not before.same_points(polytope_of(anticanonical(Y)))))
    return out

