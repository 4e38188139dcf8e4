"""Polyhedral convex cones in V- and H-representation.

A :class:`PolyhedralCone` is stored by its generators, normalised to
primitive integer vectors.  The H-representation (``facets``: vectors ``h``
with ``h . x >= 0`` on the cone) is the generator list of the dual cone and
is computed lazily by double description.  Finitely generated cones are
closed, so every closure the theory asks for is the identity here.
"""

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from . import numeric as nm
from .errors import (DDBlowup, DimensionMismatch, EpsilonTooLarge, InternalFault,
                     NotPointed, NotSolid, TrivialCone)
from .simplex import OPTIMAL, LinearProgram, solve_lp

DEFAULT_MAX_DD_RAYS = 100000


def max_dd_rays():
    return int(os.environ.get("CONELIM_MAX_DD_RAYS", DEFAULT_MAX_DD_RAYS))


def _idot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _canonical_rays(vectors):
    seen = set()
    out = []
    for v in vectors:
        p = nm.primitive(v)
        if any(p) and p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _lineality_canonical(basis, dim):
    """Deterministic basis of span(basis): primitive rows of its RREF."""
    if not basis:
        return []
    rows = [[Fraction(a) for a in v] for v in basis]
    pivots = nm._rref(rows, dim)
    return [nm.primitive(rows[i]) for i in range(len(pivots))]


def _project_out(v, lineality):
    """Component of ``v`` orthogonal to span(lineality)."""
    if not lineality:
        return tuple(v)
    # Gram-Schmidt over the rationals
    ortho = []
    for b in lineality:
        w = [Fraction(a) for a in b]
        for o, oo in ortho:
            t = _idot(w, o) / oo
            w = [a - t * c for a, c in zip(w, o)]
        ortho.append((w, _idot(w, w)))
    w = [Fraction(a) for a in v]
    for o, oo in ortho:
        t = _idot(w, o) / oo
        w = [a - t * c for a, c in zip(w, o)]
    return tuple(w)


def double_description(inequalities, dim):
    """Generators of ``{x : a . x >= 0 for every a in inequalities}``.

    Returns ``(rays, lineality)``: primitive integer tuples such that the cone
    equals ``cone(rays) + span(lineality)``.  Rays are extreme modulo the
    lineality space and orthogonal to it; both lists are sorted in
    decreasing lexicographic order.  Inequalities are inserted in increasing
    lexicographic order of their primitive form.
    """
    cap = max_dd_rays()
    cons = sorted(set(nm.primitive(a) for a in inequalities if any(a)))
    for a in cons:
        if len(a) != dim:
            raise DimensionMismatch(f"inequality of dim {len(a)} in ambient dim {dim}")

    lin = [tuple(1 if i == k else 0 for i in range(dim)) for k in range(dim)]
    # each ray carries the set of processed constraint indices it makes tight
    rays = []
    for k, a in enumerate(cons):
        vals = [_idot(a, l) for l in lin]
        piv = next((i for i, v in enumerate(vals) if v != 0), None)
        if piv is not None:
            l0 = lin[piv]
            a0 = vals[piv]
            if a0 < 0:
                l0 = tuple(-x for x in l0)
                a0 = -a0
            new_lin = []
            for i, l in enumerate(lin):
                if i == piv:
                    continue
                v = vals[i]
                if v:
                    l = nm.primitive([a0 * x - v * y for x, y in zip(l, l0)])
                new_lin.append(l)
            new_rays = []
            for r, z in rays:
                v = _idot(a, r)
                if v:
                    r = nm.primitive([a0 * x - v * y for x, y in zip(r, l0)])
                new_rays.append((r, z | {k}))
            new_rays.append((l0, frozenset(range(k))))
            lin, rays = new_lin, new_rays
            continue

        pos, zero, negs = [], [], []
        for r, z in rays:
            v = _idot(a, r)
            if v > 0:
                pos.append((r, z, v))
            elif v < 0:
                negs.append((r, z, v))
            else:
                zero.append((r, z | {k}))
        if not negs:
            continue
        need = dim - len(lin) - 2
        current = [z for _, z in rays]
        created = []
        for p, zp, vp in pos:
            for q, zq, vq in negs:
                common = zp & zq
                if len(common) < need:
                    continue
                skip = (id(zp), id(zq))
                if any(common <= z for z in current if id(z) not in skip):
                    continue
                r = nm.primitive([vp * x - vq * y for x, y in zip(q, p)])
                created.append((r, common | {k}))
        rays = [(r, z) for r, z, _ in pos] + zero + created
        if len(rays) > cap:
            raise DDBlowup(f"double description exceeded {cap} rays", cap=cap)

    lin = _lineality_canonical(lin, dim)
    out = _canonical_rays(_project_out(r, lin) for r, _ in rays)
    return sorted(out, reverse=True), sorted(lin, reverse=True)


class PolyhedralCone:
    """Cone generated by finitely many vectors of R^ambient_dim."""

    def __init__(self, ambient_dim, generators=()):
        if ambient_dim < 1:
            raise DimensionMismatch("ambient dimension must be positive")
        gens = list(generators)
        for g in gens:
            if len(g) != ambient_dim:
                raise DimensionMismatch(
                    f"generator of dim {len(g)} in ambient dim {ambient_dim}")
        self.ambient_dim = ambient_dim
        self.generators = tuple(_canonical_rays(gens))
        self._dual = None
        self._diag = None

    def __repr__(self):
        return f"PolyhedralCone({self.ambient_dim}, {[list(g) for g in self.generators]})"

    def __eq__(self, other):
        return (isinstance(other, PolyhedralCone) and self.ambient_dim == other.ambient_dim
                and self.generators == other.generators)

    def __hash__(self):
        return hash((self.ambient_dim, self.generators))

    @property
    def is_trivial(self):
        return not self.generators

    def _dual_rep(self):
        # compute-then-publish: a concurrent duplicate computation is harmless
        rep = self._dual
        if rep is None:
            rays, lin = double_description(self.generators, self.ambient_dim)
            rep = (tuple(rays), tuple(lin))
            self._dual = rep
        return rep

    @property
    def facets(self):
        """Vectors ``h`` with ``x in self`` iff ``h . x >= 0`` for all of them."""
        rays, lin = self._dual_rep()
        return rays + lin + tuple(tuple(-a for a in l) for l in lin)

    @property
    def lineality_basis(self):
        """Basis of the lineality space ``self & -self``."""
        rays, lin = self._dual_rep()
        h = list(rays) + list(lin)
        if not h:
            return tuple(tuple(1 if i == k else 0 for i in range(self.ambient_dim))
                         for k in range(self.ambient_dim))
        return tuple(nm.gaussian_rank_solve(h, ncols=self.ambient_dim).nullspace)

    def satisfies_facets(self, x):
        return all(_idot(h, x) >= 0 for h in self.facets)


@dataclass(frozen=True)
class ConeDiagnostics:
    pointed: bool
    solid: bool
    dim: int
    lineality_dim: int


@dataclass(frozen=True)
class ConeBase:
    """The polytope ``{s in S : defining_functional . s = 1}`` by its vertices."""

    defining_functional: tuple
    vertices: tuple


@dataclass(frozen=True)
class Dilation:
    base: ConeBase
    epsilon: Fraction
    dilated: PolyhedralCone


def make_cone(ambient_dim, generators=()):
    return PolyhedralCone(ambient_dim, generators)


def negated(c):
    return PolyhedralCone(c.ambient_dim, [tuple(-a for a in g) for g in c.generators])


def dual_cone(c):
    return PolyhedralCone(c.ambient_dim, c.facets)


def minkowski_sum(cones, common_dim):
    gens = []
    for c in cones:
        if c.ambient_dim != common_dim:
            raise DimensionMismatch(
                f"cone of dim {c.ambient_dim} in a sum over dim {common_dim}")
        gens.extend(c.generators)
    return PolyhedralCone(common_dim, gens)


def _check_point(c, x):
    if len(x) != c.ambient_dim:
        raise DimensionMismatch(f"point of dim {len(x)} against cone of dim {c.ambient_dim}")


def contains(c, x):
    """Membership by exact LP feasibility: ``x = G lam`` with ``lam >= 0``."""
    _check_point(c, x)
    if nm.is_zero(x):
        return True
    if c.is_trivial:
        return False
    m = len(c.generators)
    cons = tuple((tuple(g[k] for g in c.generators), "=", Fraction(x[k]))
                 for k in range(c.ambient_dim))
    return solve_lp(LinearProgram((0,) * m, cons)).status == OPTIMAL


def interior_contains(c, x):
    _check_point(c, x)
    if not diagnostics(c).solid:
        return False
    return all(_idot(h, x) > 0 for h in c.facets)


def interior_contains_lp(c, x):
    """Interior test without facets.

    For solid ``c`` with ``p`` the sum of its generators (an interior point),
    ``x`` is interior iff ``x - t p`` lies in ``c`` for some ``t > 0``.
    """
    _check_point(c, x)
    if not diagnostics(c).solid:
        return False
    m = len(c.generators)
    p = nm.vsum(c.generators, c.ambient_dim)
    # variables lam_1..lam_m >= 0, 0 <= t <= 1; maximise t
    cons = tuple((tuple(g[k] for g in c.generators) + (p[k],), "=", Fraction(x[k]))
                 for k in range(c.ambient_dim))
    bounds = ((0, None),) * m + ((0, 1),)
    out = solve_lp(LinearProgram((0,) * m + (1,), cons, bounds))
    return out.status == OPTIMAL and out.value > 0


def diagnostics(c):
    d = c._diag
    if d is None:
        dim = nm.rank(c.generators, ncols=c.ambient_dim)
        rays, lin = c._dual_rep()
        dual_rank = nm.rank(list(rays) + list(lin), ncols=c.ambient_dim)
        lineality_dim = c.ambient_dim - dual_rank
        d = ConeDiagnostics(pointed=lineality_dim == 0, solid=dim == c.ambient_dim,
                            dim=dim, lineality_dim=lineality_dim)
        c._diag = d
    return d


def interior_point(c):
    if not diagnostics(c).solid:
        raise NotSolid("cone has empty interior", cone=[list(g) for g in c.generators])
    p = tuple(Fraction(a) for a in nm.vsum(c.generators, c.ambient_dim))
    if not interior_contains(c, p):
        raise InternalFault("sum of generators is not interior")
    return p


def extreme_rays(c):
    """Generators of a pointed cone that span extreme rays, in input order."""
    if not diagnostics(c).pointed:
        raise NotPointed("extreme rays are defined here for pointed cones only")
    h = c.facets
    out = []
    for g in c.generators:
        active = [f for f in h if _idot(f, g) == 0]
        if nm.rank(active, ncols=c.ambient_dim) == c.ambient_dim - 1:
            out.append(g)
    return out


def reduced(c):
    return PolyhedralCone(c.ambient_dim, extreme_rays(c))


def canonical_base(c):
    if c.is_trivial:
        raise TrivialCone("the trivial cone has no base")
    if not diagnostics(c).pointed:
        raise NotPointed("a non-pointed closed cone has no base")
    f0 = tuple(Fraction(a) for a in nm.vsum(c.facets, c.ambient_dim))
    verts = []
    for g in extreme_rays(c):
        t = nm.dot(f0, g)
        if t <= 0:
            raise InternalFault("base functional is not positive on a generator")
        verts.append(tuple(Fraction(a) / t for a in g))
    return ConeBase(f0, tuple(verts))


def _box_vertices(dim):
    return list(itertools.product((-1, 1), repeat=dim))


def base_reaches_origin(base, epsilon):
    """True iff ``0`` lies in ``conv(vertices) + epsilon * [-1, 1]^d``."""
    verts = base.vertices
    m = len(verts)
    dim = len(base.defining_functional)
    cons = [((1,) * m, "=", 1)]
    for k in range(dim):
        row = tuple(v[k] for v in verts)
        cons.append((row, "<=", epsilon))
        cons.append((row, ">=", -epsilon))
    return solve_lp(LinearProgram((0,) * m, tuple(cons))).status == OPTIMAL


def dilate(c, epsilon):
    """The dilating cone ``cone(base + epsilon * B_inf)`` of a pointed cone."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise EpsilonTooLarge("epsilon must be positive", epsilon=str(epsilon))
    base = canonical_base(c)
    if base_reaches_origin(base, epsilon):
        raise EpsilonTooLarge(f"0 lies in base + {epsilon} * box; not a dilating cone",
                              epsilon=nm.format_rational(epsilon))
    pts = [tuple(a + epsilon * w for a, w in zip(v, box))
           for v in base.vertices for box in _box_vertices(c.ambient_dim)]
    raw = PolyhedralCone(c.ambient_dim, pts)
    if not diagnostics(raw).pointed:
        raise InternalFault("dilation of a pointed cone is not pointed")
    w = reduced(raw)
    for g in c.generators:
        if not interior_contains(w, g):
            raise InternalFault("cone generator is not interior to its dilation")
    return Dilation(base, epsilon, w)


def intersection_trivial(c1, c2):
    if c1.ambient_dim != c2.ambient_dim:
        raise DimensionMismatch("cones live in different dimensions")
    rays, lin = double_description(list(c1.facets) + list(c2.facets), c1.ambient_dim)
    return not rays and not lin


def same_cone(c1, c2):
    return (c1.ambient_dim == c2.ambient_dim
            and all(contains(c2, g) for g in c1.generators)
            and all(contains(c1, g) for g in c2.generators))
