"""Efficient, weakly efficient and properly efficient points of a finite set.

All membership decisions go through exact LP membership tests on the cone's
generators (``contains`` / ``interior_contains_lp``); the facet description
is used only to construct dilations and intersections.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import numeric as nm
from .cones import (contains, diagnostics, dilate, interior_contains_lp, intersection_trivial,
                    make_cone, negated)
from .errors import DimensionMismatch, EmptyFeasibleSet, NotPointed, NotSolid, ValidationError

EFFICIENT = "efficient"
WEAKLY_EFFICIENT = "weakly_efficient"
HENIG = "henig"
GLOBALLY_PROPER = "globally_proper"


@dataclass(frozen=True)
class FeasibleSet:
    points: tuple
    labels: tuple = None

    def __post_init__(self):
        if not self.points:
            raise EmptyFeasibleSet("feasible set must be nonempty")
        pts = tuple(tuple(Fraction(a) for a in p) for p in self.points)
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise DimensionMismatch("feasible points differ in dimension")
        if self.labels is not None and len(self.labels) != len(pts):
            raise ValidationError("one label per feasible point required")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self):
        return len(self.points[0])

    def __len__(self):
        return len(self.points)

    @property
    def duplicates(self):
        """Indices of points that occur more than once."""
        counts = Counter(self.points)
        return tuple(i for i, p in enumerate(self.points) if counts[p] > 1)

    def embedded(self, dim):
        if dim < self.dim:
            raise DimensionMismatch(f"cannot embed dim {self.dim} points into dim {dim}")
        pad = (Fraction(0),) * (dim - self.dim)
        return FeasibleSet(tuple(p + pad for p in self.points), self.labels)


@dataclass(frozen=True)
class EfficiencyReport:
    kind: str
    members: tuple
    witnesses: dict = field(default_factory=dict)
    horizon: int = None
    per_step: tuple = None
    certificate: object = None
    notes: tuple = ()


def _require_pointed(s):
    if not diagnostics(s).pointed:
        raise NotPointed("ordering cone must be pointed",
                         generators=[nm.format_vector(g) for g in s.generators])


def _check_dims(a, s):
    if a.dim != s.ambient_dim:
        raise DimensionMismatch(f"points of dim {a.dim} against cone of dim {s.ambient_dim}")


def _members(a, dominated):
    out = []
    n = len(a.points)
    for i in range(n):
        pi = a.points[i]
        if not any(dominated(nm.sub(a.points[j], pi)) for j in range(n) if j != i):
            out.append(i)
    return tuple(out)


def efficient_set(a, s):
    _check_dims(a, s)
    _require_pointed(s)
    return EfficiencyReport(
        EFFICIENT, _members(a, lambda d: not nm.is_zero(d) and contains(s, nm.neg(d))))


def weakly_efficient_set(a, s):
    _check_dims(a, s)
    _require_pointed(s)
    if not diagnostics(s).solid:
        raise NotSolid("weak efficiency needs a solid ordering cone",
                       generators=[nm.format_vector(g) for g in s.generators])
    return EfficiencyReport(
        WEAKLY_EFFICIENT, _members(a, lambda d: interior_contains_lp(s, nm.neg(d))))


def _base_witness(dil):
    return {"epsilon": dil.epsilon,
            "base_functional": dil.base.defining_functional}


def henig_set(a, s, epsilon):
    """Members ``a_i`` whose ray hull ``cone(A - a_i)`` meets ``-W`` only at 0.

    ``W = cone(base + epsilon * B_inf)`` over the canonical base.  The ray
    hull of a finite set is the union of the rays through its points (it is
    already closed), so the test runs one exact cone intersection per
    difference vector.
    """
    _check_dims(a, s)
    _require_pointed(s)
    dil = dilate(s, epsilon)
    neg_w = negated(dil.dilated)
    dim = s.ambient_dim

    def hits(d):
        return not nm.is_zero(d) and not intersection_trivial(make_cone(dim, [d]), neg_w)

    members = _members(a, hits)
    return EfficiencyReport(HENIG, members, {i: _base_witness(dil) for i in members})


def _check_grid(grid):
    grid = [Fraction(e) for e in grid]
    if not grid:
        raise ValidationError("epsilon grid must be nonempty")
    if any(e <= 0 for e in grid):
        raise ValidationError("epsilon grid entries must be positive")
    if any(x <= y for x, y in zip(grid, grid[1:])):
        raise ValidationError("epsilon grid must be strictly decreasing")
    return grid


def _grid_route(a, s, grid, member_test, kind):
    _check_dims(a, s)
    _require_pointed(s)
    grid = _check_grid(grid)
    # dilations shrink with epsilon, so validity of the largest entry covers the rest
    dils = [dilate(s, e) for e in grid]
    witnesses = {}
    pending = list(range(len(a.points)))
    for dil in dils:
        if not pending:
            break
        hit = member_test(dil, pending)
        for i in hit:
            witnesses[i] = _base_witness(dil)
        pending = [i for i in pending if i not in witnesses]
    members = tuple(sorted(witnesses))
    return EfficiencyReport(kind, members, {i: witnesses[i] for i in members})


def globally_proper_set(a, s, epsilon_grid):
    """Points efficient with respect to some dilation ``W_eps``, eps in the grid.

    The witness recorded per member is the first (largest) grid entry that
    works.
    """
    def test(dil, pending):
        w = dil.dilated
        return [i for i in pending
                if not any(not nm.is_zero(d) and contains(w, nm.neg(d))
                           for d in (nm.sub(p, a.points[i]) for p in a.points))]

    return _grid_route(a, s, epsilon_grid, test, GLOBALLY_PROPER)


def generalized_henig_set(a, s, epsilon_grid):
    """Henig proper efficiency over the grid, with per-member witness epsilon."""
    def test(dil, pending):
        neg_w = negated(dil.dilated)
        dim = s.ambient_dim
        return [i for i in pending
                if all(nm.is_zero(d) or intersection_trivial(make_cone(dim, [d]), neg_w)
                       for d in (nm.sub(p, a.points[i]) for p in a.points))]

    return _grid_route(a, s, epsilon_grid, test, HENIG)
