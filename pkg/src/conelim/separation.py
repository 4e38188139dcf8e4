"""Strict separation of a point from a cone and scalarised minimisation.

``strict_separator`` is the exact, finite-dimensional stand-in for the
Hahn-Banach step: a functional nonnegative on a cone and bounded away from
zero on a chosen point.  ``aggregate_functional`` sums such functionals and
checks strict positivity on cone interiors, and ``argmin_points`` minimises
the result over a finite feasible set.
"""

from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

from . import numeric as nm
from .cones import contains, diagnostics, interior_point
from .errors import (AggregateDegenerate, DimensionMismatch, EmptyFeasibleSet, InternalFault,
                     NotSeparable)
from .simplex import OPTIMAL, LinearProgram, solve_lp

Argmin = namedtuple("Argmin", "indices minimizers value")


@dataclass(frozen=True)
class SeparationWitness:
    functional: tuple
    margin: Fraction
    separated_point: tuple

    def check(self, cone):
        """Exact check of the three defining inequalities against ``cone``."""
        f, y = self.functional, self.separated_point
        return (self.margin > 0
                and all(abs(a) <= 1 for a in f)
                and all(nm.dot(f, g) >= 0 for g in cone.generators)
                and nm.dot(f, nm.neg(y)) <= -self.margin)


def strict_separator(y, c):
    """Functional ``f`` with ``f >= 0`` on ``c`` and ``f . y`` maximal.

    Solves ``max eta`` s.t. ``f . g >= 0`` for every generator ``g``,
    ``f . y >= eta`` and ``-1 <= f_i <= 1``; among optimal ``f`` the
    lexicographically smallest is returned.
    """
    y = tuple(Fraction(a) for a in y)
    d = c.ambient_dim
    if len(y) != d:
        raise DimensionMismatch(f"point of dim {len(y)} against cone of dim {d}")
    if contains(c, nm.neg(y)):
        raise NotSeparable("-y lies in the cone", y=nm.format_vector(y))

    # variables f_1..f_d, eta
    base = [(tuple(g) + (0,), ">=", 0) for g in c.generators]
    base.append((y + (-1,), ">=", 0))
    bounds = ((-1, 1),) * d + ((None, None),)
    out = solve_lp(LinearProgram((0,) * d + (1,), tuple(base), bounds))
    if out.status != OPTIMAL or out.value <= 0:
        raise NotSeparable("no strictly separating functional", y=nm.format_vector(y))
    eta = out.value

    cons = list(base)
    cons.append(((0,) * d + (1,), "=", eta))
    f = list(out.solution[:d])
    for k in range(d):
        obj = [0] * (d + 1)
        obj[k] = 1
        step = solve_lp(LinearProgram(tuple(obj), tuple(cons), bounds, sense="min"))
        f[k] = step.solution[k]
        row = [0] * (d + 1)
        row[k] = 1
        cons.append((tuple(row), "=", f[k]))
    w = SeparationWitness(tuple(f), eta, y)
    if not w.check(c):
        raise InternalFault("separator failed its own inequalities")
    return w


def aggregate_functional(witnesses, cones):
    """Sum the separating functionals and verify strict positivity.

    ``cones`` may live in smaller spaces than the witnesses; they are
    zero-padded.  For each cone that is solid in its own space the sum must
    be positive at an interior point, which together with nonnegativity on
    the cone gives positivity on the whole interior.
    """
    if not witnesses:
        raise AggregateDegenerate("no witnesses to aggregate")
    dim = len(witnesses[0].functional)
    for w in witnesses:
        if len(w.functional) != dim:
            raise DimensionMismatch("witness functionals differ in dimension")
    f = nm.vsum((w.functional for w in witnesses), dim)
    if nm.is_zero(f):
        raise AggregateDegenerate("aggregate functional is zero")
    for i, c in enumerate(cones):
        if c.ambient_dim > dim:
            raise DimensionMismatch("cone lives in a larger space than the functional")
        pad = (0,) * (dim - c.ambient_dim)
        for g in c.generators:
            if nm.dot(f, tuple(g) + pad) < 0:
                raise AggregateDegenerate(f"aggregate is negative on cone {i + 1}", cone=i + 1)
        if diagnostics(c).solid:
            p = interior_point(c) + pad
            if nm.dot(f, p) <= 0:
                raise AggregateDegenerate(
                    f"aggregate is not positive on the interior of cone {i + 1}", cone=i + 1)
    return f


def argmin_points(f, points):
    """Minimum of ``f`` over ``points`` and every point attaining it, in input
    order; the designated minimiser is the first."""
    if not points:
        raise EmptyFeasibleSet("cannot minimise over an empty set")
    vals = [nm.dot(f, p) for p in points]
    best = min(vals)
    idx = [i for i, v in enumerate(vals) if v == best]
    return Argmin(idx, [points[i] for i in idx], best)
