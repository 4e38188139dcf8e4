"""Finite nested sequences of ordered spaces and lasting efficiency.

A :class:`LimitModel` is ``N`` steps ``R^d1 c R^d2 c ... c R^dN`` (strictly
increasing dims, coordinate zero-padding as the inclusion), each ordered by
a pointed polyhedral cone, plus a finite feasible set in the first step.
Lasting sets are intersections over the ``N`` steps present; ``horizon``
records ``N``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import numeric as nm
from .cones import (PolyhedralCone, contains, diagnostics, dilate, interior_point,
                    minkowski_sum)
from .efficiency import (EFFICIENT, GLOBALLY_PROPER, WEAKLY_EFFICIENT, EfficiencyReport,
                         FeasibleSet, _check_grid, efficient_set, globally_proper_set,
                         weakly_efficient_set)
from .errors import (AuditFailure, DilatedConflict, DimensionMismatch, EpsilonTooLarge,
                     InternalFault, NonConflictViolated, NotPointed, NotSolid,
                     ValidationError)
from .separation import aggregate_functional, argmin_points, strict_separator


def embed(x, from_dim, to_dim):
    if from_dim > to_dim:
        raise DimensionMismatch(f"cannot embed dim {from_dim} into dim {to_dim}")
    if len(x) != from_dim:
        raise DimensionMismatch(f"vector has dim {len(x)}, expected {from_dim}")
    return tuple(x) + (0,) * (to_dim - from_dim)


def embed_cone(c, to_dim):
    return PolyhedralCone(to_dim, [embed(g, c.ambient_dim, to_dim) for g in c.generators])


@dataclass(frozen=True)
class Step:
    index: int
    dim: int
    cone: PolyhedralCone

    def __post_init__(self):
        if self.cone.ambient_dim != self.dim:
            raise DimensionMismatch(f"step {self.index}: cone dim {self.cone.ambient_dim} "
                                    f"differs from step dim {self.dim}")


@dataclass(frozen=True)
class LimitModel:
    steps: tuple
    feasible: FeasibleSet

    def __post_init__(self):
        steps = tuple(self.steps)
        if not steps:
            raise ValidationError("at least one step is required")
        for a, b in zip(steps, steps[1:]):
            if b.dim <= a.dim:
                raise ValidationError("step dims must strictly increase",
                                      pointer=f"/steps/{b.index - 1}/dim")
        if self.feasible.dim != steps[0].dim:
            raise DimensionMismatch("feasible points must live in the first step")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def build(cls, cones, points, labels=None):
        steps = tuple(Step(i + 1, c.ambient_dim, c) for i, c in enumerate(cones))
        return cls(steps, FeasibleSet(tuple(points), labels))

    @property
    def horizon(self):
        return len(self.steps)

    @property
    def dims(self):
        return tuple(s.dim for s in self.steps)

    def require_pointed(self):
        for s in self.steps:
            if not diagnostics(s.cone).pointed:
                raise NotPointed(f"step {s.index} cone is not pointed", step=s.index)

    def require_solid(self):
        for s in self.steps:
            if not diagnostics(s.cone).solid:
                raise NotSolid(f"step {s.index} cone is not solid", step=s.index)

    def feasible_at(self, n):
        return self.feasible.embedded(self.steps[n - 1].dim)

    def with_cones(self, cones):
        return LimitModel.build(cones, self.feasible.points, self.feasible.labels)


@dataclass(frozen=True)
class NonConflictStep:
    n: int
    verdict: bool
    # j -> first generator y_j (embedded in step n) with -y_j outside the sum
    separable: dict
    # j -> generators (embedded) of S_j, every negative of which lies in the sum
    conflicts: dict


@dataclass(frozen=True)
class NonConflictReport:
    steps: tuple

    @property
    def verdict(self):
        return all(s.verdict for s in self.steps)

    def first_conflict(self):
        for s in self.steps:
            if not s.verdict:
                return s.n, min(s.conflicts)
        return None


def _nonconflict_at(cones, n, total):
    separable, conflicts = {}, {}
    d = total.ambient_dim
    for j, c in enumerate(cones[:n], start=1):
        gens = [embed(g, c.ambient_dim, d) for g in c.generators]
        y = next((g for g in gens if not contains(total, nm.neg(g))), None)
        if y is None:
            conflicts[j] = tuple(gens)
        else:
            separable[j] = y
    return NonConflictStep(n, not conflicts, separable, conflicts)


def check_nonconflict(m):
    """Non-conflict of ``S_1..S_n`` in step ``n``, for every ``n`` up to ``N``.

    The sum is built incrementally, re-embedding the previous sum's
    generators into each larger step.
    """
    cones = [s.cone for s in m.steps]
    out = []
    total = None
    for n, step in enumerate(m.steps, start=1):
        gens = [] if total is None else [embed(g, total.ambient_dim, step.dim)
                                         for g in total.generators]
        gens += list(step.cone.generators)
        total = PolyhedralCone(step.dim, gens)
        out.append(_nonconflict_at(cones, n, total))
    return NonConflictReport(tuple(out))


def check_nonconflict_at(m, n):
    """Verdict for step ``n`` computed from scratch."""
    step = m.steps[n - 1]
    cones = [s.cone for s in m.steps]
    total = minkowski_sum([embed_cone(c, step.dim) for c in cones[:n]], step.dim)
    return _nonconflict_at(cones, n, total)


def _intersect(per_step):
    common = set(per_step[0])
    for members in per_step[1:]:
        common &= set(members)
    return tuple(sorted(common))


def lasting_efficient(m):
    m.require_pointed()
    per = tuple(efficient_set(m.feasible_at(s.index), s.cone).members for s in m.steps)
    return EfficiencyReport(EFFICIENT, _intersect(per), horizon=m.horizon, per_step=per)


def lasting_weak(m, nonconflict=None):
    m.require_pointed()
    m.require_solid()
    per = tuple(weakly_efficient_set(m.feasible_at(s.index), s.cone).members
                for s in m.steps)
    members = _intersect(per)
    if not members:
        if nonconflict is None:
            nonconflict = check_nonconflict(m)
        if nonconflict.verdict:
            raise InternalFault("non-conflicting model without a lastingly weakly "
                                "efficient point")
    return EfficiencyReport(WEAKLY_EFFICIENT, members, horizon=m.horizon, per_step=per)


@dataclass(frozen=True)
class SeparationChoice:
    j: int
    y: tuple
    functional: tuple
    margin: Fraction


@dataclass(frozen=True)
class ScalarizationCertificate:
    step_count: int
    dim: int
    choices: tuple
    functional: tuple
    a0_index: int
    a0: tuple
    value: Fraction
    minimizers: tuple
    confirmations: tuple
    notes: tuple = field(default=())

    def to_json(self):
        fv = nm.format_vector
        fr = nm.format_rational
        return {
            "step_count": self.step_count,
            "dim": self.dim,
            "separations": [
                {"j": c.j, "y": fv(c.y), "functional": fv(c.functional), "margin": fr(c.margin)}
                for c in self.choices],
            "functional": fv(self.functional),
            "a0_index": self.a0_index,
            "a0": fv(self.a0),
            "value": fr(self.value),
            "minimizers": list(self.minimizers),
            "weakly_efficient_at": [{"step": i, "member": ok} for i, ok in self.confirmations],
            "notes": list(self.notes),
        }


def certify_lasting_weak(m):
    """Run the separation/aggregation/minimisation construction at step ``N``.

    For each ``j`` the first generator ``y_j`` of ``S_j`` whose negative
    avoids ``S_1 + ... + S_N`` is separated from that sum; the functionals
    are summed and minimised over ``A``; the minimiser is then confirmed to
    be weakly efficient in every step.
    """
    m.require_pointed()
    m.require_solid()
    report = check_nonconflict(m)
    last = report.steps[-1]
    if not last.verdict:
        j = min(last.conflicts)
        raise NonConflictViolated(f"-S_{j} is contained in the cone sum at step {last.n}",
                                  n=last.n, j=j,
                                  generators=[nm.format_vector(g) for g in last.conflicts[j]])
    n = m.horizon
    d = m.steps[-1].dim
    cones = [s.cone for s in m.steps]
    total = minkowski_sum([embed_cone(c, d) for c in cones], d)

    choices, witnesses = [], []
    for j in range(1, n + 1):
        y = last.separable[j]
        w = strict_separator(y, total)
        witnesses.append(w)
        choices.append(SeparationChoice(j, w.separated_point, w.functional, w.margin))
    f = aggregate_functional(witnesses, cones)

    pts = m.feasible_at(n).points
    am = argmin_points(f, pts)
    i0 = am.indices[0]
    a0 = m.feasible.points[i0]

    confirmations = []
    for s in m.steps:
        members = weakly_efficient_set(m.feasible_at(s.index), s.cone).members
        confirmations.append((s.index, i0 in members))
    if not all(ok for _, ok in confirmations):
        raise InternalFault("scalarised minimiser is not weakly efficient in every step",
                            a0_index=i0)
    notes = ("y_j is the first generator of S_j, in canonical order, whose negative "
             "lies outside the cone sum",)
    return ScalarizationCertificate(n, d, tuple(choices), f, i0, a0, am.value,
                                    tuple(am.indices), tuple(confirmations), notes)


def audit_certificate(data, m):
    """Re-check a serialized certificate against ``m`` with fresh arithmetic.

    ``data`` is the ``to_json`` form.  Returns the list of failed checks
    (empty when the certificate is valid).
    """
    pv = nm.vector
    failures = []
    n = data["step_count"]
    d = data["dim"]
    if n != m.horizon or d != m.steps[-1].dim:
        return ["certificate does not match the model's horizon"]
    cones = [embed_cone(s.cone, d) for s in m.steps]
    gens = [g for c in cones for g in c.generators]
    total = PolyhedralCone(d, gens)

    fsum = (Fraction(0),) * d
    for sep in data["separations"]:
        j = sep["j"]
        y, fj, eta = pv(sep["y"]), pv(sep["functional"]), nm.parse_rational(sep["margin"])
        fsum = nm.add(fsum, fj)
        if y not in {tuple(Fraction(a) for a in g) for g in cones[j - 1].generators}:
            failures.append(f"y_{j} is not a generator of S_{j}")
        if not eta > 0:
            failures.append(f"margin eta_{j} is not positive")
        if nm.dot(fj, nm.neg(y)) > -eta:
            failures.append(f"f_{j}(-y_{j}) <= -eta_{j} fails")
        if any(nm.dot(fj, g) < 0 for g in gens):
            failures.append(f"f_{j} is negative on the cone sum")
        if contains(total, nm.neg(y)):
            failures.append(f"-y_{j} lies in the cone sum")
    if sorted(sep["j"] for sep in data["separations"]) != list(range(1, n + 1)):
        failures.append("separations do not cover every step")
    f = pv(data["functional"])
    if f != fsum:
        failures.append("aggregate functional is not the sum of the separators")

    for s in m.steps:
        pad = (0,) * (d - s.dim)
        if any(nm.dot(f, tuple(g) + pad) < 0 for g in s.cone.generators):
            failures.append(f"aggregate is negative on S_{s.index}")
        if diagnostics(s.cone).solid and nm.dot(f, interior_point(s.cone) + pad) <= 0:
            failures.append(f"aggregate is not positive on int S_{s.index}")

    pts = m.feasible_at(n).points
    i0 = data["a0_index"]
    a0 = pts[i0]
    if pv(data["a0"]) != m.feasible.points[i0]:
        failures.append("a0 does not match the indexed feasible point")
    value = nm.parse_rational(data["value"])
    if nm.dot(f, a0) != value:
        failures.append("recorded objective value is wrong")
    if any(nm.dot(f, nm.sub(a, a0)) < 0 for a in pts):
        failures.append("a0 does not minimise the aggregate over A")

    for s in m.steps:
        if i0 not in weakly_efficient_set(m.feasible_at(s.index), s.cone).members:
            failures.append(f"a0 is not weakly efficient at step {s.index}")
    return failures


def require_audit(cert, m):
    failures = audit_certificate(cert.to_json(), m)
    if failures:
        raise AuditFailure("certificate audit failed", failures=failures)


def dilated_model(m, epsilon):
    return m.with_cones([dilate(s.cone, epsilon).dilated for s in m.steps])


@dataclass(frozen=True)
class ProperRoute:
    """Outcome of the dilated-sequence construction inside ``lasting_proper``."""

    epsilon: Fraction
    certificate: ScalarizationCertificate
    witness_grid: tuple


def _validate_grid_for_steps(m, grid):
    bad = []
    for s in m.steps:
        try:
            dilate(s.cone, grid[0])
        except EpsilonTooLarge:
            bad.append(s.index)
    if bad:
        raise EpsilonTooLarge(
            f"epsilon {nm.format_rational(grid[0])} is too large at steps {bad}",
            steps=bad, epsilon=nm.format_rational(grid[0]))


def lasting_proper(m, epsilon_grid, strict=True):
    """Lasting global proper efficiency, by definition and by construction.

    Definitional route: intersect ``globally_proper_set`` over the steps.
    Constructive route: for grid entries in order, dilate every step cone;
    the first dilated sequence that is non-conflicting is certified, and its
    minimiser must be globally properly efficient at each step (witnessed by
    any smaller dilation, so ``epsilon / 2`` is checked).
    """
    m.require_pointed()
    grid = _check_grid(epsilon_grid)
    _validate_grid_for_steps(m, grid)

    per_reports = [globally_proper_set(m.feasible_at(s.index), s.cone, grid) for s in m.steps]
    per = tuple(r.members for r in per_reports)
    members = _intersect(per)
    witnesses = {i: {s.index: per_reports[k].witnesses[i] for k, s in enumerate(m.steps)}
                 for i in members}

    route = None
    for eps in grid:
        dm = dilated_model(m, eps)
        for s in dm.steps:
            if not diagnostics(s.cone).pointed:
                raise InternalFault("dilated cone is not pointed", step=s.index)
        if not check_nonconflict(dm).verdict:
            continue
        cert = certify_lasting_weak(dm)
        wgrid = (eps, eps / 2)
        for s in m.steps:
            r = globally_proper_set(m.feasible_at(s.index), s.cone, wgrid)
            if cert.a0_index not in r.members:
                raise InternalFault("dilated-sequence minimiser is not globally properly "
                                    f"efficient at step {s.index}", step=s.index)
        if any(e < eps for e in grid) and cert.a0_index not in members:
            raise InternalFault("constructive and definitional routes disagree",
                                a0_index=cert.a0_index)
        route = ProperRoute(eps, cert, wgrid)
        break

    notes = ()
    if route is None:
        if strict:
            raise DilatedConflict("no grid entry gives a non-conflicting dilated sequence",
                                  grid=[nm.format_rational(e) for e in grid])
        notes = ("no grid entry gives a non-conflicting dilated sequence",)
    return EfficiencyReport(GLOBALLY_PROPER, members, witnesses, horizon=m.horizon,
                            per_step=per, certificate=route, notes=notes)
