"""Randomised property campaigns over seeded instances.

Each ``check_*`` function takes one instance and returns a list of failure
strings (empty on success).  ``run_campaign`` drives them from a seed; the
``selftest`` command and the acceptance suite both use it.
"""

import random
from fractions import Fraction

from . import numeric as nm
from .cones import (PolyhedralCone, contains, diagnostics, dilate, dual_cone, interior_contains,
                    interior_point)
from .efficiency import (FeasibleSet, efficient_set, generalized_henig_set,
                         globally_proper_set, weakly_efficient_set)
from .errors import EpsilonTooLarge
from .generate import _random_point, campaign_models
from .limit import (audit_certificate, certify_lasting_weak, check_nonconflict, dilated_model,
                    lasting_efficient, lasting_proper, lasting_weak)

QUARTER = Fraction(1, 4)


def hrep_members(a, s, strict):
    """Pairwise dominance oracle on the facet description.

    ``strict=False``: efficiency (``-d`` in ``S``, ``d != 0``).
    ``strict=True``: weak efficiency (``-d`` in ``int S``).
    """
    h = s.facets
    out = []
    for i, p in enumerate(a.points):
        beaten = False
        for j, q in enumerate(a.points):
            if i == j:
                continue
            md = [pi - qi for pi, qi in zip(p, q)]
            vals = [sum(x * y for x, y in zip(f, md)) for f in h]
            if strict:
                if all(v > 0 for v in vals):
                    beaten = True
            elif any(md) and all(v >= 0 for v in vals):
                beaten = True
            if beaten:
                break
        if not beaten:
            out.append(i)
    return tuple(out)


def check_scalarization(m):
    fails = []
    cert = certify_lasting_weak(m)
    fails += audit_certificate(cert.to_json(), m)
    if any(c.margin <= 0 for c in cert.choices):
        fails.append("a separation margin is not positive")
    lw = lasting_weak(m)
    if not lw.members:
        fails.append("lastingly weakly efficient set is empty")
    if cert.a0_index not in lw.members:
        fails.append("a0 is outside the brute-force lasting weak set")
    fails += check_minimiser(cert, m)
    return fails


def check_minimiser(cert, m):
    """Minimality of ``a0`` for the aggregate and weak efficiency per solid step."""
    fails = []
    pts = m.feasible_at(m.horizon).points
    a0 = pts[cert.a0_index]
    if any(nm.dot(cert.functional, nm.sub(a, a0)) < 0 for a in pts):
        fails.append("f(a - a0) < 0 for some a")
    for s in m.steps:
        if diagnostics(s.cone).solid:
            if cert.a0_index not in weakly_efficient_set(m.feasible_at(s.index), s.cone).members:
                fails.append(f"a0 not weakly efficient at step {s.index}")
    return fails


def check_dilated_route(m, epsilon=QUARTER):
    """Dilated sequence at ``epsilon`` assumed non-conflicting by the caller."""
    fails = []
    dm = dilated_model(m, epsilon)
    cert = certify_lasting_weak(dm)
    fails += audit_certificate(cert.to_json(), dm)
    grid = (epsilon, epsilon / 2)
    for s in m.steps:
        r = globally_proper_set(m.feasible_at(s.index), s.cone, grid)
        if cert.a0_index not in r.members:
            fails.append(f"dilated a0 not globally properly efficient at step {s.index}")
    lp = lasting_proper(m, grid)
    if lp.certificate is None or cert.a0_index not in lp.members:
        fails.append("lasting_proper disagrees with the dilated pipeline")
    return fails


def check_proper_vs_henig(a, s, grid):
    g = globally_proper_set(a, s, grid)
    h = generalized_henig_set(a, s, grid)
    fails = []
    if g.members != h.members:
        fails.append(f"member sets differ: {g.members} vs {h.members}")
    elif any(g.witnesses[i]["epsilon"] != h.witnesses[i]["epsilon"] for i in g.members):
        fails.append("witness epsilons differ")
    return fails


def check_oracle(a, s):
    fails = []
    if efficient_set(a, s).members != hrep_members(a, s, strict=False):
        fails.append("efficient_set disagrees with the facet oracle")
    if diagnostics(s).solid:
        if weakly_efficient_set(a, s).members != hrep_members(a, s, strict=True):
            fails.append("weakly_efficient_set disagrees with the facet oracle")
    return fails


def check_cone(c, rng):
    """Dual involution, Farkas consistency, interior point, dilation monotonicity."""
    fails = []
    dd = dual_cone(dual_cone(c))
    if not (all(contains(dd, g) for g in c.generators)
            and all(contains(c, g) for g in dd.generators)):
        fails.append("dual involution fails")
    dual_gens = dual_cone(c).generators
    for _ in range(4):
        x = tuple(rng.randint(-4, 4) for _ in range(c.ambient_dim))
        if contains(c, x) == any(nm.dot(h, x) < 0 for h in dual_gens):
            fails.append(f"Farkas consistency fails at {x}")
        if interior_contains(c, x) and not contains(c, x):
            fails.append("interior point outside the cone")
    if diagnostics(c).solid and not interior_contains(c, interior_point(c)):
        fails.append("interior_point is not interior")
    diag = diagnostics(c)
    if diag.pointed and not c.is_trivial:
        eps = [Fraction(1, 2 ** k) for k in range(1, 7)]
        dils = []
        for e in eps:
            try:
                dils.append(dilate(c, e))
            except EpsilonTooLarge:
                continue
        for small, big in zip(dils[1:], dils):
            if not all(contains(big.dilated, g) for g in small.dilated.generators):
                fails.append("dilation is not monotone in epsilon")
    return fails


def model_grid(m, grid):
    """The tail of ``grid`` valid for every step cone of ``m``."""
    for k in range(len(grid)):
        if all(usable_grid(s.cone, grid[k:k + 1]) for s in m.steps):
            return list(grid[k:])
    return []


def check_chains(m, grid):
    grid = model_grid(m, grid)
    if not grid:
        return []
    fails = []
    for s in m.steps:
        a = m.feasible_at(s.index)
        gp = set(globally_proper_set(a, s.cone, grid).members)
        ef = set(efficient_set(a, s.cone).members)
        we = set(weakly_efficient_set(a, s.cone).members)
        if not gp <= ef <= we:
            fails.append(f"chain fails at step {s.index}")
    lp = set(lasting_proper(m, grid, strict=False).members)
    le = set(lasting_efficient(m).members)
    lw = set(lasting_weak(m).members)
    if not lp <= le <= lw:
        fails.append("lasting chain fails")
    return fails


def random_cone(rng, max_dim=4):
    d = rng.randint(1, max_dim)
    k = rng.randint(0, 5)
    gens = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(k)]
    return PolyhedralCone(d, gens)


def random_pointed_cone(rng, dim, solid=True):
    while True:
        c = PolyhedralCone(dim, [tuple(rng.randint(-3, 3) for _ in range(dim))
                                 for _ in range(rng.randint(1, dim + 2))])
        dg = diagnostics(c)
        if dg.pointed and not c.is_trivial and (dg.solid or not solid):
            return c


def random_points(rng, dim, count):
    return FeasibleSet(tuple(_random_point(rng, dim, 5, 4) for _ in range(count)))


def usable_grid(s, grid):
    """The tail of ``grid`` starting at its first entry valid for ``s``."""
    for k, e in enumerate(grid):
        try:
            dilate(s, e)
            return list(grid[k:])
        except EpsilonTooLarge:
            continue
    return []


def dilatable_models(seed, count, epsilon=QUARTER):
    """Seeded models whose dilated sequence at ``epsilon`` is non-conflicting."""
    out = []
    k = 0
    while len(out) < count:
        for m in campaign_models(seed * 1000 + k, 10):
            if len(out) == count:
                break
            try:
                dm = dilated_model(m, epsilon)
            except EpsilonTooLarge:
                continue
            if check_nonconflict(dm).verdict:
                out.append(m)
        k += 1
    return out


def run_campaign(seed, count):
    """Small version of every property family; returns ``{name: (passed, total, first_failure)}``."""
    rng = random.Random(seed)
    results = {}

    def record(name, fails):
        ok, total, first = results.get(name, (0, 0, None))
        results[name] = (ok + (not fails), total + 1, first or (fails[0] if fails else None))

    for m in campaign_models(seed, count):
        record("scalarization", check_scalarization(m))
        record("chains", check_chains(m, [Fraction(1, 2 ** k) for k in range(2, 7)]))
    for m in dilatable_models(seed, max(1, count // 2)):
        record("dilated_route", check_dilated_route(m))
    for _ in range(count):
        s = random_pointed_cone(rng, rng.randint(1, 3))
        a = random_points(rng, s.ambient_dim, rng.randint(1, 10))
        grid = usable_grid(s, [Fraction(1, 2 ** k) for k in range(1, 6)])
        if grid:
            record("proper_vs_henig", check_proper_vs_henig(a, s, grid))
        record("oracle", check_oracle(a, s))
        record("cone_algebra", check_cone(random_cone(rng), rng))
    return results
