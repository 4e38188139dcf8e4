"""Seeded random problem instances for the property campaigns."""

import random
from fractions import Fraction

from . import numeric as nm
from .cones import PolyhedralCone, diagnostics
from .errors import RetriesExhausted, ValidationError
from .limit import LimitModel, check_nonconflict
from .problem import serialize_problem


def _random_cone(rng, dim, size, direction=None, tries=200):
    """Pointed, solid cone of ``max(size, dim)`` integer generators."""
    size = max(size, dim)
    for _ in range(tries):
        gens = []
        while len(gens) < size:
            g = tuple(rng.randint(-3, 3) for _ in range(dim))
            if not any(g):
                continue
            if direction is not None and sum(a * b for a, b in zip(direction, g)) <= 0:
                continue
            gens.append(g)
        c = PolyhedralCone(dim, gens)
        diag = diagnostics(c)
        if diag.pointed and diag.solid:
            return c
    raise RetriesExhausted(f"no pointed solid cone found in dim {dim}")


def _random_point(rng, dim, bound, max_den):
    out = []
    for _ in range(dim):
        den = rng.randint(1, max_den)
        out.append(Fraction(rng.randint(-bound * den, bound * den), den))
    return tuple(out)


def random_model(rng, dims, cone_size=3, set_size=6, aligned=False, bound=5, max_den=4):
    """One model; with ``aligned`` all generators sit in a common open half-space."""
    direction = None
    if aligned:
        direction = tuple(rng.randint(1, 3) * rng.choice((-1, 1)) for _ in range(dims[-1]))
    cones = [_random_cone(rng, d, cone_size, direction[:d] if direction else None)
             for d in dims]
    points = [_random_point(rng, dims[0], bound, max_den) for _ in range(set_size)]
    return LimitModel.build(cones, points)


def _check_dims(dims):
    dims = tuple(dims)
    if not dims or any(d < 1 for d in dims):
        raise ValidationError("dims must be positive")
    if any(b <= a for a, b in zip(dims, dims[1:])):
        raise ValidationError("dims must strictly increase")
    return dims


def generate_model(seed, dims, cone_size=3, set_size=6, want_nonconflicting=False,
                   max_retries=500):
    dims = _check_dims(dims)
    if cone_size < 1 or set_size < 1:
        raise ValidationError("cone_size and set_size must be positive")
    rng = random.Random(seed)
    for _ in range(max_retries):
        aligned = want_nonconflicting and rng.random() < 0.5
        m = random_model(rng, dims, cone_size, set_size, aligned=aligned)
        if not want_nonconflicting or check_nonconflict(m).verdict:
            return m
    raise RetriesExhausted(f"no non-conflicting model after {max_retries} tries",
                           seed=seed, dims=list(dims))


def generate_instance(seed, dims, cone_size=3, set_size=6, want_nonconflicting=False,
                      max_retries=500):
    """Problem-file dict for a reproducible random model."""
    m = generate_model(seed, dims, cone_size, set_size, want_nonconflicting, max_retries)
    return serialize_problem(m, seed=seed)


def random_shape(rng, max_dim=4, max_steps=3, max_points=12):
    n = rng.randint(1, max_steps)
    dims = sorted(rng.sample(range(1, max_dim + 1), n))
    return dims, rng.randint(2, 4), rng.randint(1, max_points)


def campaign_models(seed, count, want_nonconflicting=True, max_dim=4, max_steps=3,
                    max_points=12):
    """``count`` seeded models with random shapes, deterministic in ``seed``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        dims, cs, ss = random_shape(rng, max_dim, max_steps, max_points)
        try:
            out.append(generate_model(rng.getrandbits(32), dims, cs, ss, want_nonconflicting,
                                      max_retries=50))
        except RetriesExhausted:
            continue
    return out
