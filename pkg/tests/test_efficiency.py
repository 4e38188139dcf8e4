from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conelim.cones import PolyhedralCone
from conelim.efficiency import (FeasibleSet, efficient_set, generalized_henig_set,
                                globally_proper_set, henig_set, weakly_efficient_set)
from conelim.errors import (DimensionMismatch, EmptyFeasibleSet, EpsilonTooLarge, NotPointed,
                            NotSolid, ValidationError)

ORTHANT = PolyhedralCone(2, [(1, 0), (0, 1)])
SQUARE = FeasibleSet(((0, 0), (1, 0), (0, 1), (1, 1)))
GRID = [F(1, 2 ** k) for k in range(2, 11)]


def pareto(points, strict):
    """Coordinatewise minimality: the oracle for the nonnegative orthant."""
    out = []
    for i, p in enumerate(points):
        beaten = False
        for j, q in enumerate(points):
            if strict:
                beaten |= all(a < b for a, b in zip(q, p))
            else:
                beaten |= q != p and all(a <= b for a, b in zip(q, p))
        if not beaten:
            out.append(i)
    return tuple(out)


def test_square_examples():
    assert efficient_set(SQUARE, ORTHANT).members == (0,)
    assert weakly_efficient_set(SQUARE, ORTHANT).members == (0, 1, 2)
    assert globally_proper_set(SQUARE, ORTHANT, [F(1, 4)]).members == (0,)


def test_duplicates_are_kept_together():
    a = FeasibleSet(((0, 0), (0, 0), (1, 1)))
    assert a.duplicates == (0, 1)
    assert efficient_set(a, ORTHANT).members == (0, 1)


def test_input_errors():
    with pytest.raises(EmptyFeasibleSet):
        FeasibleSet(())
    with pytest.raises(DimensionMismatch):
        efficient_set(FeasibleSet(((0,),)), ORTHANT)
    with pytest.raises(NotPointed):
        efficient_set(SQUARE, PolyhedralCone(2, [(1, 0), (-1, 0), (0, 1)]))
    with pytest.raises(NotSolid):
        weakly_efficient_set(SQUARE, PolyhedralCone(2, [(1, 1)]))
    with pytest.raises(EpsilonTooLarge):
        globally_proper_set(SQUARE, ORTHANT, [F(1, 2)])
    for bad in ([], [F(1, 8), F(1, 4)], [0]):
        with pytest.raises(ValidationError):
            globally_proper_set(SQUARE, ORTHANT, bad)


def test_ray_union_reading():
    # the convex hull of the difference rays would contain (-1, -1)
    a = FeasibleSet(((0, 0), (1, -2), (-2, 1)))
    assert henig_set(a, ORTHANT, F(1, 4)).members == (0, 1, 2)
    assert globally_proper_set(a, ORTHANT, [F(1, 4)]).members == (0, 1, 2)


def test_proper_excludes_flat_tail():
    # (0, 0) is almost dominated by (-10, 1/100); only small eps keep it
    a = FeasibleSet(((0, 0), (-10, F(1, 100))))
    assert efficient_set(a, ORTHANT).members == (0, 1)
    assert globally_proper_set(a, ORTHANT, [F(1, 4)]).members == (1,)
    r = globally_proper_set(a, ORTHANT, GRID)
    assert r.members == (0, 1)
    assert r.witnesses[1]["epsilon"] == F(1, 4)
    assert r.witnesses[0]["epsilon"] < F(1, 4)
    assert r.witnesses[0]["base_functional"] == (1, 1)


points2 = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=8)


@settings(max_examples=60, deadline=None)
@given(points2)
def test_orthant_matches_pareto(pts):
    a = FeasibleSet(tuple(pts))
    assert efficient_set(a, ORTHANT).members == pareto(a.points, strict=False)
    assert weakly_efficient_set(a, ORTHANT).members == pareto(a.points, strict=True)


@settings(max_examples=40, deadline=None)
@given(points2)
def test_finite_set_collapse(pts):
    # for a finite set with integer coords in [-4, 4], eps = 2^-10 is below every
    # angle gap, so proper and efficient coincide
    a = FeasibleSet(tuple(pts))
    eff = efficient_set(a, ORTHANT).members
    assert globally_proper_set(a, ORTHANT, GRID).members == eff
    assert generalized_henig_set(a, ORTHANT, GRID).members == eff


@settings(max_examples=40, deadline=None)
@given(points2)
def test_henig_monotone_in_epsilon(pts):
    a = FeasibleSet(tuple(pts))
    prev = ()
    for e in (F(1, 4), F(1, 8), F(1, 16)):
        cur = henig_set(a, ORTHANT, e).members
        assert set(prev) <= set(cur)
        prev = cur


@settings(max_examples=40, deadline=None)
@given(points2)
def test_chain(pts):
    a = FeasibleSet(tuple(pts))
    gp = set(globally_proper_set(a, ORTHANT, GRID[:3]).members)
    assert gp <= set(efficient_set(a, ORTHANT).members) <= set(
        weakly_efficient_set(a, ORTHANT).members)
