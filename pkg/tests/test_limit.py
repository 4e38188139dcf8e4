import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conelim.cones import PolyhedralCone, contains
from conelim.errors import (AuditFailure, DilatedConflict, DimensionMismatch, EpsilonTooLarge,
                            NonConflictViolated, NotSolid, ValidationError)
from conelim.generate import generate_model
from conelim.limit import (LimitModel, Step, audit_certificate, certify_lasting_weak,
                           check_nonconflict, check_nonconflict_at, dilated_model, embed,
                           embed_cone, lasting_efficient, lasting_proper, lasting_weak,
                           require_audit)

HALF_LINE = PolyhedralCone(1, [(1,)])
ORTHANT = PolyhedralCone(2, [(1, 0), (0, 1)])
I1 = LimitModel.build([HALF_LINE, ORTHANT], [(0,), (1,), (2,)])
I2 = LimitModel.build([HALF_LINE, PolyhedralCone(2, [(-1, 0), (0, 1)])], [(0,), (1,), (2,)])


def test_model_validation():
    with pytest.raises(ValidationError):
        LimitModel.build([HALF_LINE, HALF_LINE], [(0,)])
    with pytest.raises(ValidationError):
        LimitModel.build([], [(0,)])
    with pytest.raises(DimensionMismatch):
        LimitModel.build([ORTHANT], [(0,)])
    with pytest.raises(DimensionMismatch):
        Step(1, 2, HALF_LINE)
    assert I1.horizon == 2
    assert I1.dims == (1, 2)
    assert I1.feasible_at(2).points == ((0, 0), (1, 0), (2, 0))


def test_embed():
    assert embed((1, 2), 2, 4) == (1, 2, 0, 0)
    with pytest.raises(DimensionMismatch):
        embed((1, 2), 2, 1)
    assert embed_cone(HALF_LINE, 3).generators == ((1, 0, 0),)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(
    st.just(d), st.lists(st.tuples(*[st.integers(-3, 3)] * d), max_size=4),
    st.tuples(*[st.integers(-3, 3)] * d))), st.integers(0, 2))
def test_embedding_preserves_membership(case, extra):
    d, gens, x = case
    c = PolyhedralCone(d, gens)
    big = embed_cone(c, d + extra)
    assert contains(c, x) == contains(big, embed(x, d, d + extra))


def test_i1_nonconflict_and_lasting_sets():
    rep = check_nonconflict(I1)
    assert rep.verdict
    assert rep.first_conflict() is None
    assert lasting_efficient(I1).members == (0,)
    lw = lasting_weak(I1)
    assert lw.members == (0,)
    assert lw.per_step == ((0,), (0, 1, 2))
    assert lw.horizon == 2


def test_i1_certificate():
    cert = certify_lasting_weak(I1)
    assert cert.functional == (2, 0)
    assert cert.a0_index == 0
    assert cert.a0 == (0,)
    assert cert.value == 0
    assert all(ok for _, ok in cert.confirmations)
    assert [c.margin for c in cert.choices] == [1, 1]
    assert audit_certificate(cert.to_json(), I1) == []
    require_audit(cert, I1)


def test_i2_conflict():
    rep = check_nonconflict(I2)
    assert not rep.verdict
    assert rep.first_conflict() == (2, 1)
    with pytest.raises(NonConflictViolated) as info:
        certify_lasting_weak(I2)
    assert info.value.details["n"] == 2
    assert info.value.details["j"] == 1
    assert info.value.exit_code == 3


def test_certify_requires_solid_steps():
    m = LimitModel.build([HALF_LINE, PolyhedralCone(2, [(1, 0)])], [(0,)])
    with pytest.raises(NotSolid):
        certify_lasting_weak(m)


@pytest.mark.parametrize("field, value", [
    ("functional", ["1", "0"]),
    ("a0_index", 2),
    ("value", "1"),
    ("a0", ["1"]),
])
def test_audit_rejects_tampered_certificates(field, value):
    data = certify_lasting_weak(I1).to_json()
    data = json.loads(json.dumps(data))
    data[field] = value
    assert audit_certificate(data, I1)


def test_audit_rejects_bad_separation():
    data = certify_lasting_weak(I1).to_json()
    data["separations"][1]["margin"] = "5"
    assert audit_certificate(data, I1)
    data = certify_lasting_weak(I1).to_json()
    del data["separations"][0]
    assert audit_certificate(data, I1)


def test_require_audit_raises():
    cert = certify_lasting_weak(I1)
    other = LimitModel.build([HALF_LINE, ORTHANT], [(5,), (1,), (2,)])
    with pytest.raises(AuditFailure):
        require_audit(cert, other)


def test_i1_lasting_proper():
    r = lasting_proper(I1, [F(1, 4), F(1, 8)])
    assert r.members == (0,)
    assert r.certificate.epsilon == F(1, 4)
    assert r.certificate.certificate.a0_index == 0
    assert r.witnesses[0][1]["epsilon"] == F(1, 4)


def test_large_epsilon_names_steps():
    with pytest.raises(EpsilonTooLarge) as info:
        lasting_proper(I1, [2])
    assert info.value.details["steps"] == [1, 2]


def test_dilated_conflict():
    # (-1, 0) is interior to S_2, so every dilated sum still swallows -S_1
    m = LimitModel.build([HALF_LINE, PolyhedralCone(2, [(-1, 1), (-1, -1)])], [(0,), (1,)])
    assert not check_nonconflict(m).verdict
    with pytest.raises(DilatedConflict):
        lasting_proper(m, [F(1, 8), F(1, 16)])
    r = lasting_proper(m, [F(1, 8), F(1, 16)], strict=False)
    assert r.certificate is None and r.notes


@pytest.mark.parametrize("seed", range(12))
def test_incremental_nonconflict_matches_from_scratch(seed):
    m = generate_model(seed, (1, 2, 3))
    rep = check_nonconflict(m)
    for step in rep.steps:
        fresh = check_nonconflict_at(m, step.n)
        assert fresh.verdict == step.verdict
        assert set(fresh.conflicts) == set(step.conflicts)


@pytest.mark.parametrize("seed", range(8))
def test_nonconflicting_models_certify(seed):
    m = generate_model(seed, (2, 3), want_nonconflicting=True)
    cert = certify_lasting_weak(m)
    assert audit_certificate(cert.to_json(), m) == []
    assert cert.a0_index in lasting_weak(m).members


def test_dilated_model_keeps_points():
    dm = dilated_model(I1, F(1, 4))
    assert dm.feasible == I1.feasible
    assert dm.steps[1].cone == PolyhedralCone(2, [(3, -1), (-1, 3)])


def test_single_step_pipeline():
    m = LimitModel.build([HALF_LINE], [(3,), (5,)])
    cert = certify_lasting_weak(m)
    assert cert.functional == (1,)
    assert cert.a0 == (3,)
    assert lasting_proper(m, [F(1, 4)]).members == (0,)
