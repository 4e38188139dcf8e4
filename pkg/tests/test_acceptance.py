"""Exit-criteria campaigns, all exact.

Each test prints one ``PASS``/``FAIL`` line (outside pytest's capture) and
then asserts.  Seeds are fixed so every run checks the same instances.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conelim.campaign import (check_chains, check_cone, check_dilated_route, check_minimiser,
                              check_oracle, check_proper_vs_henig, check_scalarization,
                              dilatable_models, random_cone, random_pointed_cone, random_points,
                              usable_grid)
from conelim.generate import campaign_models
from conelim.limit import certify_lasting_weak, dilated_model

pytestmark = pytest.mark.acceptance

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
QUARTER = Fraction(1, 4)
CHAIN_GRID = [Fraction(1, 2 ** k) for k in range(2, 7)]


def report(capsys, number, title, passed, total, detail=""):
    ok = passed == total
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}: {passed}/{total}"
    if detail:
        line += f" ({detail})"
    with capsys.disabled():
        print("\n" + line)
    return ok


def tally(instances, check):
    passed, first = 0, None
    for inst in instances:
        fails = check(inst)
        if fails:
            first = first or fails[0]
        else:
            passed += 1
    return passed, first


@pytest.fixture(scope="module")
def scalarization_models():
    return campaign_models(2026, 200)


@pytest.fixture(scope="module")
def dilatable():
    return dilatable_models(7, 100, QUARTER)


def test_criterion_1_scalarization(capsys, scalarization_models):
    t0 = time.perf_counter()
    passed, first = tally(scalarization_models, check_scalarization)
    elapsed = time.perf_counter() - t0
    shapes_ok = all(m.dims[-1] <= 4 and m.horizon <= 3 and len(m.feasible) <= 12
                    and all(abs(x) <= 5 and x.denominator <= 4
                            for p in m.feasible.points for x in p)
                    for m in scalarization_models)
    detail = f"{elapsed:.1f}s" + (f"; first failure: {first}" if first else "")
    assert report(capsys, 1, "certify + audit + lasting weak membership", passed, 200, detail)
    assert shapes_ok
    assert elapsed < 60


def test_criterion_2_dilated_route(capsys, dilatable):
    t0 = time.perf_counter()
    passed, first = tally(dilatable, lambda m: check_dilated_route(m, QUARTER))
    elapsed = time.perf_counter() - t0
    detail = f"{elapsed:.1f}s" + (f"; first failure: {first}" if first else "")
    assert report(capsys, 2, "dilated a0 globally properly efficient per step", passed, 100,
                  detail)
    assert elapsed < 120


def proper_henig_instances(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = random_pointed_cone(rng, rng.randint(1, 3))
        a = random_points(rng, s.ambient_dim, rng.randint(1, 10))
        grid = usable_grid(s, [Fraction(1, 2 ** k) for k in range(1, 6)])
        if grid:
            out.append((a, s, grid))
    return out


def test_criterion_3_proper_equals_henig(capsys):
    passed, first = tally(proper_henig_instances(31, 100),
                          lambda inst: check_proper_vs_henig(*inst))
    assert report(capsys, 3, "dilating-cone and trivial-intersection routes agree", passed, 100,
                  first or "")


def test_criterion_4_oracle(capsys):
    rng = random.Random(41)
    instances = []
    for _ in range(500):
        s = random_pointed_cone(rng, rng.randint(1, 4))
        instances.append((random_points(rng, s.ambient_dim, rng.randint(1, 12)), s))
    passed, first = tally(instances, lambda inst: check_oracle(*inst))
    assert report(capsys, 4, "efficient/weak sets match the facet oracle", passed, 500,
                  first or "")


def test_criterion_5_cone_algebra(capsys):
    rng = random.Random(51)
    cones = [random_cone(rng, max_dim=4) for _ in range(500)]
    passed, first = tally(cones, lambda c: check_cone(c, rng))
    assert report(capsys, 5, "dual involution, Farkas, dilation, interior point", passed, 500,
                  first or "")


def test_criterion_6_chains(capsys, scalarization_models, dilatable):
    models = list(scalarization_models) + list(dilatable)
    passed, first = tally(models, lambda m: check_chains(m, CHAIN_GRID))
    assert report(capsys, 6, "proper <= efficient <= weak, per step and lasting", passed,
                  len(models), first or "")


def cli(*argv):
    return subprocess.run([sys.executable, "-m", "conelim", *argv], capture_output=True)


def test_criterion_7_negative_control_and_golden(capsys):
    fails = []
    bad = cli("--command", "certify", "--input", str(PROBLEMS / "i2.json"), "--json-errors")
    if bad.returncode != 3:
        fails.append(f"I2 exit code {bad.returncode}")
    else:
        details = json.loads(bad.stdout)["error"]["details"]
        if (details["n"], details["j"]) != (2, 1):
            fails.append(f"I2 witness {(details['n'], details['j'])}")
    runs = [cli("--command", "certify", "--input", str(PROBLEMS / "i1.json")) for _ in range(2)]
    if any(r.returncode != 0 for r in runs):
        fails.append("I1 certify failed")
    elif runs[0].stdout != runs[1].stdout:
        fails.append("I1 reports differ between runs")
    elif json.loads(runs[0].stdout)["result"]["certificate"]["a0"] != ["0"]:
        fails.append("I1 a0 is not (0)")
    assert report(capsys, 7, "I2 exits 3 at (n=2, j=1); I1 a0 = (0) byte-identical",
                  2 - min(2, len(fails)), 2, "; ".join(fails))


def test_criterion_8_minimiser(capsys, scalarization_models, dilatable):
    certs = [(certify_lasting_weak(m), m) for m in scalarization_models]
    certs += [(certify_lasting_weak(dm), dm)
              for dm in (dilated_model(m, QUARTER) for m in dilatable)]
    passed, first = tally(certs, lambda cm: check_minimiser(*cm))
    assert report(capsys, 8, "a0 minimises f over A and is weakly efficient per solid step",
                  passed, len(certs), first or "")
