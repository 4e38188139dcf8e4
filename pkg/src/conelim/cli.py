"""Command line front end.

    conelim --command certify --input problem.json [--output report.json]

Commands: nonconflict, efficient, weak, proper, lasting-efficient,
lasting-weak, lasting-proper, certify, selftest, generate.  Exit codes:
0 success, 2 invalid input, 3 violated precondition, 4 internal fault.
"""

import argparse
import sys
from fractions import Fraction

from . import __version__
from . import numeric as nm
from .campaign import run_campaign
from .efficiency import efficient_set, globally_proper_set, weakly_efficient_set
from .errors import ConelimError, ValidationError
from .generate import generate_instance
from .limit import (audit_certificate, certify_lasting_weak, check_nonconflict, lasting_efficient,
                    lasting_proper, lasting_weak)
from .problem import dumps, read_problem

COMMANDS = ("nonconflict", "efficient", "weak", "proper", "lasting-efficient", "lasting-weak",
            "lasting-proper", "certify", "selftest", "generate")
NEEDS_INPUT = COMMANDS[:8]
DEFAULT_GRID = (Fraction(1, 4), Fraction(1, 8), Fraction(1, 16))


def _fv(v):
    return nm.format_vector(v)


def _witness_json(w):
    return {"epsilon": nm.format_rational(w["epsilon"]),
            "base_functional": _fv(w["base_functional"])}


def efficiency_json(report, model):
    pts = model.feasible.points
    out = {
        "kind": report.kind,
        "members": list(report.members),
        "member_points": [_fv(pts[i]) for i in report.members],
    }
    if report.witnesses:
        out["witnesses"] = {}
        for i, w in report.witnesses.items():
            if "epsilon" in w:
                out["witnesses"][str(i)] = _witness_json(w)
            else:
                out["witnesses"][str(i)] = {str(n): _witness_json(x) for n, x in w.items()}
    if report.horizon is not None:
        out["horizon"] = report.horizon
        out["per_step"] = [{"step": n, "members": list(ms)}
                           for n, ms in enumerate(report.per_step, start=1)]
    if report.notes:
        out["notes"] = list(report.notes)
    if report.certificate is not None:
        route = report.certificate
        out["dilated_route"] = {
            "epsilon": nm.format_rational(route.epsilon),
            "witness_grid": _fv(route.witness_grid),
            "certificate": route.certificate.to_json(),
        }
    return out


def nonconflict_json(report):
    return {
        "verdict": report.verdict,
        "steps": [{
            "n": s.n,
            "verdict": s.verdict,
            "separable": {str(j): _fv(y) for j, y in s.separable.items()},
            "conflicts": {str(j): [_fv(g) for g in gens] for j, gens in s.conflicts.items()},
        } for s in report.steps],
    }


def _selected_steps(model, steps):
    if not steps:
        return list(model.steps)
    out = []
    for n in steps:
        if not 1 <= n <= model.horizon:
            raise ValidationError(f"step {n} out of range 1..{model.horizon}", step=n)
        out.append(model.steps[n - 1])
    return out


def run(command, model, options=None):
    """Dispatch ``command``; returns the report dict (without the envelope)."""
    options = options or {}
    grid = options.get("epsilon_grid") or DEFAULT_GRID
    if command == "nonconflict":
        return nonconflict_json(check_nonconflict(model))
    if command in ("efficient", "weak", "proper"):
        per = []
        for s in _selected_steps(model, options.get("steps")):
            a = model.feasible_at(s.index)
            if command == "efficient":
                r = efficient_set(a, s.cone)
            elif command == "weak":
                r = weakly_efficient_set(a, s.cone)
            else:
                r = globally_proper_set(a, s.cone, grid)
            per.append({"step": s.index, **efficiency_json(r, model)})
        return {"steps": per}
    if command == "lasting-efficient":
        return efficiency_json(lasting_efficient(model), model)
    if command == "lasting-weak":
        return efficiency_json(lasting_weak(model), model)
    if command == "lasting-proper":
        return efficiency_json(lasting_proper(model, grid), model)
    if command == "certify":
        cert = certify_lasting_weak(model).to_json()
        return {"certificate": cert, "audit_failures": audit_certificate(cert, model)}
    if command == "selftest":
        res = run_campaign(options.get("seed", 0), options.get("count", 10))
        return {"seed": options.get("seed", 0),
                "properties": {k: {"passed": p, "total": t, "first_failure": f}
                               for k, (p, t, f) in res.items()},
                "ok": all(p == t for p, t, _ in res.values())}
    raise ValidationError(f"unknown command {command!r}")


def _parse_grid(text):
    return tuple(nm.parse_rational(x) for x in text.split(","))


def _parse_ints(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as e:
        raise ValidationError(f"expected comma-separated integers, got {text!r}") from e


def build_parser():
    p = argparse.ArgumentParser(prog="conelim", description=__doc__.splitlines()[0])
    p.add_argument("--command", required=True, choices=COMMANDS)
    p.add_argument("--input", help="problem file (JSON)")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--epsilon-grid", help="comma-separated, strictly decreasing rationals")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", help="comma-separated step indices (per-step commands) "
                                   "or dims (generate)")
    p.add_argument("--count", type=int, default=10, help="instances per property (selftest)")
    p.add_argument("--json-errors", action="store_true",
                   help="emit errors as JSON objects on stdout")
    p.add_argument("--version", action="version", version=__version__)
    return p


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            dims = _parse_ints(args.steps) if args.steps else [1, 2]
            _emit(dumps(generate_instance(args.seed, dims)), args.output)
            return 0
        options = {"seed": args.seed, "count": args.count}
        envelope = {"version": __version__, "arithmetic": "exact-rational",
                    "command": args.command}
        if args.command in NEEDS_INPUT:
            if not args.input:
                raise ValidationError("--input is required for this command")
            problem = read_problem(args.input)
            model = problem.model
            options["epsilon_grid"] = problem.epsilon_grid
            envelope["horizon"] = model.horizon
        else:
            model = None
        if args.epsilon_grid:
            options["epsilon_grid"] = _parse_grid(args.epsilon_grid)
        if args.steps:
            options["steps"] = _parse_ints(args.steps)
        if options.get("epsilon_grid"):
            envelope["epsilon_grid"] = _fv(options["epsilon_grid"])
        envelope["result"] = run(args.command, model, options)
        _emit(dumps(envelope), args.output)
        if args.command == "selftest" and not envelope["result"]["ok"]:
            return 4
        if args.command == "certify" and envelope["result"]["audit_failures"]:
            return 4
        return 0
    except ConelimError as e:
        if args.json_errors:
            _emit(dumps({"version": __version__, "command": args.command,
                         "error": e.to_json()}), args.output)
        else:
            print(f"conelim: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
