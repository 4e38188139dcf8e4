"""Problem files: JSON in, validated :class:`LimitModel` out, and back.

Format::

    {
      "steps": [{"dim": 1, "generators": [["1"]]},
                {"dim": 2, "generators": [["1", "0"], ["0", "1"]]}],
      "feasible_points": [["0"], ["1"], ["2"]],
      "epsilon_grid": ["1/4", "1/8"],      # optional
      "labels": ["a", "b", "c"],          # optional
      "seed": 1                           # optional, informational
    }

Rationals are strings (``"p/q"``, integers or finite decimals).  Validation
errors name the offending location as a JSON pointer.
"""

import json
from dataclasses import dataclass

from . import numeric as nm
from .cones import PolyhedralCone, diagnostics
from .errors import ParseError, ValidationError
from .limit import LimitModel


@dataclass(frozen=True)
class ProblemFile:
    model: LimitModel
    epsilon_grid: tuple = None
    seed: int = None


def _fail(pointer, message):
    raise ValidationError(f"{pointer}: {message}", pointer=pointer)


def _vector(raw, dim, pointer):
    if not isinstance(raw, list):
        _fail(pointer, "expected a list of rational strings")
    if dim is not None and len(raw) != dim:
        _fail(pointer, f"expected {dim} coordinates, got {len(raw)}")
    out = []
    for k, x in enumerate(raw):
        if isinstance(x, float):
            _fail(f"{pointer}/{k}", "floats are not exact; write rationals as strings")
        try:
            out.append(nm.parse_rational(x))
        except ParseError as e:
            raise ValidationError(f"{pointer}/{k}: {e}", pointer=f"{pointer}/{k}") from e
    return tuple(out)


def parse_problem(data):
    if not isinstance(data, dict):
        _fail("", "problem must be a JSON object")
    steps = data.get("steps")
    if not isinstance(steps, list) or not steps:
        _fail("/steps", "at least one step is required")
    cones = []
    prev = None
    for i, st in enumerate(steps):
        ptr = f"/steps/{i}"
        if not isinstance(st, dict):
            _fail(ptr, "step must be an object")
        dim = st.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            _fail(f"{ptr}/dim", "dim must be a positive integer")
        if prev is not None and dim <= prev:
            _fail(f"{ptr}/dim", "dims must strictly increase")
        prev = dim
        gens = st.get("generators")
        if not isinstance(gens, list):
            _fail(f"{ptr}/generators", "expected a list of generators")
        cone = PolyhedralCone(dim, [_vector(g, dim, f"{ptr}/generators/{k}")
                                    for k, g in enumerate(gens)])
        if not diagnostics(cone).pointed:
            _fail(f"{ptr}/generators", "cone not pointed")
        cones.append(cone)

    pts = data.get("feasible_points")
    if not isinstance(pts, list) or not pts:
        _fail("/feasible_points", "feasible set must be nonempty")
    d1 = cones[0].ambient_dim
    points = [_vector(p, d1, f"/feasible_points/{k}") for k, p in enumerate(pts)]

    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != len(points):
            _fail("/labels", "one label per feasible point required")
        labels = tuple(str(x) for x in labels)

    grid = data.get("epsilon_grid")
    if grid is not None:
        if not isinstance(grid, list) or not grid:
            _fail("/epsilon_grid", "expected a nonempty list of rational strings")
        grid = _vector(grid, None, "/epsilon_grid")
        if any(e <= 0 for e in grid):
            _fail("/epsilon_grid", "entries must be positive")
        if any(x <= y for x, y in zip(grid, grid[1:])):
            _fail("/epsilon_grid", "entries must strictly decrease")

    seed = data.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        _fail("/seed", "seed must be an integer")
    return ProblemFile(LimitModel.build(cones, points, labels), grid, seed)


def read_problem(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON: {e}") from e
    except OSError as e:
        raise ValidationError(f"{path}: cannot read: {e.strerror}") from e
    return parse_problem(data)


def load_problem(path):
    return read_problem(path).model


def serialize_problem(model, epsilon_grid=None, seed=None):
    out = {
        "steps": [{"dim": s.dim, "generators": [nm.format_vector(g) for g in s.cone.generators]}
                  for s in model.steps],
        "feasible_points": [nm.format_vector(p) for p in model.feasible.points],
    }
    if model.feasible.labels is not None:
        out["labels"] = list(model.feasible.labels)
    if epsilon_grid is not None:
        out["epsilon_grid"] = nm.format_vector(epsilon_grid)
    if seed is not None:
        out["seed"] = seed
    return out


def dumps(obj):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
