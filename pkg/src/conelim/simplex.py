"""Exact two-phase tableau simplex with Bland's anti-cycling rule.

Pivoting runs on ``gmpy2.mpq``; inputs and outputs are ``Fraction``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from .errors import DimensionMismatch, InternalFault

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_RELATIONS = ("<=", "=", ">=")


@dataclass(frozen=True)
class LinearProgram:
    """``sense`` ``objective . x`` subject to ``constraints`` and ``bounds``.

    ``constraints`` is a sequence of ``(coefficients, relation, rhs)`` with
    relation one of ``"<="``, ``"="``, ``">="``.  ``bounds`` holds one
    ``(lower, upper)`` pair per variable, either side may be None; when
    ``bounds`` is None every variable is nonnegative.
    """

    objective: tuple
    constraints: tuple = ()
    bounds: tuple = None
    sense: str = "max"

    def __post_init__(self):
        n = len(self.objective)
        for a, rel, _ in self.constraints:
            if len(a) != n:
                raise DimensionMismatch(f"constraint has {len(a)} coefficients, expected {n}")
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
        if self.bounds is not None and len(self.bounds) != n:
            raise DimensionMismatch("one bound pair per variable required")
        if self.sense not in ("max", "min"):
            raise ValueError(f"unknown sense {self.sense!r}")

    @property
    def num_vars(self):
        return len(self.objective)

    def var_bounds(self):
        if self.bounds is None:
            return [(Fraction(0), None)] * self.num_vars
        return [(None if lo is None else Fraction(lo), None if hi is None else Fraction(hi))
                for lo, hi in self.bounds]

    def is_feasible_point(self, x):
        for (lo, hi), xi in zip(self.var_bounds(), x):
            if lo is not None and xi < lo or hi is not None and xi > hi:
                return False
        for a, rel, r in self.constraints:
            lhs = sum((Fraction(ai) * xi for ai, xi in zip(a, x)), Fraction(0))
            if rel == "<=" and lhs > r or rel == ">=" and lhs < r or rel == "=" and lhs != r:
                return False
        return True


@dataclass(frozen=True)
class LpOutcome:
    status: str
    solution: tuple = None
    value: Fraction = None
    basis: tuple = field(default=(), compare=False)


def _frac(q):
    return Fraction(int(q.numerator), int(q.denominator))


def _pivot(tab, basis, r, c):
    row = tab[r]
    piv = row[c]
    if piv != 1:
        row = [a / piv for a in row]
        tab[r] = row
    for i, other in enumerate(tab):
        if i != r:
            f = other[c]
            if f != 0:
                tab[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _iterate(tab, basis, ncols):
    """Run Bland pivots on a tableau whose last row holds reduced costs."""
    m = len(tab) - 1
    obj = m
    while True:
        enter = next((j for j in range(ncols) if tab[obj][j] > 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                key = (tab[i][-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(tab, basis, best[1], enter)


def _price(tab, basis, costs):
    """Rebuild the objective row for ``costs`` against the current basis."""
    obj = [mpq(c) for c in costs] + [mpq(0)]
    for i, b in enumerate(basis):
        cb = obj[b]
        if cb != 0:
            obj = [o - cb * t for o, t in zip(obj, tab[i])]
    return obj


def _standard_max(a_rows, b, c):
    """Maximise ``c.x`` s.t. ``a_rows x = b``, ``x >= 0`` with ``b >= 0``."""
    m, n = len(a_rows), len(c)
    tab = []
    for i, row in enumerate(a_rows):
        art = [mpq(0)] * m
        art[i] = mpq(1)
        tab.append(list(row) + art + [b[i]])
    basis = list(range(n, n + m))
    tab.append(None)
    tab[m] = _price(tab[:m], basis, [0] * n + [-1] * m)
    _iterate(tab, basis, n + m)
    if tab[m][-1] != 0:
        return INFEASIBLE, None, None

    # drive zero-valued artificials out, dropping redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= n:
            j = next((j for j in range(n) if tab[i][j] != 0), None)
            if j is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, basis, i, j)
        i += 1
    rows = [r[:n] + [r[-1]] for r in tab[:len(basis)]]
    rows.append(_price(rows, basis, c))
    status = _iterate(rows, basis, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [mpq(0)] * n
    for i, bvar in enumerate(basis):
        x[bvar] = rows[i][-1]
    return OPTIMAL, x, tuple(basis)


def solve_lp(lp):
    """Solve ``lp`` exactly; the outcome status is never an exception."""
    n = lp.num_vars
    zero = mpq(0)
    # x_i = shift_i + sum(coef * y_col)
    shift = []
    terms = []
    extra_rows = []
    ncols = 0
    for lo, hi in lp.var_bounds():
        if lo is not None:
            if hi is not None and hi < lo:
                return LpOutcome(INFEASIBLE)
            shift.append(mpq(lo))
            terms.append(((ncols, 1),))
            if hi is not None:
                extra_rows.append((ncols, mpq(hi - lo)))
            ncols += 1
        elif hi is not None:
            shift.append(mpq(hi))
            terms.append(((ncols, -1),))
            ncols += 1
        else:
            shift.append(zero)
            terms.append(((ncols, 1), (ncols + 1, -1)))
            ncols += 2

    rows = []
    for a, rel, r in lp.constraints:
        coef = [zero] * ncols
        rhs = mpq(r)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            ai = mpq(ai)
            rhs -= ai * shift[i]
            for col, sgn in terms[i]:
                coef[col] += sgn * ai
        rows.append((coef, rel, rhs))
    for col, ub in extra_rows:
        coef = [zero] * ncols
        coef[col] = mpq(1)
        rows.append((coef, "<=", ub))

    nslack = sum(1 for _, rel, _ in rows if rel != "=")
    width = ncols + nslack
    a_rows, b = [], []
    k = ncols
    for coef, rel, rhs in rows:
        row = coef + [zero] * nslack
        if rel == "<=":
            row[k] = mpq(1)
            k += 1
        elif rel == ">=":
            row[k] = mpq(-1)
            k += 1
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        a_rows.append(row)
        b.append(rhs)

    sign = 1 if lp.sense == "max" else -1
    cost = [zero] * width
    for i, ci in enumerate(lp.objective):
        if ci != 0:
            for col, sgn in terms[i]:
                cost[col] += sign * sgn * mpq(ci)

    status, y, basis = _standard_max(a_rows, b, cost)
    if status != OPTIMAL:
        return LpOutcome(status)
    x = tuple(_frac(shift[i] + sum((sgn * y[col] for col, sgn in terms[i]), zero))
              for i in range(n))
    if not lp.is_feasible_point(x):
        raise InternalFault("simplex returned a point violating the constraints")
    value = sum((Fraction(ci) * xi for ci, xi in zip(lp.objective, x)), Fraction(0))
    return LpOutcome(OPTIMAL, x, value, basis)
