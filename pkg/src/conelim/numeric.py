"""Exact rational scalars, vectors and small dense linear algebra.

Vectors are plain tuples of :class:`fractions.Fraction` (or ``int``, which
mixes freely with ``Fraction``).  Matrices are sequences of row vectors.
Nothing here ever touches floating point.
"""

import re
from collections import namedtuple
from fractions import Fraction
from math import gcd, lcm

from .errors import DimensionMismatch, DivisionByZero, ParseError

_INT_OR_RATIO = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.\d*|\.\d+)$")

RankSolve = namedtuple("RankSolve", "rank solution nullspace")


def parse_rational(text):
    """Parse an integer, ``"p/q"`` or finite decimal string into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}")
    s = text.strip()
    if _INT_OR_RATIO.match(s):
        if "/" in s:
            p, q = s.split("/")
            if int(q) == 0:
                raise DivisionByZero(f"zero denominator in {text!r}")
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    if _DECIMAL.match(s):
        return Fraction(s)
    raise ParseError(f"malformed rational {text!r}")


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vector(coords):
    return tuple(parse_rational(c) for c in coords)


def format_vector(v):
    return [format_rational(c) for c in v]


def _check_dims(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"dimension mismatch: {len(u)} vs {len(v)}")


def dot(u, v):
    _check_dims(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u, v):
    _check_dims(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    _check_dims(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(t, v):
    return tuple(t * a for a in v)


def neg(v):
    return tuple(-a for a in v)


def is_zero(v):
    return all(a == 0 for a in v)


def vsum(vectors, dim):
    total = [Fraction(0)] * dim
    for v in vectors:
        _check_dims(total, v)
        for k, a in enumerate(v):
            total[k] += a
    return tuple(total)


def primitive(v):
    """Scale ``v`` to the primitive integer vector on the same ray.

    Returns a tuple of ints with gcd 1; the zero vector maps to zeros.
    """
    fr = [Fraction(a) for a in v]
    den = 1
    for a in fr:
        den = lcm(den, a.denominator)
    ints = [int(a * den) for a in fr]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def transpose(m):
    return [tuple(col) for col in zip(*m)] if m else []


def _rref(rows, ncols):
    """Reduced row echelon form in place; returns pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [a / piv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def gaussian_rank_solve(m, rhs=None, ncols=None):
    """Rank, a particular solution of ``m x = rhs`` and a kernel basis.

    ``solution`` is None when ``rhs`` is None or the system is inconsistent.
    Kernel vectors are primitive integer tuples with a positive leading entry.
    ``ncols`` is needed only when ``m`` has no rows.
    """
    m = [tuple(row) for row in m]
    if ncols is None:
        if not m:
            raise DimensionMismatch("cannot infer column count of an empty matrix")
        ncols = len(m[0])
    for row in m:
        if len(row) != ncols:
            raise DimensionMismatch("matrix is not rectangular")
    if rhs is not None and len(rhs) != len(m):
        raise DimensionMismatch(f"rhs has {len(rhs)} entries for {len(m)} rows")

    aug = [[Fraction(a) for a in row] + ([Fraction(rhs[i])] if rhs is not None else [])
           for i, row in enumerate(m)]
    pivots = _rref(aug, ncols)
    rank = len(pivots)

    solution = None
    if rhs is not None:
        consistent = all(row[ncols] == 0 for row in aug[rank:])
        if consistent:
            x = [Fraction(0)] * ncols
            for i, c in enumerate(pivots):
                x[c] = aug[i][ncols]
            solution = tuple(x)

    nullspace = []
    free = [c for c in range(ncols) if c not in pivots]
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, c in enumerate(pivots):
            x[c] = -aug[i][f]
        v = primitive(x)
        lead = next(a for a in v if a != 0)
        if lead < 0:
            v = tuple(-a for a in v)
        nullspace.append(v)
    return RankSolve(rank, solution, nullspace)


def rank(m, ncols=None):
    if not m:
        return 0
    return gaussian_rank_solve(m, ncols=ncols).rank
