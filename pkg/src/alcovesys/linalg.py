"""Exact rational linear algebra on small dense systems.

Everything here works on tuples of ``int`` or ``Fraction``; sizes are at most
a few dozen rows, so plain Gaussian elimination and Fourier-Motzkin
elimination are fast enough and keep the arithmetic exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple  # tuple of row tuples


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _row_reduce(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    pivots: list[int] = []
    if not rows:
        return rows, pivots
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows: Iterable[Sequence]) -> int:
    work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    return len(_row_reduce(work)[1])


def affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([vsub(q, base) for q in points[1:]])


def solve(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Unique solution of the square system ``a x = b``, or None if singular."""
    n = len(a)
    work = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    work, pivots = _row_reduce(work)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return tuple(work[i][n] for i in range(n))


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(m)]
    work, pivots = _row_reduce(work)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(work[i][n:]) for i in range(n))


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    work = [[Fraction(x) for x in row] for row in rows]
    if work:
        work, pivots = _row_reduce(work)
    else:
        pivots = []
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -work[i][f]
        basis.append(tuple(x))
    return basis


def to_int_matrix(m: Matrix) -> Matrix:
    out = []
    for row in m:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError("matrix is not integral")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


# Fourier-Motzkin feasibility ---------------------------------------------

def _normalize_ineq(a: Sequence[Fraction], b: Fraction) -> tuple[tuple[Fraction, ...], Fraction]:
    scale = max((abs(x) for x in a), default=Fraction(0))
    if scale == 0:
        return tuple(a), b
    return tuple(x / scale for x in a), b / scale


def fm_feasible(ineqs: Iterable[tuple[Sequence, object]], nvars: int) -> bool:
    """Decide whether ``{x in Q^nvars : a . x <= b for all (a, b)}`` is nonempty.

    Exact Fourier-Motzkin elimination; meant for a handful of variables.
    """
    system: dict[tuple, Fraction] = {}
    for a, b in ineqs:
        a = tuple(Fraction(x) for x in a)
        b = Fraction(b)
        key, rhs = _normalize_ineq(a, b)
        # keep the tightest right-hand side for each direction
        if key not in system or rhs < system[key]:
            system[key] = rhs
    for j in range(nvars):
        pos, neg, rest = [], [], []
        for a, b in system.items():
            (pos if a[j] > 0 else neg if a[j] < 0 else rest).append((a, b))
        new: dict[tuple, Fraction] = {}

        def add(a, b):
            key, rhs = _normalize_ineq(a, b)
            if key not in new or rhs < new[key]:
                new[key] = rhs

        for a, b in rest:
            add(a, b)
        for ap, bp in pos:
            for an, bn in neg:
                cp, cn = ap[j], -an[j]
                add(tuple(cn * x + cp * y for x, y in zip(ap, an)), cn * bp + cp * bn)
        system = new
    return all(b >= 0 for b in system.values())


# rational formatting -------------------------------------------------------

def fmt_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def parse_vector(s: str) -> tuple[Fraction, ...]:
    s = s.strip()
    if not s:
        return ()
    return tuple(parse_rational(part) for part in s.split(","))
