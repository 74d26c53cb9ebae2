"""Exact rational linear algebra on small dense matrices (lists of rows)."""

from __future__ import annotations

from fractions import Fraction


def to_fraction_rows(rows) -> list:
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(rows):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = to_fraction_rows(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    rows = list(rows)
    if not rows:
        return 0
    return len(row_echelon(rows)[1])


def nullspace(rows, ncols: int | None = None) -> list:
    """Basis of ``{x : rows @ x = 0}`` with integer-scaled entries."""
    rows = list(rows)
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(k == c)) for k in range(ncols)] for c in range(ncols)]
    ncols = len(rows[0])
    m, pivots = row_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        basis.append(primitive(v))
    return basis


def primitive(v) -> list:
    """Scale a rational vector to coprime integers, keeping its direction."""
    from math import gcd

    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return [Fraction(0)] * len(v)
    return [Fraction(x // g) for x in ints]


def left_kernel(vectors) -> list:
    """Coefficient vectors ``c`` with ``sum_k c_k * vectors[k] == 0``."""
    vectors = list(vectors)
    if not vectors:
        return []
    cols = list(zip(*vectors))
    return nullspace([list(c) for c in cols], len(vectors))


def solve(rows, rhs):
    """Solve ``rows @ x = rhs``; returns one solution or ``None`` if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(aug[0]) - 1
    m, pivots = row_echelon(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = m[r][ncols]
    return x


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def det(rows) -> Fraction:
    m = to_fraction_rows(rows)
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((k for k in range(c, n) if m[k][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for k in range(c + 1, n):
            if m[k][c] != 0:
                f = m[k][c] / m[c][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[c])]
    return out


def fmt(q) -> str:
    """Canonical ``p/q`` string (integers keep the ``/1``)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse(text) -> Fraction:
    return Fraction(text)
