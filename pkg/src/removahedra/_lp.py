"""Certified linear programming.

Floating-point LPs (scipy/HiGHS) only propose answers. Every answer returned
here is either checked in exact arithmetic or produced by the exact simplex
below, so callers never see an uncertified verdict.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np
from scipy.optimize import linprog

from . import linalg

_TOL = 1e-9


def exact_nonneg_solution(columns, target):
    """Phase-I simplex with Bland's rule: ``lam >= 0`` with ``sum lam_k columns[k] == target``.

    Returns the exact solution or ``None`` when infeasible.
    """
    m = len(columns)
    d = len(target)
    rows = []
    for r in range(d):
        row = [Fraction(columns[k][r]) for k in range(m)]
        rhs = Fraction(target[r])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(a == r)) for a in range(d)] + [rhs])
    width = m + d
    basis = [m + r for r in range(d)]
    # phase-I objective: minimise the sum of artificials
    obj = [Fraction(0)] * (width + 1)
    for row in rows:
        obj = [o - x for o, x in zip(obj, row)]
    for a in range(m, width):
        obj[a] = Fraction(0)
    while True:
        enter = next((c for c in range(width) if obj[c] < 0), None)
        if enter is None:
            break
        best = None
        for r, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:  # cannot happen in phase I (objective bounded below)
            break
        r = best[1]
        piv = rows[r][enter]
        rows[r] = [x / piv for x in rows[r]]
        for k in range(d):
            if k != r and rows[k][enter] != 0:
                f = rows[k][enter]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, rows[r])]
        basis[r] = enter
    if obj[-1] != 0:
        return None
    lam = [Fraction(0)] * m
    for r, b in enumerate(basis):
        if b < m:
            lam[b] = rows[r][-1]
    assert _is_combination(columns, target, lam)
    return lam


def _is_combination(columns, target, lam) -> bool:
    if any(x < 0 for x in lam):
        return False
    for r in range(len(target)):
        if sum(lam[k] * columns[k][r] for k in range(len(columns)) if lam[k]) != target[r]:
            return False
    return True


def _float_combination(columns, target):
    A = np.array([[float(x) for x in col] for col in columns], dtype=float).T
    b = np.array([float(x) for x in target], dtype=float)
    res = linprog(np.zeros(len(columns)), A_eq=A, b_eq=b, bounds=(0, None), method="highs-ds")
    return res


def conic_combination(columns, target, _res=None):
    """Exact ``lam >= 0`` expressing ``target`` in the cone of ``columns``, or ``None``."""
    if not columns:
        return None if any(target) else []
    res = _float_combination(columns, target) if _res is None else _res
    if res.status == 0:
        support = [k for k, x in enumerate(res.x) if x > _TOL]
        sub = [columns[k] for k in support]
        if sub:
            rows = [[Fraction(c[r]) for c in sub] for r in range(len(target))]
            sol = linalg.solve(rows, [Fraction(t) for t in target])
        else:
            sol = [] if not any(target) else None
        if sol is not None and all(x >= 0 for x in sol):
            lam = [Fraction(0)] * len(columns)
            for k, x in zip(support, sol):
                lam[k] = x
            if _is_combination(columns, target, lam):
                return lam
    return exact_nonneg_solution(columns, target)


def separating_vector(others, row):
    """Exact ``y`` with ``a.y >= 1`` for all ``a`` in ``others`` and ``row.y <= -1``, or ``None``.

    ``None`` only means the float search failed; it is not a certificate.
    """
    dim = len(row)
    A = np.array([[-float(x) for x in a] for a in others] + [[float(x) for x in row]], dtype=float)
    b = np.array([-1.0] * len(others) + [-1.0])
    res = linprog(np.zeros(dim), A_ub=A, b_ub=b, bounds=(None, None), method="highs")
    if res.status != 0:
        return None
    int_others = [[int(x) for x in a] for a in others] if _integral(others) else None
    for scale in (1, 2, 4):
        y = [Fraction(float(v) * scale).limit_denominator(10**6) for v in res.x]
        if int_others is not None and _integral([row]):
            # common denominator keeps the exact check in integer arithmetic
            den = 1
            for v in y:
                den = den * v.denominator // gcd(den, v.denominator)
            Y = [int(v * den) for v in y]
            ok = all(sum(a * b for a, b in zip(r, Y)) >= den for r in int_others)
            ok = ok and sum(int(a) * b for a, b in zip(row, Y)) <= -den
        else:
            ok = all(linalg.dot(a, y) >= 1 for a in others) and linalg.dot(row, y) <= -1
        if ok:
            return y
    return None


def _integral(rows) -> bool:
    return all(Fraction(x).denominator == 1 for r in rows for x in r)


def is_redundant(rows, k):
    """Decide whether ``rows[k].y >= 0`` follows from the others, exactly.

    Returns ``(redundant, certificate)``: the conic multipliers when redundant,
    a strictly separating ``y`` when it defines a facet (or ``None`` when
    the exact simplex produced the verdict).
    """
    others = [r for m, r in enumerate(rows) if m != k]
    res = _float_combination(others, rows[k]) if others else None
    if res is not None and res.status == 0:
        lam = conic_combination(others, rows[k], _res=res)
        if lam is not None:
            return True, lam
    y = separating_vector(others, rows[k])
    if y is not None:
        return False, y
    lam = exact_nonneg_solution(others, rows[k])
    return (lam is not None), lam
