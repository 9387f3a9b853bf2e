"""Exact linear algebra helpers (rational, integer and mod-2 systems)."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[int]):
    """Solve a x = b over Q.

    Returns (solution, unique) with solution a list of Fractions, or
    (None, False) when the system is inconsistent.
    """
    from sympy import Matrix

    m = Matrix(a)
    rhs = Matrix(list(b))
    try:
        sol, params = m.gauss_jordan_solve(rhs)
    except ValueError:
        return None, False
    unique = params.shape[0] == 0
    if not unique:
        sol = sol.subs({p: 0 for p in params})
    return [Fraction(int(x.p), int(x.q)) for x in sol], unique


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list]:
    """Some integer solution of a x = b, or None (Smith normal form)."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_decomp

    rows, cols = len(a), len(a[0]) if a else 0
    if rows == 0:
        return [0] * cols
    m = Matrix(a)
    d, u, v = smith_normal_decomp(m, domain=ZZ)  # d = u * m * v
    c = u * Matrix(list(b))
    y = [0] * cols
    for i in range(rows):
        di = d[i, i] if i < cols else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di:
                return None
            y[i] = int(c[i] // di)
    x = v * Matrix(y)
    return [int(t) for t in x]


def solve_gf2(a: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list]:
    """Some solution of a x = b over GF(2), or None."""
    rows = [[x % 2 for x in r] + [bi % 2] for r, bi in zip(a, b)]
    n = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] and not any(row[:-1]) for row in rows):
        return None
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x
