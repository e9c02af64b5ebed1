"""Independent reference computations used by the tests."""
from fractions import Fraction
from itertools import combinations
from math import gcd

import sympy


def solve_fraction(M, b):
    """Solve M x = b exactly; None when M is singular."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(M, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][n] / A[i][i] for i in range(n)]


def lp_weight(support, v):
    """min sum(alpha) over alpha >= 0 with sum alpha_u u = v.

    The optimum of this LP sits at a basic feasible solution, which uses
    at most n of the support vectors; enumerate them all.
    """
    n = len(v)
    if not any(v):
        return Fraction(0)
    best = None
    for cols in combinations(range(len(support)), n):
        M = [[support[c][r] for c in cols] for r in range(n)]
        x = solve_fraction(M, v)
        if x is None or any(t < 0 for t in x):
            continue
        s = sum(x)
        best = s if best is None else min(best, s)
    assert best is not None, "support does not positively span"
    return best


def snf_by_minors(M):
    """Invariant factors as quotients of gcds of k x k minors."""
    n = len(M)
    mat = sympy.Matrix(M)
    dets = [1]
    for k in range(1, n + 1):
        g = 0
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                g = gcd(g, int(mat.extract(list(rows), list(cols)).det()))
        dets.append(g)
    return tuple(dets[k] // dets[k - 1] for k in range(1, n + 1))
