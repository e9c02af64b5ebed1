"""Face matrices, invariant factors and the sufficient ordinarity tests."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .ffield import is_prime
from .lattice import KloostermanFamily, basis_cardinality_formula, e_star


@dataclass(frozen=True)
class FaceMatrix:
    face: int
    matrix: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class InvariantFactors:
    s: tuple[int, ...]

    @property
    def largest(self) -> int:
        return self.s[-1]


def face_matrix(family: KloostermanFamily, j: int) -> FaceMatrix:
    """Columns are the support points on face j: the A_i for i != j, with
    gamma in column j (j >= 1)."""
    n = family.n
    if not 0 <= j <= n:
        raise ValueError(f"face index {j} outside 0..{n}")
    cols = [family.A(i) for i in range(n)]
    if j:
        cols[j - 1] = family.gamma
    rows = tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))
    return FaceMatrix(j, rows)


def smith_normal_form(M) -> InvariantFactors:
    """Diagonal of the Smith normal form of a nonsingular integer matrix.

    Pivot is always the nonzero entry of least absolute value in the
    remaining block, scanning rows first, then columns.
    """
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    for t in range(n):
        while True:
            best = None
            for r in range(t, n):
                for c in range(t, n):
                    if A[r][c] and (best is None or abs(A[r][c]) < abs(A[best[0]][best[1]])):
                        best = (r, c)
            if best is None:
                raise ValueError("matrix is singular")
            r, c = best
            A[t], A[r] = A[r], A[t]
            for row in A:
                row[t], row[c] = row[c], row[t]
            piv = A[t][t]
            dirty = False
            for r in range(t + 1, n):
                q = A[r][t] // piv
                if q:
                    A[r] = [x - q * y for x, y in zip(A[r], A[t])]
                dirty = dirty or A[r][t] != 0
            for c in range(t + 1, n):
                q = A[t][c] // piv
                if q:
                    for row in A:
                        row[c] -= q * row[t]
                dirty = dirty or A[t][c] != 0
            if dirty:
                continue
            bad = next((r for r in range(t + 1, n)
                        for c in range(t + 1, n) if A[r][c] % piv), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
    s = tuple(abs(A[i][i]) for i in range(n))
    assert all(s[i + 1] % s[i] == 0 for i in range(n - 1)), s
    return InvariantFactors(s)


def _check_prime(p):
    if p <= 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def is_nondegenerate(family: KloostermanFamily, p: int) -> bool:
    _check_prime(p)
    return prod(family.a) * prod(family.d) % p != 0


class DegenerateFamily(ValueError):
    pass


def _require_nondegenerate(family, p):
    if not is_nondegenerate(family, p):
        raise DegenerateFamily(f"p={p} divides a product of exponents of {family}")


def face_invariants(family: KloostermanFamily) -> list[InvariantFactors]:
    return [smith_normal_form(face_matrix(family, j).matrix) for j in range(family.n + 1)]


def ordinary_sufficient_estar(family: KloostermanFamily, p: int) -> bool:
    _require_nondegenerate(family, p)
    return p % e_star(family) == 1 % e_star(family)


def ordinary_sufficient_faces(family: KloostermanFamily, p: int) -> bool:
    _require_nondegenerate(family, p)
    return all((p - 1) % inv.largest == 0 for inv in face_invariants(family))


def coprime_slope_sequence(family: KloostermanFamily) -> list[Fraction] | None:
    """Slopes {sum u_i/a_i : 0 <= u_i <= a_i} when all d_i = 1 and the a_i
    are pairwise coprime; None when those hypotheses fail."""
    a = family.a
    if any(x != 1 for x in family.d):
        return None
    if any(gcd(a[i], a[j]) != 1 for i in range(len(a)) for j in range(i + 1, len(a))):
        return None
    values = {Fraction(0)}
    for ai in a:
        values = {v + Fraction(u, ai) for v in values for u in range(ai + 1)}
    out = sorted(values)
    expected = basis_cardinality_formula(family)
    if len(out) != expected:
        raise AssertionError(f"{len(out)} distinct slopes, expected {expected}")
    return out
