"""Elements of Z[zeta_p] in the power basis 1, zeta, ..., zeta^(p-2)."""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .polygon import INF


class CyclotomicInteger:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        coeffs = [int(c) for c in coeffs]
        # fold powers >= p-1 back with zeta^p = 1 and 1 + zeta + ... + zeta^(p-1) = 0
        full = [0] * p
        for j, c in enumerate(coeffs):
            full[j % p] += c
        top = full[p - 1]
        self.p = p
        self.coeffs = tuple(c - top for c in full[: p - 1])

    @classmethod
    def from_int(cls, p: int, m: int) -> CyclotomicInteger:
        return cls(p, [m])

    @classmethod
    def zeta_power(cls, p: int, j: int) -> CyclotomicInteger:
        coeffs = [0] * p
        coeffs[j % p] = 1
        return cls(p, coeffs)

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> CyclotomicInteger:
        """sum_c counts[c] * zeta^c."""
        return cls(len(counts), counts)

    def _check(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.p, [other])
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        if other.p != self.p:
            raise ValueError(f"mixing Z[zeta_{self.p}] and Z[zeta_{other.p}]")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CyclotomicInteger(self.p, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.p, [-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.p, [x * other for x in self.coeffs])
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.p
        full = [0] * p
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    full[(i + j) % p] += x * y
        return CyclotomicInteger(p, full)

    __rmul__ = __mul__

    def exact_div(self, m: int) -> CyclotomicInteger:
        """Divide by a rational integer, insisting the quotient is integral."""
        if any(c % m for c in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {m} in Z[zeta_{self.p}]")
        return CyclotomicInteger(self.p, [c // m for c in self.coeffs])

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z^{j}")
        return " + ".join(terms) or "0"


def _ord_p(m: int, p: int) -> int:
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def pi_adic_valuation(z: CyclotomicInteger):
    """ord_p(z) as a rational (so ord_p(1 - zeta) = 1/(p-1)); INF for z = 0.

    Writing z = g(zeta) and substituting zeta = 1 - u gives g(1 - u) =
    sum b_m u^m with m <= p - 2.  The terms have valuations
    ord_p(b_m) + m/(p-1), pairwise distinct, so the minimum is exact.
    """
    if z.is_zero():
        return INF
    p = z.p
    best = None
    for m in range(p - 1):
        b = sum(c * comb(j, m) for j, c in enumerate(z.coeffs) if j >= m)
        if b:
            v = (p - 1) * _ord_p(b, p) + m
            best = v if best is None else min(best, v)
    return Fraction(best, p - 1)
