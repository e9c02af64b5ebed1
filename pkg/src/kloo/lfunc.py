"""Brute-force L-functions of the Kloosterman family over F_p.

S_k is computed by visiting every point of the torus (F_{p^k}^*)^n.  Each
point contributes zeta^t with t the absolute trace of F(lam, x); only the
histogram of t is accumulated and the cyclotomic sum is formed once.  The
coefficients of L^{(-1)^(n-1)} follow from Newton's identities and their
p-adic valuations give the Newton polygon.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .cyclotomic import CyclotomicInteger, pi_adic_valuation
from .ffield import ExtensionField
from .lattice import KloostermanFamily, basis_cardinality_formula
from .ordinarity import DegenerateFamily, is_nondegenerate
from .polygon import INF, Polygon, newton_polygon

DEFAULT_BUDGET = 10 ** 8


class BudgetExceeded(RuntimeError):
    pass


def point_budget() -> int:
    """Point evaluations allowed per S_k; KLOO_BUDGET overrides the default."""
    raw = os.environ.get("KLOO_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(float(raw))
    except ValueError:
        raise ValueError(f"KLOO_BUDGET must be a number, got {raw!r}") from None
    if value < 1:
        raise ValueError("KLOO_BUDGET must be positive")
    return value


def _validate(family, p, lam):
    if not is_nondegenerate(family, p):
        raise DegenerateFamily(f"p={p} divides a product of exponents of {family}")
    if lam % p == 0:
        raise ValueError("lambda must be nonzero mod p")


def evaluations_needed(family: KloostermanFamily, p: int, k: int) -> int:
    return (p ** k - 1) ** family.n


def check_budget(family, p, k, budget=None):
    budget = point_budget() if budget is None else budget
    need = evaluations_needed(family, p, k)
    if need > budget:
        raise BudgetExceeded(f"S_{k} over F_{p}^{k} needs {need} evaluations, budget is {budget}")


def _count_slab(args):
    backend, table, p, a, d, lam, start, stop = args
    return kernels.get_backend(backend).count_traces(table, p, a, d, lam, start, stop)


def trace_counts(family: KloostermanFamily, p: int, lam: int, k: int, *,
                 budget: int | None = None, workers: int = 1,
                 backend: str | None = None) -> np.ndarray:
    """counts[c] = #{x in (F_{p^k}^*)^n : Tr F(lam, x) = c}."""
    _validate(family, p, lam)
    check_budget(family, p, k, budget)
    field = ExtensionField(p, k)
    N = field.order - 1
    g = field.primitive_element()
    kern = kernels.get_backend(backend)
    table = kern.trace_power_table(p, field.modulus, g.coeffs, field.basis_traces(), N)
    a, d, lam = family.a, family.d, lam % p
    if workers <= 1 or N < 2 * workers:
        counts = kern.count_traces(table, p, a, d, lam, 0, N)
    else:
        cuts = [N * i // workers for i in range(workers + 1)]
        jobs = [(backend, table, p, a, d, lam, lo, hi) for lo, hi in zip(cuts, cuts[1:])]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = sum(pool.map(_count_slab, jobs))
    total = int(counts.sum())
    if total != N ** family.n:
        raise AssertionError(f"histogram covers {total} points, torus has {N ** family.n}")
    return counts


def exponential_sum(family: KloostermanFamily, p: int, lam: int, k: int, **kw) -> CyclotomicInteger:
    """S_k = sum over the torus of zeta_p^(Tr F(lam, x))."""
    return CyclotomicInteger.from_counts([int(c) for c in trace_counts(family, p, lam, k, **kw)])


def exponential_sum_naive(family: KloostermanFamily, p: int, lam: int, k: int) -> CyclotomicInteger:
    """Slow S_k: field arithmetic and one zeta power per point."""
    _validate(family, p, lam)
    field = ExtensionField(p, k)
    elems = list(field.enumerate_nonzero())
    lam_f = field(lam)
    total = CyclotomicInteger.from_int(p, 0)
    stack = [()]
    while stack:
        xs = stack.pop()
        if len(xs) < family.n:
            stack.extend(xs + (z,) for z in elems)
            continue
        value = lam_f
        for x, di in zip(xs, family.d):
            value = value * x.inverse() ** di
        for x, ai in zip(xs, family.a):
            value = value + x ** ai
        total = total + CyclotomicInteger.zeta_power(p, value.trace())
    return total


@dataclass(frozen=True)
class LPolynomial:
    """L(F, T)^{(-1)^(n-1)} = sum_m coeffs[m] T^m."""

    family: KloostermanFamily
    p: int
    lam: int
    coeffs: tuple[CyclotomicInteger, ...]
    sums: tuple[CyclotomicInteger, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def sign_exponent(self) -> int:
        return (-1) ** (self.family.n - 1)

    def valuations(self):
        return [(m, pi_adic_valuation(c)) for m, c in enumerate(self.coeffs)]


def newton_identities(sums: Sequence[CyclotomicInteger], n: int) -> list[CyclotomicInteger]:
    """Coefficients A_0..A_D of prod(1 - alpha_i T) from S_1..S_D.

    With power sums P_k = (-1)^n S_k, m A_m = -sum_{i=1}^m P_i A_{m-i}.
    The division by m must be exact.
    """
    if not sums:
        raise ValueError("need at least one exponential sum")
    p = sums[0].p
    sign = (-1) ** n
    power = [None] + [s * sign for s in sums]
    A = [CyclotomicInteger.from_int(p, 1)]
    for m in range(1, len(sums) + 1):
        acc = CyclotomicInteger.from_int(p, 0)
        for i in range(1, m + 1):
            acc = acc + power[i] * A[m - i]
        A.append((-acc).exact_div(m))
    return A


def l_polynomial(family: KloostermanFamily, p: int, lam: int, **kw) -> LPolynomial:
    D = basis_cardinality_formula(family)
    _validate(family, p, lam)
    check_budget(family, p, D, kw.get("budget"))
    sums = [exponential_sum(family, p, lam, k, **kw) for k in range(1, D + 1)]
    return LPolynomial(family, p, lam % p, tuple(newton_identities(sums, family.n)), tuple(sums))


def newton_polygon_bruteforce(family: KloostermanFamily, p: int, lam: int, **kw) -> Polygon:
    L = l_polynomial(family, p, lam, **kw)
    vals = L.valuations()
    if vals[-1][1] is INF:
        raise AssertionError("leading coefficient vanished")
    return newton_polygon(vals)


def predict_next_sum(coeffs: Sequence[CyclotomicInteger], sums: Sequence[CyclotomicInteger],
                     n: int) -> CyclotomicInteger:
    """S_{D+1} implied by a degree-D polynomial with the given coefficients."""
    D = len(coeffs) - 1
    sign = (-1) ** n
    power = [None] + [s * sign for s in sums[:D]]
    acc = CyclotomicInteger.from_int(coeffs[0].p, 0)
    for i in range(1, D + 1):
        acc = acc + coeffs[i] * power[D + 1 - i]
    return (-acc) * sign


def consistency_check_extra_sum(family: KloostermanFamily, p: int, lam: int, *,
                                coeffs: Sequence[CyclotomicInteger] | None = None,
                                L: LPolynomial | None = None, **kw) -> bool:
    """Does the degree-D polynomial predict the brute-force S_{D+1}?

    `coeffs` substitutes the polynomial's coefficients (negative controls).
    """
    D = basis_cardinality_formula(family)
    check_budget(family, p, D + 1, kw.get("budget"))
    if L is None:
        L = l_polynomial(family, p, lam, **kw)
    coeffs = L.coeffs if coeffs is None else tuple(coeffs)
    predicted = predict_next_sum(coeffs, L.sums, family.n)
    return predicted == exponential_sum(family, p, lam, D + 1, **kw)
