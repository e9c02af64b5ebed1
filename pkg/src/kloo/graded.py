"""The graded ring of Laurent polynomials under the weight filtration, and
reduction of monomials to the basis set modulo the Jacobian ideal.

In the graded ring x^u * x^v = x^(u+v) when u and v are cofacial and 0
otherwise.  The Jacobian ideal is generated by

    F_l = x_l dF/dx_l = a_l x^(A_l) - d_l lam x^gamma,    l = 1..n,

each homogeneous of weight 1.  Coefficients live in F_p.

reduce_monomial() rewrites x^v one relation at a time following a fixed
case analysis (box points, the positive cone, the negative cones).  Every
rewrite uses a genuine element of the ideal computed with graded products,
so whatever the route, the answer is a valid normal form; the linear
algebra in reduce_by_linear_algebra() is an independent check on it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .lattice import (
    KloostermanFamily,
    Point,
    cofacial,
    cone_membership,
    in_basis,
    weight,
)


class ReductionError(RuntimeError):
    """Rewriting failed to reach the basis within the step budget."""


def _check_params(family, p, lam):
    if any(x % p == 0 for x in family.a + family.d):
        raise ValueError(f"p={p} divides an exponent of {family}")
    if lam % p == 0:
        raise ValueError("lambda must be nonzero mod p")


@dataclass(frozen=True)
class GradedElement:
    family: KloostermanFamily
    p: int
    lam: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for v, c in self.terms.items():
            v = tuple(int(x) for x in v)
            if len(v) != self.family.n:
                raise ValueError(f"exponent {v} has the wrong length")
            c %= self.p
            if c:
                clean[v] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "lam", self.lam % self.p)

    @classmethod
    def monomial(cls, family, p, lam, v, coeff=1):
        return cls(family, p, lam, {tuple(v): coeff})

    def _compatible(self, other):
        if (self.family, self.p, self.lam) != (other.family, other.p, other.lam):
            raise ValueError("graded elements over different families, primes or lambdas")

    def __add__(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for v, c in other.terms.items():
            terms[v] = terms.get(v, 0) + c
        return GradedElement(self.family, self.p, self.lam, terms)

    def scale(self, c):
        return GradedElement(self.family, self.p, self.lam,
                             {v: x * c for v, x in self.terms.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        return graded_multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return (self.family, self.p, self.lam, self.terms) == (other.family, other.p, other.lam, other.terms)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, v) -> int:
        return self.terms.get(tuple(v), 0)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*x^{v}" for v, c in sorted(self.terms.items()))


def graded_multiply(e1: GradedElement, e2: GradedElement) -> GradedElement:
    e1._compatible(e2)
    fam = e1.family
    out: dict = {}
    for u, cu in e1.terms.items():
        for v, cv in e2.terms.items():
            if cofacial(fam, u, v):
                w = tuple(x + y for x, y in zip(u, v))
                out[w] = out.get(w, 0) + cu * cv
    return GradedElement(fam, e1.p, e1.lam, out)


def jacobian_term(family: KloostermanFamily, p: int, lam: int, l: int) -> GradedElement:
    """F_l = a_l x^(A_l) - d_l lam x^gamma; l is 1-based."""
    if not 1 <= l <= family.n:
        raise ValueError(f"index {l} outside 1..{family.n}")
    a, d = family.a[l - 1], family.d[l - 1]
    if a % p == 0 or d % p == 0:
        raise ValueError(f"p={p} divides a_{l} or d_{l}")
    return GradedElement(family, p, lam, {family.A(l - 1): a, family.gamma: -d * lam})


def _act(family, p, lam, l, u):
    """F_l * x^u in the graded ring (l 0-based)."""
    return graded_multiply(jacobian_term(family, p, lam, l + 1),
                           GradedElement.monomial(family, p, lam, u))


def _sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _add(u, v):
    return tuple(x + y for x, y in zip(u, v))


# ------------------------------------------------------ rewrite rules

def _pair_relation(family, p, lam, v, j, i):
    """d_i F_j x^(v - A_j) - d_j F_i x^(v - A_j): the gamma terms cancel,
    leaving d_i a_j x^v against d_j a_i x^(v - A_j + A_i) (if cofacial)."""
    d = family.d
    u = _sub(v, family.A(j))
    return (_act(family, p, lam, j, u).scale(d[i])
            - _act(family, p, lam, i, u).scale(d[j]))


def _violations(family, v):
    """The pair sets M1 (upper inequality broken) and M2 (lower broken)."""
    a, d = family.a, family.d
    n = family.n
    m1, m2 = [], []
    for i in range(n):
        for j in range(i + 1, n):
            if d[i] * v[j] >= d[j] * v[i] + d[i] * a[j]:
                m1.append((i, j))
            elif d[i] * v[j] < d[j] * (v[i] - a[i]):
                m2.append((i, j))
    return m1, m2


def _box_rule(family, p, lam, v):
    """Box points off the basis: trade A_{j0} for A_{i0}.

    j0 is the largest index maximising (v_j - a_j)/d_j over the indices
    that sit on the large side of a broken pair; i0 is the least index
    minimising v_i/d_i among its partners.
    """
    a, d = family.a, family.d
    m1, m2 = _violations(family, v)
    J = {j for (_, j) in m1} | {i for (i, _) in m2}
    j0 = max(J, key=lambda j: (Fraction(v[j] - a[j], d[j]), j))
    I = {i for (i, j) in m1 if j == j0} | {j for (i, j) in m2 if i == j0}
    i0 = min(I, key=lambda i: (Fraction(v[i], d[i]), i))
    kind = "M1" if (i0, j0) in m1 else "M2"
    rel = _pair_relation(family, p, lam, v, j0, i0)
    return rel, f"box/{kind}: d_{i0 + 1}*F_{j0 + 1} - d_{j0 + 1}*F_{i0 + 1} on x^{_sub(v, family.A(j0))}"


def _rule(family, p, lam, v):
    """Relation (element of the Jacobian ideal) containing x^v, with a label."""
    a, d = family.a, family.d
    n = family.n
    if n == 1:
        if v[0] > a[0]:
            u = (v[0] - a[0],)
        else:  # v <= -d
            u = (v[0] + d[0],)
        return _act(family, p, lam, 0, u), f"F_1 on x^{u}"

    if all(-d[i] < v[i] <= a[i] for i in range(n)):
        return _box_rule(family, p, lam, v)

    cones = cone_membership(family, v)
    if 0 in cones:
        # positive cone with some coordinate above its box
        j = min(i for i in range(n) if v[i] > a[i])
        u = _sub(v, family.A(j))
        zeros = [k for k in range(n) if v[k] == 0]
        if not zeros:
            return _act(family, p, lam, j, u), f"C0/no zeros: F_{j + 1} on x^{u}"
        k = zeros[0]
        rel = _act(family, p, lam, j, u).scale(d[k]) - _act(family, p, lam, k, u).scale(d[j])
        return rel, f"C0/zero at {k + 1}: d_{k + 1}*F_{j + 1} - d_{j + 1}*F_{k + 1} on x^{u}"

    i = min(cones) - 1
    tied = [j for j in range(n) if j != i and d[i] * v[j] == d[j] * v[i]]
    big = [k for k in range(n) if k != i and v[k] > a[k]]
    u = _sub(v, family.gamma)
    if big:
        # interior of the cone: x^(v - A_k) is not cofacial with A_i, which
        # kills x^v; on a shared wall the same pair trades A_k for A_i
        k = big[0]
        tag = "interior" if not tied else "wall"
        rel = _pair_relation(family, p, lam, v, k, i)
        return rel, f"C{i + 1}/{tag}: d_{i + 1}*F_{k + 1} - d_{k + 1}*F_{i + 1} on x^{_sub(v, family.A(k))}"
    if not tied or v[i] >= -d[i]:
        return _act(family, p, lam, i, u), f"C{i + 1}: F_{i + 1} on x^{u}"
    # v_i < -d_i on a wall: shift by -gamma and step off the wall along j1
    j1 = tied[0]
    return _act(family, p, lam, j1, u), f"C{i + 1}/wall: F_{j1 + 1} on x^{u}"


@dataclass(frozen=True)
class ReductionStep:
    monomial: Point
    relation: str
    replacement: tuple  # ((coeff, point), ...)


@dataclass(frozen=True)
class ReductionResult:
    combination: tuple  # ((coeff, point), ...) with points in the basis
    steps: int
    trace: tuple = ()

    def as_dict(self):
        return {v: c for c, v in self.combination}


def step_budget(family: KloostermanFamily, v: Sequence[int]) -> int:
    size = family.n + sum(family.a) + sum(family.d)
    return 64 * size * max(1, sum(abs(x) for x in v))


def reduce_monomial(family: KloostermanFamily, p: int, lam: int, v: Sequence[int], *,
                    max_steps: int | None = None) -> ReductionResult:
    """Normal form of x^v over the basis set modulo the Jacobian ideal."""
    _check_params(family, p, lam)
    v = tuple(int(x) for x in v)
    if len(v) != family.n:
        raise ValueError(f"point {v} has length {len(v)}, expected {family.n}")
    lam %= p
    budget = step_budget(family, v) if max_steps is None else max_steps
    terms = {v: 1}
    trace = []
    steps = 0
    while True:
        pending = sorted(w for w in terms if not in_basis(family, w))
        if not pending:
            break
        if steps >= budget:
            raise ReductionError(f"x^{v} not reduced after {steps} steps")
        w = pending[0]
        rel, label = _rule(family, p, lam, w)
        lead = rel.coefficient(w)
        if not lead:
            raise ReductionError(f"rule '{label}' does not involve x^{w}")
        factor = terms.pop(w) * pow(lead, -1, p) % p
        replacement = []
        for m, c in rel.terms.items():
            if m == w:
                continue
            add = -factor * c % p
            replacement.append((add, m))
            terms[m] = (terms.get(m, 0) + add) % p
            if not terms[m]:
                del terms[m]
        steps += 1
        trace.append(ReductionStep(w, label, tuple(sorted(replacement, key=lambda t: t[1]))))
    combo = tuple(sorted(((c, m) for m, c in terms.items()), key=lambda t: t[1]))
    return ReductionResult(combo, steps, tuple(trace))


# ------------------------------------------------ linear-algebra oracle

@lru_cache(maxsize=1024)
def points_of_weight(family: KloostermanFamily, c: Fraction) -> tuple[Point, ...]:
    """All integer points of weight exactly c (c * Delta sits in the box
    [-c d_i, c a_i])."""
    if c < 0:
        return ()
    ranges = [range(-int(c * di), int(c * ai) + 1) for ai, di in zip(family.a, family.d)]
    return tuple(v for v in product(*ranges) if weight(family, v) == c)


@lru_cache(maxsize=1024)
def _piece_relations(family, c):
    """Columns of the weight-c piece (non-basis first) and, for every
    relation F_l * x^u with w(u) = c - 1, the surviving column indices of
    its A_l and gamma terms (None when the product vanishes)."""
    monos = points_of_weight(family, c)
    basis_cols = [m for m in monos if in_basis(family, m)]
    other_cols = [m for m in monos if not in_basis(family, m)]
    cols = tuple(other_cols + basis_cols)
    order = {m: k for k, m in enumerate(cols)}
    rels = []
    for u in points_of_weight(family, c - 1):
        # products decided by weight additivity, not by cone tests
        g = _add(u, family.gamma)
        g_col = order[g] if weight(family, g) == c else None
        for l in range(family.n):
            m = _add(u, family.A(l))
            rels.append((l, order[m] if weight(family, m) == c else None, g_col))
    return cols, len(other_cols), tuple(rels)


@lru_cache(maxsize=256)
def _graded_piece_solver(family, p, lam, c):
    """Reduced row echelon form of the ideal in weight c, with pivots on
    non-basis monomials wherever possible."""
    cols, n_other, rels = _piece_relations(family, c)
    order = {m: k for k, m in enumerate(cols)}
    pivots = {}  # column -> row with leading 1 there
    for l, a_col, g_col in rels:
        row = {}
        if a_col is not None:
            row[a_col] = family.a[l]
        if g_col is not None:
            row[g_col] = row.get(g_col, 0) - family.d[l] * lam
        row = _eliminate({k: x % p for k, x in row.items() if x % p}, pivots, p)
        if not row:
            continue
        col = min(row)
        inv = pow(row[col], -1, p)
        row = {k: x * inv % p for k, x in row.items()}
        for k, other in list(pivots.items()):
            if col in other:
                pivots[k] = _axpy(other, row, -other[col], p)
        pivots[col] = row
    if any(col >= n_other for col in pivots):
        raise AssertionError(f"basis monomials of weight {c} are dependent modulo the ideal")
    if len(pivots) != n_other:
        raise AssertionError(f"basis monomials of weight {c} fail to span")
    return order, cols, pivots


def _axpy(x, y, s, p):
    out = dict(x)
    for k, v in y.items():
        out[k] = (out.get(k, 0) + s * v) % p
        if not out[k]:
            del out[k]
    return out


def _eliminate(row, pivots, p):
    # pivot rows are fully reduced, so one pass over the pivot columns
    # present in the original row suffices
    for col in [k for k in row if k in pivots]:
        if row.get(col):
            row = _axpy(row, pivots[col], -row[col], p)
    return row


def reduce_by_linear_algebra(family: KloostermanFamily, p: int, lam: int,
                             v: Sequence[int]) -> dict:
    """Normal form of x^v by Gaussian elimination in its graded piece."""
    _check_params(family, p, lam)
    v = tuple(int(x) for x in v)
    c = weight(family, v)
    order, cols, pivots = _graded_piece_solver(family, p, lam % p, c)
    row = _eliminate({order[v]: 1}, pivots, p)
    return {cols[k]: x for k, x in row.items()}
