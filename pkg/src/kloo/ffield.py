"""Prime fields and their extensions F_p[x]/(h), with the absolute trace.

Polynomials over F_p are lists of residues, lowest degree first.  Each
extension degree gets its own modulus; no compatible towers are built since
only the trace down to F_p is ever needed.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


# ------------------------------------------------------ polynomials over F_p

def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] += fi * gj
    return _trim([c % p for c in out])


def poly_divmod(f, g, p):
    f = _trim([c % p for c in f])
    g = _trim([c % p for c in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    while len(r) >= len(g):
        c = r[-1] * inv_lead % p
        shift = len(r) - len(g)
        q[shift] = c
        for i, gi in enumerate(g):
            r[shift + i] = (r[shift + i] - c * gi) % p
        _trim(r)
    return _trim(q), r


def poly_mod(f, g, p):
    return poly_divmod(f, g, p)[1]


def poly_gcd(f, g, p):
    f = _trim([c % p for c in f])
    g = _trim([c % p for c in g])
    while g:
        f, g = g, poly_mod(f, g, p)
    return f


def poly_powmod(f, e, m, p):
    result = [1]
    base = poly_mod(f, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic f over F_p."""
    f = _trim([c % p for c in f])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True

    def frob_minus_x(times):
        # x^(p^times) - x  mod f
        h = poly_powmod([0, 1], p ** times, f, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        return _trim(h)

    if frob_minus_x(k):
        return False
    return all(len(poly_gcd(frob_minus_x(k // r), f, p)) == 1 for r in prime_factors(k))


@lru_cache(maxsize=None)
def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k, coefficients low-to-high.

    Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are scanned in counting order
    of (c_0, ..., c_{k-1}) with c_0 varying fastest.
    """
    for m in range(p ** k):
        coeffs = []
        for _ in range(k):
            m, c = divmod(m, p)
            coeffs.append(c)
        if is_irreducible(coeffs + [1], p):
            return tuple(coeffs + [1])
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


# ------------------------------------------------------------- the field

class ExtensionField:
    """F_{p^k} realised as F_p[x]/(modulus)."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if p <= 2 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        if modulus is None:
            modulus = find_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1 or not is_irreducible(modulus, p):
            raise ValueError(f"{modulus} is not a monic irreducible of degree {k}")
        self.modulus = modulus
        self.order = p ** k

    def __repr__(self):
        return f"ExtensionField(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, int):
            return FieldElement(self, [value])
        return FieldElement(self, value)

    def zero(self):
        return FieldElement(self, [])

    def one(self):
        return FieldElement(self, [1])

    def gen(self):
        """The class of x."""
        return FieldElement(self, [0, 1])

    def from_index(self, m: int) -> FieldElement:
        coeffs = []
        for _ in range(self.k):
            m, c = divmod(m, self.p)
            coeffs.append(c)
        return FieldElement(self, coeffs)

    def enumerate_nonzero(self, limit: int | None = None) -> Iterator[FieldElement]:
        """All p^k - 1 nonzero elements in coefficient counting order."""
        if limit is not None and self.order - 1 > limit:
            raise OverflowError(f"{self.order - 1} elements exceed the limit {limit}")
        for m in range(1, self.order):
            yield self.from_index(m)

    @lru_cache(maxsize=None)
    def basis_traces(self) -> tuple[int, ...]:
        """Tr(x^i) for i = 0..k-1, which makes the trace a dot product."""
        x = self.gen()
        return tuple((x ** i).trace() for i in range(self.k))

    @lru_cache(maxsize=None)
    def primitive_element(self) -> FieldElement:
        """First generator of the multiplicative group in counting order."""
        N = self.order - 1
        factors = prime_factors(N)
        for m in range(1, self.order):
            z = self.from_index(m)
            if all(z ** (N // r) != self.one() for r in factors):
                return z
        raise AssertionError("multiplicative group has no generator")


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtensionField, coeffs: Sequence[int]):
        p = field.p
        r = poly_mod([int(c) for c in coeffs], field.modulus, p)
        self.field = field
        self.coeffs = tuple(r + [0] * (field.k - len(r)))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return FieldElement(self.field, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, poly_mul(list(self.coeffs), list(other.coeffs), p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*x^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"

    def trace(self) -> int:
        """Absolute trace z + z^p + ... + z^(p^(k-1)) as a residue mod p."""
        p = self.field.p
        total = self
        z = self
        for _ in range(self.field.k - 1):
            z = z ** p
            total = total + z
        if any(total.coeffs[1:]):
            raise AssertionError(f"trace of {self} left the prime field: {total}")
        return total.coeffs[0]


def absolute_trace(z: FieldElement) -> int:
    return z.trace()
