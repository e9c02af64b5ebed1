from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kloo.graded import (
    GradedElement,
    ReductionError,
    graded_multiply,
    jacobian_term,
    reduce_by_linear_algebra,
    reduce_monomial,
)
from kloo.lattice import KloostermanFamily, enumerate_basis, in_basis, weight

F = KloostermanFamily


def mono(fam, p, lam, v, c=1):
    return GradedElement.monomial(fam, p, lam, v, c)


def test_multiply_examples():
    fam = F((1, 1), (1, 1))
    x = lambda v: mono(fam, 3, 1, v)
    assert graded_multiply(x((1, 0)), x((0, 1))) == x((1, 1))
    assert not graded_multiply(x((1, 1)), x((-1, -1)))
    # A_1 and gamma span a common face, so their product survives
    assert graded_multiply(x((1, 0)), x((-1, -1))) == x((0, -1))
    for v in product(range(-3, 4), repeat=2):
        assert x((0, 0)) * x(v) == x(v)


def test_multiply_distributes_and_reduces_mod_p():
    fam = F((1, 2), (1, 1))
    e = GradedElement(fam, 5, 1, {(1, 0): 3, (0, 1): 4, (2, 2): 5})
    assert (2, 2) not in e.terms
    f = GradedElement(fam, 5, 1, {(1, 1): 2})
    prod = e * f
    assert prod.terms == {(2, 1): 1, (1, 2): 3}


def test_mismatched_elements():
    a = mono(F((1,), (1,)), 3, 1, (1,))
    with pytest.raises(ValueError):
        graded_multiply(a, mono(F((1,), (1,)), 5, 1, (1,)))
    with pytest.raises(ValueError):
        a + mono(F((2,), (1,)), 3, 1, (1,))
    with pytest.raises(ValueError):
        GradedElement(F((1, 1), (1, 1)), 3, 1, {(1,): 1})


def test_jacobian_terms():
    fam = F((1, 1), (1, 1))
    assert jacobian_term(fam, 3, 1, 1).terms == {(1, 0): 1, (-1, -1): 2}
    fam = F((2, 3), (1, 1))
    assert jacobian_term(fam, 7, 2, 2).terms == {(0, 3): 3, (-1, -1): 5}
    assert jacobian_term(F((1,), (1,)), 5, 1, 1).terms == {(1,): 1, (-1,): 4}
    with pytest.raises(ValueError):
        jacobian_term(F((3, 1), (1, 1)), 3, 1, 1)
    with pytest.raises(ValueError):
        jacobian_term(fam, 7, 1, 3)


def test_reduce_examples():
    r = reduce_monomial(F((1,), (1,)), 3, 1, (-1,))
    assert r.combination == ((1, (1,)),) and r.steps == 1
    # lambda^-1 appears as the coefficient
    r = reduce_monomial(F((1,), (1,)), 5, 2, (-1,))
    assert r.combination == ((3, (1,)),)
    r = reduce_monomial(F((1, 1), (1, 1)), 3, 1, (2, 1))
    assert r.combination == () and r.steps == 1


def test_basis_points_are_fixed():
    for a, d in [((1, 1), (1, 2)), ((2, 3), (1, 1)), ((2, 1, 1), (1, 2, 1))]:
        fam = F(a, d)
        for v in enumerate_basis(fam).points:
            r = reduce_monomial(fam, 5, 2, v)
            assert r.combination == ((1, v),) and r.steps == 0 and r.trace == ()


def test_invalid_inputs():
    fam = F((1, 3), (1, 1))
    with pytest.raises(ValueError):
        reduce_monomial(fam, 3, 1, (0, 0))
    with pytest.raises(ValueError):
        reduce_monomial(F((1, 1), (1, 1)), 3, 0, (0, 0))
    with pytest.raises(ValueError):
        reduce_monomial(F((1, 1), (1, 1)), 3, 1, (0,))


def test_step_budget_exhaustion_raises():
    with pytest.raises(ReductionError):
        reduce_monomial(F((1, 2), (2, 1)), 5, 1, (-4, -2), max_steps=1)


def _relations_in_ideal(fam, p, lam, res):
    # every trace step must rewrite within one weight
    for step in res.trace:
        w = weight(fam, step.monomial)
        for _, m in step.replacement:
            assert weight(fam, m) == w


@pytest.mark.parametrize("a,d", [((1, 1), (1, 1)), ((1, 2), (2, 1)), ((2, 3), (1, 2)),
                                 ((3,), (2,)), ((1, 1, 2), (2, 1, 1))])
def test_agrees_with_oracle(a, d):
    fam = F(a, d)
    r = 3 if fam.n < 3 else 2
    for p in (5, 7):
        for lam in (1, p - 1):
            for v in product(range(-r, r + 1), repeat=fam.n):
                res = reduce_monomial(fam, p, lam, v)
                assert all(in_basis(fam, m) for _, m in res.combination)
                assert res.as_dict() == reduce_by_linear_algebra(fam, p, lam, v), v
                _relations_in_ideal(fam, p, lam, res)


def test_single_term_inside_box():
    for a in product(range(1, 4), repeat=2):
        for d in product(range(1, 4), repeat=2):
            fam = F(a, d)
            for v in product(*[range(-di + 1, ai + 1) for ai, di in zip(a, d)]):
                assert len(reduce_monomial(fam, 5, 1, v).combination) <= 1
    for a, d in [((1, 2, 1), (2, 1, 3)), ((2, 2, 3), (1, 3, 2))]:
        fam = F(a, d)
        for v in product(*[range(-di + 1, ai + 1) for ai, di in zip(a, d)]):
            assert len(reduce_monomial(fam, 7, 3, v).combination) <= 1


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), st.data())
def test_idempotent(n, data):
    ints = st.lists(st.integers(1, 3), min_size=n, max_size=n)
    fam = F(data.draw(ints), data.draw(ints))
    p = data.draw(st.sampled_from([5, 7]))
    lam = data.draw(st.integers(1, p - 1))
    v = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n)))
    res = reduce_monomial(fam, p, lam, v)
    again = {}
    for c, m in res.combination:
        for c2, m2 in reduce_monomial(fam, p, lam, m).combination:
            again[m2] = (again.get(m2, 0) + c * c2) % p
    assert {m: c for m, c in again.items() if c} == res.as_dict()


def test_oracle_detects_a_wrong_answer():
    fam = F((1, 1), (1, 1))
    assert reduce_by_linear_algebra(fam, 3, 1, (-1, -1)) != {(0, 0): 1}
