"""One test per acceptance criterion; each records a single pass/fail line."""
import io
import json
import time
from fractions import Fraction as Fr
from itertools import product

from kloo.cli import main
from kloo.graded import reduce_by_linear_algebra, reduce_monomial
from kloo.lattice import (
    KloostermanFamily,
    basis_cardinality_formula,
    cofacial,
    cone_membership,
    e_star,
    enumerate_A0,
    enumerate_M,
    enumerate_S,
    enumerate_T,
    in_basis,
    phi,
    psi,
    weight,
)
from kloo import kernels
from kloo.lfunc import BudgetExceeded, consistency_check_extra_sum, l_polynomial
from kloo.ordinarity import is_nondegenerate
from kloo.polygon import VIOLATION, compare, hodge_polygon, newton_polygon
from kloo.lattice import enumerate_basis

from .oracles import lp_weight

F = KloostermanFamily


def cli_json(*argv):
    out = io.StringIO()
    t0 = time.perf_counter()
    code = main(list(argv) + ["--json"], out=out)
    return code, json.loads(out.getvalue()), time.perf_counter() - t0


def slopes_of(poly_json):
    return [Fr(n, d) for n, d, m in poly_json["slopes"] for _ in range(m)]


def verify_fixture(a, d, p, want, limit):
    code, rep, dt = cli_json("verify", "--a", a, "--d", d, "--p", str(p), "--all-lambda")
    ok = (code == 0 and rep["lambdas"] == list(range(1, p))
          and all(slopes_of(r["polygon"]) == want and r["verdict"] == "equal" for r in rep["newton"])
          and rep["verdict"] == "equal" and dt < limit)
    return ok, rep, f"{dt:.2f}s, limit {limit}s"


def test_criterion_01_one_variable_fixture(acceptance):
    ok, _, detail = verify_fixture("1", "1", 5, [0, 1], 1.0)
    assert acceptance(1, "a=1 d=1 p=5: NP slopes {0,1} and equal for every lambda", ok, detail)


def test_criterion_02_two_variable_fixture(acceptance):
    ok, _, detail = verify_fixture("1,1", "1,1", 3, [0, 1, 2], 5.0)
    assert acceptance(2, "a=1,1 d=1,1 p=3: NP slopes {0,1,2}, equal", ok, detail)


def test_criterion_03_coprime_fixture(acceptance):
    want = [0, Fr(1, 2), 1, Fr(3, 2), 2]
    ok, rep, detail = verify_fixture("1,2", "1,1", 3, want, 30.0)
    ok = ok and all(m == 1 for r in rep["newton"] for _, _, m in r["polygon"]["slopes"])
    assert acceptance(3, "a=1,2 d=1,1 p=3: slopes {0,1/2,1,3/2,2} each once, equal", ok, detail)


def test_criterion_04_repeated_slope_fixture(acceptance):
    ok, _, detail = verify_fixture("1,1", "1,2", 3, [0, 1, 1, 2], 30.0)
    assert acceptance(4, "a=1,1 d=1,2 p=3: slopes {0,1,1,2}, equal", ok, detail)


def _lower_bound_runs():
    runs = [((3,), (1,), 5), ((1,), (1,), 5), ((1, 1), (1, 1), 3), ((1, 2), (1, 1), 3),
            ((1, 1), (1, 2), 3), ((1, 2), (1, 2), 3), ((2, 1), (1, 1), 5)]
    for a, d in product(range(1, 6), repeat=2):
        for p in (3, 5, 7, 11):
            runs.append(((a,), (d,), p))
    for a in product(range(1, 3), repeat=2):
        for d in product(range(1, 3), repeat=2):
            runs.append((a, d, 3))
    return runs


def test_criterion_05_newton_above_hodge(acceptance):
    budget = 3 * 10 ** 6
    completed, not_equal, bad = 0, 0, []
    t0 = time.perf_counter()
    for a, d, p in _lower_bound_runs():
        fam = F(a, d)
        if not is_nondegenerate(fam, p):
            continue
        hp = hodge_polygon(enumerate_basis(fam))
        for lam in range(1, p):
            try:
                L = l_polynomial(fam, p, lam, budget=budget)
            except BudgetExceeded:
                break
            verdict = compare(newton_polygon(L.valuations()), hp)
            completed += 1
            not_equal += verdict != "equal"
            if verdict == VIOLATION:
                bad.append((a, d, p, lam))
    ok = not bad and completed > 100 and not_equal > 0
    detail = (f"{completed} runs, {not_equal} strictly above, {len(bad)} violations, "
              f"{time.perf_counter() - t0:.1f}s")
    assert acceptance(5, "NP never below HP on completed brute-force runs", ok, detail)


def test_criterion_06_counting_identity(acceptance):
    t0 = time.perf_counter()
    bad = checked = 0
    for n in range(1, 5):
        for a in product(range(1, 6), repeat=n):
            for d in product(range(1, 6), repeat=n):
                checked += 1
                fam = F(a, d)
                if len(kernels.basis_points(a, d)) != basis_cardinality_formula(fam):
                    bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 60
    assert acceptance(6, "|B| = prod a + sum d_j prod_(i!=j) a_i, n<=4, a,d<=5",
                      ok, f"{checked} families, {bad} mismatches, {dt:.1f}s, limit 60s")


def test_criterion_07_bijections(acceptance):
    t0 = time.perf_counter()
    bad = checked = 0
    for n in (2, 3):
        for a in product(range(1, 5), repeat=n):
            for d in product(range(1, 5), repeat=n):
                fam = F(a, d)
                T, S = enumerate_T(fam), enumerate_S(fam)
                checked += 1
                if (any(phi(fam, psi(fam, v)) != v for v in T)
                        or any(psi(fam, phi(fam, u)) != u for u in S)
                        or len(enumerate_A0(fam)) != len(enumerate_M(fam))):
                    bad += 1
    ok = bad == 0
    assert acceptance(7, "phi.psi = id on T, psi.phi = id on S, |A0| = |M|, n<=3, a,d<=4",
                      ok, f"{checked} families, {bad} failures, {time.perf_counter() - t0:.1f}s")


def test_criterion_08_reduction_matches_oracle(acceptance):
    t0 = time.perf_counter()
    bad = checked = 0
    for n in (1, 2):
        for a in product(range(1, 4), repeat=n):
            for d in product(range(1, 4), repeat=n):
                fam = F(a, d)
                for p in (3, 5):
                    if not is_nondegenerate(fam, p):
                        continue
                    for lam in range(1, p):
                        for v in product(range(-4, 5), repeat=n):
                            checked += 1
                            res = reduce_monomial(fam, p, lam, v)
                            if (not all(in_basis(fam, m) for _, m in res.combination)
                                    or res.as_dict() != reduce_by_linear_algebra(fam, p, lam, v)):
                                bad += 1
    ok = bad == 0
    assert acceptance(8, "reduce_monomial equals the linear-algebra normal form and lands in B",
                      ok, f"{checked} cases, {bad} disagreements, {time.perf_counter() - t0:.1f}s")


WEIGHT_FAMILIES = [((1,), (1,)), ((3,), (2,)), ((1, 1), (1, 1)), ((1, 2), (1, 1)), ((2, 3), (1, 1)),
                   ((1, 1), (1, 2)), ((3, 2), (2, 5)), ((1, 2, 1), (2, 1, 3)), ((2, 3, 1), (1, 1, 2))]


def test_criterion_09_weight_properties(acceptance):
    t0 = time.perf_counter()
    failures = []
    for a, d in WEIGHT_FAMILIES:
        fam = F(a, d)
        e = e_star(fam)
        n = fam.n
        # weights on |v_i| <= 20 cover homogeneity (|v_i| <= 10, l = 2),
        # denominators (|v_i| <= 20) and sums of pairs from |v_i| <= 5
        big = 20 if n < 3 else 10
        W = {v: weight(fam, v) for v in product(range(-big, big + 1), repeat=n)}
        for v, w in W.items():
            if e % w.denominator:
                failures.append(("denominator", fam, v))
        if n == 3:
            for v in product(range(-20, 21), repeat=n):
                if e % weight(fam, v).denominator:
                    failures.append(("denominator", fam, v))
        for v in product(range(-10, 11), repeat=n):
            w = W[v]
            for l in range(2, 4):
                lv = tuple(l * x for x in v)
                if (W[lv] if lv in W else weight(fam, lv)) != l * w:
                    failures.append(("homogeneity", fam, v))
        pts = list(product(range(-5, 6), repeat=n))
        cones = {u: cone_membership(fam, u) for u in pts}
        for u in pts:
            wu, cu = W[u], cones[u]
            for v in pts:
                s = W[tuple(x + y for x, y in zip(u, v))]
                total = wu + W[v]
                # the zero vector is cofacial with everything
                cof = not any(u) or not any(v) or bool(cu & cones[v])
                if s > total or (s == total) != cof:
                    failures.append(("superadditivity", fam, u, v))
        # the cached cone test above is the library's cofaciality
        for u in pts[::17]:
            for v in pts:
                if cofacial(fam, u, v) != (not any(u) or not any(v) or bool(cones[u] & cones[v])):
                    failures.append(("cofacial", fam, u, v))
        for v in product(range(-3, 4), repeat=n):
            if W[v] != lp_weight(fam.support(), v):
                failures.append(("lp", fam, v))
    ok = not failures
    detail = f"{len(WEIGHT_FAMILIES)} families, {len(failures)} failures, {time.perf_counter() - t0:.1f}s"
    if failures:
        detail += f", first {failures[0]}"
    assert acceptance(9, "weight homogeneity, superadditivity/cofaciality, denominators | e*, LP", ok, detail)


def test_criterion_10_hodge_beyond_brute_force(acceptance):
    code, rep, dt = cli_json("hodge", "--a", "2,3", "--d", "1,1")
    want = sorted({Fr(3 * u1 + 2 * u2, 6) for u1 in range(3) for u2 in range(4)})
    got = slopes_of(rep["hodge"])
    ok = (code == 0 and got == want and len(want) == 11
          and all(m == 1 for _, _, m in rep["hodge"]["slopes"]) and dt < 1.0)
    assert acceptance(10, "a=2,3 d=1,1: 11 Hodge slopes (3u1+2u2)/6 each once", ok, f"{dt:.3f}s")


def test_criterion_11_rationality(acceptance):
    results = []
    for a, d, p in [((1,), (1,), 5), ((1, 1), (1, 1), 3), ((1, 2), (1, 1), 3), ((1, 1), (1, 2), 3)]:
        for lam in range(1, p):
            results.append(consistency_check_extra_sum(F(a, d), p, lam))
    ok = all(results)
    assert acceptance(11, "degree-D polynomial predicts S_(D+1) on fixtures 1-4",
                      ok, f"{sum(results)}/{len(results)} checks")
