"""End-to-end acceptance criteria, one test per criterion.

The conftest hook prints one PASS/FAIL line per criterion at the end of the run.
"""

import random
import time
from fractions import Fraction

import pytest

from quiverdt.coeff import CoeffFraction, V, VPolynomial, adams, bar
from quiverdt.dt import (
    check_integral,
    check_palindromic_positive,
    dt_all,
    dt_slope,
    dtpt_verify,
    framed_ic_series,
    local_dt,
)
from quiverdt.loop_ic import composition_count, cyclic_classes, ic_poincare_loop
from quiverdt.quiver import Quiver, euler_form
from quiverdt.series import MultiSeries, SeriesTruncation, pleth_exp, pleth_log
from quiverdt.strata import DecompositionType, verify_virtual_smallness

pytestmark = pytest.mark.acceptance


def mono(k, c=1):
    return CoeffFraction.monomial(k, c)


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def test_criterion_01_loop_dual_route():
    with Timer(60):
        for m in (2, 3):
            table = dt_slope(Quiver.loop(m), (0,), 0, (4,))
            for d in range(1, 5):
                assert table[(d,)].is_laurent()
                assert table[(d,)].to_polynomial() == ic_poincare_loop(m, d), (m, d)
        two = dt_slope(Quiver.loop(2), (0,), 0, (3,))
        assert [two[(d,)] for d in (1, 2, 3)] == [mono(2), mono(5), mono(10)]
        three = dt_slope(Quiver.loop(3), (0,), 0, (2,))
        assert [three[(d,)] for d in (1, 2)] == [mono(3), mono(9)]


def test_criterion_02_jordan():
    with Timer(5):
        t = dt_all(Quiver.loop(1), (0,), (5,))
        assert t[(1,)] == V
        for d in range(2, 6):
            assert t[(d,)] == 0


def test_criterion_03_kronecker():
    with Timer(5):
        t = dt_all(Quiver.kronecker(2), (1, 0), (2, 2))
        for d in [(1, 0), (0, 1), (1, 2), (2, 1)]:
            assert t[d] == 1, d
        assert t[(1, 1)] == CoeffFraction(VPolynomial({1: 1, -1: 1}))
        for d in [(2, 0), (0, 2), (2, 2)]:
            assert t[d] == 0, d


def random_symmetric_quiver(rng):
    n = rng.randint(1, 3)
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = rng.randint(0, 3)
    return Quiver.from_matrix(a)


def test_criterion_04_integrality():
    rng = random.Random(20240601)
    with Timer(120):
        for _ in range(25):
            Q = random_symmetric_quiver(rng)
            n = Q.num_vertices
            table = dt_all(Q, (0,) * n, (5,) * n, max_degree=5)
            report = check_integral(table)
            assert report.passed, (Q.arrows, report.offenders)


def test_criterion_05_dtpt():
    with Timer(60):
        cases = [
            (Quiver.loop(1), (0,), 0, (1,), (4,)),
            (Quiver.loop(2), (0,), 0, (2,), (3,)),
            (Quiver.kronecker(2), (1, 0), None, (2, 2), (2, 2)),
        ]
        for Q, theta, mu, f, box in cases:
            r = dtpt_verify(Q, theta, mu, f, box)
            assert r.passed, (Q.arrows, [(c.slope, c.form, c.mismatches) for c in r.checks])
        p = framed_ic_series(Quiver.loop(1), (0,), 0, (1,), (4,))
        for d in range(5):
            assert p[(d,)] == mono(2 * d)


def test_criterion_06_palindromy():
    k2 = dt_slope(Quiver.kronecker(2), (1, 0), Fraction(1, 2), (1, 1))
    k3 = dt_slope(Quiver.kronecker(3), (1, 0), Fraction(1, 2), (1, 1))
    assert k2[(1, 1)] == CoeffFraction(VPolynomial({1: 1, -1: 1}))
    assert k3[(1, 1)] == CoeffFraction(VPolynomial({2: 1, 0: 1, -2: 1}))
    assert check_palindromic_positive({(1, 1): k2[(1, 1)]}).passed
    assert check_palindromic_positive({(1, 1): k3[(1, 1)]}).passed


def test_criterion_07_local_dt():
    stable = [
        (Quiver.kronecker(2), (1, 0), (1, 0)),
        (Quiver.loop(1), (0,), (1,)),
        (Quiver.loop(2), (0,), (1,)),
        (Quiver.loop(4), (0,), (1,)),
    ]
    seen = set()
    for Q, theta, d in stable:
        c = euler_form(Q, d, d)
        seen.add(c)
        assert local_dt(Q, theta, [(d, 1)]) == mono(c - 1)
    assert seen == {1, 0, -1, -3}
    assert local_dt(Quiver.loop(2), (0,), [((1,), 2)]) == mono(-5)
    assert local_dt(Quiver.loop(1), (0,), [((1,), 1), ((1,), 1)]) == 0


def _random_series(rng, t):
    idx = t.indices(include_zero=False)
    coeffs = {}
    for _ in range(rng.randint(1, 4)):
        d = rng.choice(idx)
        num = VPolynomial({rng.randint(-4, 4): rng.randint(-3, 3) for _ in range(rng.randint(1, 3))})
        coeffs[d] = CoeffFraction(num, [rng.randint(1, 3) for _ in range(rng.randint(0, 2))])
    return MultiSeries(t, coeffs)


def _random_fraction(rng):
    num = VPolynomial({rng.randint(-6, 6): rng.randint(-5, 5) for _ in range(rng.randint(0, 5))})
    return CoeffFraction(num, [rng.randint(1, 3) for _ in range(rng.randint(0, 3))])


def test_criterion_08_lambda_ring():
    rng = random.Random(8)
    boxes = [(4,), (2, 2), (3, 1), (1, 1, 2)]
    with Timer(60):
        for i in range(100):
            t = SeriesTruncation(boxes[i % len(boxes)])
            f, g = _random_series(rng, t), _random_series(rng, t)
            assert pleth_log(pleth_exp(f)) == f
            assert pleth_exp(f + g) == pleth_exp(f) * pleth_exp(g)
        assert adams(adams(V, 3), 2) == mono(6, -1)
        for i in range(100):
            a, b = _random_fraction(rng), _random_fraction(rng)
            for m in range(1, 5):
                for n in range(1, 5):
                    assert adams(adams(a, m), n) == adams(a, m * n)
            assert bar(bar(a)) == a
            assert bar(a * b) == bar(a) * bar(b)
            assert bar(a + b) == bar(a) + bar(b)
            assert adams(a * b, 2) == adams(a, 2) * adams(b, 2)


def test_criterion_09_virtual_smallness():
    for m in (2, 3):
        for d in (1, 2, 3):
            r = verify_virtual_smallness(Quiver.loop(m), (0,), (d,), (2,))
            assert r.passed, (m, d)
            for c in r.checks:
                assert c.holds
                assert c.equality == (c.xi == DecompositionType((((d,), 1),)))


def test_criterion_10_necklaces():
    with Timer(10):
        for m in (2, 3):
            for d in range(1, 7):
                classes = cyclic_classes(m, d)
                assert sum(c.orbit_size for c in classes) == composition_count(m, d)
                ic_poincare_loop(m, d)
