from math import comb

import pytest

from quiverdt.coeff import VPolynomial
from quiverdt.dt import dt_slope
from quiverdt.loop_ic import (
    class_degree,
    composition_count,
    compositions,
    cyclic_classes,
    enumerate_ap_classes,
    ic_poincare_loop,
    sequence_degree,
)
from quiverdt.quiver import Quiver


def reps(classes):
    return [(c.representative, c.primitive, c.almost_primitive, c.degree) for c in classes]


def test_two_two():
    ap = enumerate_ap_classes(2, 2)
    assert ap.total_classes == 2
    assert reps(ap.classes) == [((0, 2), True, True, 0), ((1, 1), False, True, 1)]


def test_three_two():
    ap = enumerate_ap_classes(3, 2)
    assert ap.total_classes == 3
    assert reps(ap.classes) == [((0, 4), True, True, 0), ((1, 3), True, True, 1)]
    excluded = [c for c in cyclic_classes(3, 2) if not c.almost_primitive]
    assert [c.representative for c in excluded] == [(2, 2)]


def test_two_one():
    ap = enumerate_ap_classes(2, 1)
    assert reps(ap.classes) == [((1,), True, True, 0)]


def test_degrees():
    assert sequence_degree((2, 1, 0)) == 5
    assert class_degree((2, 1, 0)) == 2
    assert class_degree((0, 0, 3)) == 0
    assert class_degree((1, 1)) == 1


def test_invalid():
    with pytest.raises(ValueError):
        enumerate_ap_classes(1, 2)
    with pytest.raises(ValueError):
        ic_poincare_loop(2, 0)


@pytest.mark.parametrize("m, d, value", [(2, 1, 2), (2, 2, 5), (3, 2, 9), (2, 3, 10)])
def test_ic_examples(m, d, value):
    assert ic_poincare_loop(m, d) == VPolynomial.monomial(value)


def test_exceptional_case_m2_d6():
    # m even and d = 2 mod 4: halves w + w with w primitive count
    classes = cyclic_classes(2, 6)
    extra = [c for c in classes if c.almost_primitive and not c.primitive]
    assert extra
    for c in extra:
        half = c.representative[:3]
        assert c.representative == half + half and c.orbit_size == 3
    # (1,1,1,1,1,1) repeats a non-primitive half: excluded
    assert not next(c for c in classes if c.representative == (1,) * 6).almost_primitive
    p = ic_poincare_loop(2, 6)
    assert p == dt_slope(Quiver.loop(2), (0,), 0, (6,))[(6,)].to_polynomial()


def test_no_exception_for_d_multiple_of_four():
    assert all(c.almost_primitive == c.primitive for c in cyclic_classes(2, 4))


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("d", range(1, 7))
def test_necklace_bookkeeping_and_exact_division(m, d):
    classes = cyclic_classes(m, d)
    assert sum(c.orbit_size for c in classes) == composition_count(m, d) == comb((m - 1) * d + d - 1, d - 1)
    assert len(list(compositions((m - 1) * d, d))) == composition_count(m, d)
    ic_poincare_loop(m, d)


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("d", range(1, 6))
def test_agrees_with_plethystic_route(m, d):
    table = dt_slope(Quiver.loop(m), (0,), 0, (d,))
    assert ic_poincare_loop(m, d) == table[(d,)].to_polynomial()


@pytest.mark.parametrize("m, d", [(2, 4), (3, 3), (4, 3), (2, 6)])
def test_ic_coefficients_nonnegative(m, d):
    p = ic_poincare_loop(m, d)
    assert p and all(c >= 0 for c in p.coeffs)
    assert p.degree == (m - 1) * d * d + 1
