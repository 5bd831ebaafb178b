import random

import pytest
from hypothesis import given, strategies as st

from quiverdt import _pykernels, kernels

coeff_lists = st.lists(st.integers(-(10**6), 10**6), max_size=12)
huge_lists = st.lists(st.integers(-(10**30), 10**30), max_size=6)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


@given(coeff_lists, coeff_lists)
def test_mul_matches_reference(a, b):
    assert kernels.mul(a, b) == _pykernels.mul(a, b)


@given(huge_lists, huge_lists)
def test_mul_big_integers(a, b):
    assert kernels.mul(a, b) == _pykernels.mul(a, b)


@given(coeff_lists, st.integers(1, 6))
def test_binomial_kernels(p, n):
    q = kernels.mul_binomial(p, n)
    assert q == _pykernels.mul_binomial(p, n)
    assert kernels.div_binomial(q, n) == _pykernels.div_binomial(q, n)
    if p:
        assert kernels.div_binomial(q, n)[: len(p)] == p


def test_div_binomial_inexact():
    assert kernels.div_binomial([1, 0, 1], 2) is None
    assert _pykernels.div_binomial([1, 0, 1], 2) is None


def test_overflow_falls_back():
    big = [2**61, 2**61, 2**61]
    assert kernels.mul(big, big) == _pykernels.mul(big, big)
    assert kernels.mul_binomial([-(2**62)] * 3, 1) == _pykernels.mul_binomial([-(2**62)] * 3, 1)
    r = random.Random(5)
    p = [r.randrange(-(2**63), 2**63) for _ in range(8)]
    q = _pykernels.mul_binomial(p, 3)
    assert kernels.div_binomial(q, 3) == p


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")
def test_compiled_module_present():
    from quiverdt import _ckernels

    assert _ckernels.mul([1, 1], [1, -1]) == [1, 0, -1]
