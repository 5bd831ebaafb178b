import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiverdt.coeff import L, ONE, V, CoeffFraction, RationalCoeff, VPolynomial, adams
from quiverdt.errors import (
    ConstantTermNotOne,
    NonUnitConstantTerm,
    NonzeroConstantTerm,
    TruncationMismatch,
)
from quiverdt.series import (
    MultiSeries,
    SeriesTruncation,
    pleth_exp,
    pleth_log,
    restrict_to_slope,
    series_adams,
    series_invert,
    series_mul,
)

from strategies import series_in


def S(box, coeffs):
    return MultiSeries(box, {tuple(k) if isinstance(k, tuple) else (k,): c for k, c in coeffs.items()})


def mono(k, c=1):
    return CoeffFraction.monomial(k, c)


def geometric(n):
    return S((n,), {i: mono(2 * i) for i in range(n + 1)})


# -- oracles built from ordinary power series arithmetic ------------------

def literal_exp(h: MultiSeries) -> MultiSeries:
    """``sum_k h^k / k!`` with rational coefficients kept exactly."""
    t = h.truncation
    acc = {t.zero: RationalCoeff(1)}
    power = MultiSeries.one(t)
    for k in range(1, t.top_degree + 1):
        power = series_mul(power, h)
        for d, c in power.coeffs.items():
            r = RationalCoeff.coerce(c).scale(Fraction(1, math.factorial(k)))
            acc[d] = acc[d] + r if d in acc else r
    return acc


def literal_log(g: MultiSeries):
    """``sum_k (-1)^{k+1} (g-1)^k / k``."""
    t = g.truncation
    x = g - MultiSeries.one(t)
    acc = {}
    power = MultiSeries.one(t)
    for k in range(1, t.top_degree + 1):
        power = series_mul(power, x)
        for d, c in power.coeffs.items():
            r = RationalCoeff.coerce(c).scale(Fraction((-1) ** (k + 1), k))
            acc[d] = acc[d] + r if d in acc else r
    return acc


def sym_oracle(f: MultiSeries) -> MultiSeries:
    """Plethystic exponential from the literal exp of ``sum psi_n(f)/n``."""
    t = f.truncation
    h = {}
    for n in range(1, t.top_degree + 1):
        for d, c in series_adams(f, n).coeffs.items():
            r = RationalCoeff.coerce(c).scale(Fraction(1, n))
            h[d] = h[d] + r if d in h else r
    hs = MultiSeries._raw(t, {d: c for d, c in h.items() if c})
    out = literal_exp(hs)
    return MultiSeries(t, {d: c.to_fraction() for d, c in out.items() if c})


def newton_sym(x: CoeffFraction, n: int):
    """``sigma_k(x)`` for one variable from Newton's identities ``k s_k = sum psi_i(x) s_{k-i}``."""
    s = [RationalCoeff(1)]
    for k in range(1, n + 1):
        acc = RationalCoeff(0)
        for i in range(1, k + 1):
            acc = acc + RationalCoeff.coerce(adams(x, i)) * s[k - i]
        s.append(acc.scale(Fraction(1, k)))
    return [c.to_fraction() for c in s]


# -- arithmetic ------------------------------------------------------------

def test_mul_examples():
    a = S((2,), {0: 1, 1: V})
    b = S((2,), {0: 1, 1: -CoeffFraction(V)})
    assert a * b == S((2,), {0: 1, 2: -CoeffFraction(L)})
    assert a * MultiSeries.one((2,)) == a
    assert geometric(3) * S((3,), {0: 1, 1: -CoeffFraction(L)}) == MultiSeries.one((3,))


def test_truncation_mismatch():
    with pytest.raises(TruncationMismatch):
        MultiSeries.one((2,)) * MultiSeries.one((3,))
    with pytest.raises(TruncationMismatch):
        MultiSeries((2,), {(1, 1): 1})


def test_invert_examples():
    assert series_invert(S((3,), {0: 1, 1: -CoeffFraction(L)})) == geometric(3)
    assert series_invert(MultiSeries.one((2,))) == MultiSeries.one((2,))
    assert series_invert(S((2,), {0: 1, 1: V})) == S((2,), {0: 1, 1: -CoeffFraction(V), 2: L})
    with pytest.raises(NonUnitConstantTerm):
        series_invert(S((2,), {1: 1}))


@given(series_in((2, 2), constant=False))
@settings(max_examples=40)
def test_invert_two_sided(a):
    u = a + MultiSeries.one(a.truncation).__mul__(mono(3, -1))
    inv = series_invert(u)
    one = MultiSeries.one(a.truncation)
    assert u * inv == one and inv * u == one


@given(series_in((2, 1)), series_in((2, 1)), series_in((2, 1)))
@settings(max_examples=30)
def test_mul_commutative_associative(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


def test_adams_examples():
    assert series_adams(S((2,), {1: V}), 2) == S((2,), {2: mono(2, -1)})
    assert series_adams(S((2,), {1: L}), 2) == S((2,), {2: mono(4)})
    a = S((2,), {0: V, 1: 1, 2: 3})
    assert series_adams(a, 3) == S((2,), {0: adams(V, 3)})


@given(series_in((4,), constant=True), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=40)
def test_series_adams_composition(a, m, n):
    assert series_adams(series_adams(a, m), n) == series_adams(a, m * n)


# -- Exp / Log -------------------------------------------------------------

def test_exp_examples():
    assert pleth_exp(S((3,), {1: V})) == S((3,), {0: 1, 1: V})
    assert pleth_exp(S((3,), {1: L})) == geometric(3)
    assert pleth_exp(S((3,), {1: -1})) == S((3,), {0: 1, 1: -1})
    with pytest.raises(NonzeroConstantTerm):
        pleth_exp(MultiSeries.one((2,)))


def test_log_examples():
    assert pleth_log(S((3,), {0: 1, 1: V})) == S((3,), {1: V})
    assert pleth_log(geometric(3)) == S((3,), {1: L})
    assert pleth_log(MultiSeries.one((3,))) == MultiSeries((3,))
    with pytest.raises(ConstantTermNotOne):
        pleth_log(S((2,), {0: 2}))


@pytest.mark.parametrize("x", [V, L, -CoeffFraction(V), CoeffFraction(VPolynomial({3: 2, -1: 1}), [1]), mono(0, 3)])
def test_exp_against_newton_identities(x):
    n = 5
    got = pleth_exp(S((n,), {1: x}))
    expected = newton_sym(CoeffFraction.coerce(x), n)
    for k in range(n + 1):
        assert got[(k,)] == expected[k]


@given(series_in((2, 2)))
@settings(max_examples=25, deadline=None)
def test_exp_against_literal_exp(f):
    assert pleth_exp(f) == sym_oracle(f)


@given(series_in((2, 2)))
@settings(max_examples=25, deadline=None)
def test_internal_log_against_literal_log(f):
    from quiverdt.series import _log_dict

    g = MultiSeries.one(f.truncation) + f
    ours = _log_dict(g.coeffs, g.truncation)
    ref = literal_log(g)
    keys = set(ours) | set(ref)
    for d in keys:
        a = ours.get(d, RationalCoeff(0))
        b = ref.get(d, RationalCoeff(0))
        assert a == b


@given(series_in((2, 2)))
@settings(max_examples=40, deadline=None)
def test_log_exp_round_trip(f):
    assert pleth_log(pleth_exp(f)) == f
    g = pleth_exp(f)
    assert pleth_exp(pleth_log(g)) == g


@given(series_in((2, 2)), series_in((2, 2)))
@settings(max_examples=30, deadline=None)
def test_exp_homomorphism(f, g):
    assert pleth_exp(f + g) == pleth_exp(f) * pleth_exp(g)


@given(series_in((3, 2)))
@settings(max_examples=15, deadline=None)
def test_truncation_soundness(f):
    small = SeriesTruncation((2, 1))
    assert pleth_exp(f).restrict(small) == pleth_exp(f.restrict(small))
    g = pleth_exp(f)
    assert pleth_log(g).restrict(small) == pleth_log(g.restrict(small))


def test_max_degree_truncation_is_sound():
    t_full = SeriesTruncation((3, 3))
    t_cut = SeriesTruncation((3, 3), max_degree=3)
    f = MultiSeries(t_full, {(1, 0): V, (0, 1): CoeffFraction(ONE, [1]), (1, 1): L})
    assert pleth_exp(f).restrict(t_cut) == pleth_exp(f.restrict(t_cut))


def test_restrict_to_slope():
    a = S((2, 2), {(0, 0): 1, (1, 1): V, (1, 2): L, (2, 2): 3})
    kept = restrict_to_slope(a, (1, 0), Fraction(1, 2))
    assert set(kept.coeffs) == {(0, 0), (1, 1), (2, 2)}
    assert restrict_to_slope(MultiSeries.one((2, 2)), (1, 0), 7) == MultiSeries.one((2, 2))
    assert restrict_to_slope(a, (0, 0), 0) == a
