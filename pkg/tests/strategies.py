"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from quiverdt.coeff import CoeffFraction, VPolynomial
from quiverdt.series import MultiSeries, SeriesTruncation

small_ints = st.integers(min_value=-5, max_value=5)
exponents = st.integers(min_value=-6, max_value=6)

polys = st.dictionaries(exponents, small_ints, max_size=5).map(VPolynomial)
nonzero_polys = polys.filter(bool)
denominators = st.lists(st.integers(min_value=1, max_value=3), max_size=3)
fractions_ = st.builds(CoeffFraction, polys, denominators)


def series_in(box, max_terms=4, constant=False):
    t = SeriesTruncation(tuple(box))
    idx = [d for d in t.indices(include_zero=constant)]
    return st.dictionaries(st.sampled_from(idx), fractions_, max_size=max_terms).map(
        lambda c: MultiSeries(t, c)
    )
