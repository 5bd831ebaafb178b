"""Motivic DT invariants of a quiver with King stability.

Pipeline: stack classes -> semistable classes via the Harder-Narasimhan
recursion -> per-slope generating series ``A_mu`` -> ``DT = (v - 1/v) Log A_mu``.
The framed series ``A_f / A`` gives a second route used by :func:`dtpt_verify`,
and :func:`local_dt` evaluates the DT function at a polystable point through
the Ext-quiver of its stable summands.

Every coefficient carries the normalization ``L^{(d,d)/2} = v^{(d,d)}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import CoeffFraction, VPolynomial, bar
from .errors import NonGenericStability, NonIntegralInput, ZeroDimension
from .quiver import (
    GenericityReport,
    Quiver,
    euler_form,
    ext_quiver,
    generic_check,
    slope,
)
from .series import (
    MultiSeries,
    SeriesTruncation,
    pleth_exp,
    pleth_log,
    series_invert,
    series_mul,
)

DimVector = Tuple[int, ...]

# v - 1/v
_V_MINUS_VINV = CoeffFraction(VPolynomial({1: 1, -1: -1}))


def _dim_rep(Q: Quiver, d) -> int:
    return sum(a * d[i] * d[j] for i, row in enumerate(Q.arrows) for j, a in enumerate(row) if a)


def _unnormalized_stack_class(Q: Quiver, d) -> CoeffFraction:
    """``[R_d] / [G_d] = L^{dim R_d} / prod_i [GL(d_i)]``."""
    exp = 2 * _dim_rep(Q, d) - sum(x * (x - 1) for x in d)
    den = [r for x in d for r in range(1, x + 1)]
    return CoeffFraction(VPolynomial.monomial(exp), den)


def stack_class(Q: Quiver, d: Sequence[int]) -> CoeffFraction:
    """``L^{(d,d)/2} [R_d] / [G_d]``, the class of the whole stack of representations."""
    Q.check(d)
    d = tuple(d)
    return _unnormalized_stack_class(Q, d).shift(euler_form(Q, d, d))


def _sub_vectors(d):
    return itertools.product(*(range(x + 1) for x in d))


class HNCache:
    """Memo table for the HN recursion of one ``(Q, theta)``.

    Entries are pure functions of their keys, so refilling is idempotent.
    """

    def __init__(self, Q: Quiver, theta: Sequence[int]):
        Q.check(theta)
        self.Q = Q
        self.theta = tuple(theta)
        self.trivial = len(set(self.theta)) <= 1
        self.semistable: Dict[DimVector, CoeffFraction] = {}
        self._tails: Dict[Tuple[DimVector, Fraction], CoeffFraction] = {}

    def _slope(self, d):
        return slope(self.theta, d)

    def _tail(self, d: DimVector, bound: Fraction) -> CoeffFraction:
        """Sum over HN types of ``d`` whose first slope is ``< bound``."""
        if not any(d):
            return CoeffFraction.coerce(1)
        key = (d, bound)
        hit = self._tails.get(key)
        if hit is not None:
            return hit
        mu_d = self._slope(d)
        terms = []
        if mu_d < bound:
            for e in _sub_vectors(d):
                if not any(e):
                    continue
                mu_e = self._slope(e)
                # the first HN slope lies in [slope(d), bound)
                if not (mu_d <= mu_e < bound):
                    continue
                terms.append(self._term(d, e, mu_e))
        value = CoeffFraction.coerce(0)
        for t in terms:
            value = value + t
        self._tails[key] = value
        return value

    def _term(self, d, e, mu_e) -> CoeffFraction:
        rest = tuple(x - y for x, y in zip(d, e))
        tail = self._tail(rest, mu_e)
        if not tail:
            return tail
        # L^{-(rest, e)}: first part e, remaining parts after it
        return (self.unnormalized(e) * tail).shift(-2 * euler_form(self.Q, rest, e))

    def unnormalized(self, d: DimVector) -> CoeffFraction:
        """``[R^ss_d] / [G_d]``."""
        hit = self.semistable.get(d)
        if hit is not None:
            return hit
        total = _unnormalized_stack_class(self.Q, d)
        if not self.trivial:
            mu_d = self._slope(d)
            for e in _sub_vectors(d):
                if not any(e) or e == d:
                    continue
                mu_e = self._slope(e)
                if mu_e > mu_d:
                    total = total - self._term(d, e, mu_e)
        self.semistable[d] = total
        return total

    def normalized(self, d: DimVector) -> CoeffFraction:
        return self.unnormalized(d).shift(euler_form(self.Q, d, d))


def hn_semistable_class(Q: Quiver, theta, d, cache: Optional[HNCache] = None) -> CoeffFraction:
    """``L^{(d,d)/2} [R^ss_d] / [G_d]`` for the King stability ``theta``.

    Solves ``[R_d]/[G_d] = sum_{HN types} L^{-sum_{k<l} (d^l, d^k)} prod_k [R^ss_{d^k}]/[G_{d^k}]``
    for the one-part term; types run over ordered decompositions with strictly
    decreasing slopes.
    """
    Q.check(d)
    d = tuple(d)
    if not any(d):
        return CoeffFraction.coerce(1)
    if cache is None:
        cache = HNCache(Q, theta)
    elif cache.Q != Q or cache.theta != tuple(theta):
        raise ValueError("cache belongs to a different quiver or stability")
    return cache.normalized(d)


# ---------------------------------------------------------------------------
# DT tables

@dataclass
class DTTable:
    quiver: Quiver
    theta: DimVector
    truncation: SeriesTruncation
    genericity: GenericityReport
    entries: Dict[DimVector, CoeffFraction] = field(default_factory=dict)
    forced: bool = False

    def __getitem__(self, d) -> CoeffFraction:
        d = tuple(d)
        if not any(d):
            return CoeffFraction.coerce(0)
        return self.entries[d]

    def items(self):
        return sorted(self.entries.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))

    def __len__(self):
        return len(self.entries)


def _require_generic(Q, theta, box, force) -> GenericityReport:
    report = generic_check(Q, theta, box)
    if not report.generic and not force:
        d, e, w = report.witness
        raise NonGenericStability(
            f"stability {tuple(theta)} is not generic: <{d}, {e}> = {w}", report.witness
        )
    return report


def _truncation(box, max_degree) -> SeriesTruncation:
    return SeriesTruncation(tuple(box), max_degree)


def semistable_series(Q, theta, mu, truncation: SeriesTruncation, cache: HNCache) -> MultiSeries:
    """``A_mu = 1 + sum_{d in Lambda_mu} L^{(d,d)/2} [R^ss_d]/[G_d] t^d``."""
    coeffs = {truncation.zero: CoeffFraction.coerce(1)}
    for d in truncation.indices(include_zero=False):
        if slope(theta, d) == mu:
            coeffs[d] = cache.normalized(d)
    return MultiSeries(truncation, coeffs)


def _dt_for_slope(Q, theta, mu, t, cache, report, force) -> DTTable:
    a = semistable_series(Q, theta, mu, t, cache)
    log_a = pleth_log(a)
    entries = {}
    for d in t.indices(include_zero=False):
        if slope(theta, d) == mu:
            entries[d] = log_a[d] * _V_MINUS_VINV
    return DTTable(Q, tuple(theta), t, report, entries, forced=force and not report.generic)


def dt_slope(
    Q: Quiver,
    theta,
    mu,
    box,
    *,
    max_degree: Optional[int] = None,
    force: bool = False,
    cache: Optional[HNCache] = None,
) -> DTTable:
    """DT invariants of slope ``mu`` for all ``d <= box``.

    Raises :class:`NonGenericStability` unless the box-relative genericity
    check passes or ``force`` is set.
    """
    Q.check(theta, box)
    report = _require_generic(Q, theta, box, force)
    cache = cache or HNCache(Q, theta)
    return _dt_for_slope(Q, theta, Fraction(mu), _truncation(box, max_degree), cache, report, force)


def slopes_in_box(theta, truncation: SeriesTruncation) -> List[Fraction]:
    return sorted({slope(theta, d) for d in truncation.indices(include_zero=False)})


def dt_all(
    Q: Quiver,
    theta,
    box,
    *,
    max_degree: Optional[int] = None,
    force: bool = False,
    cache: Optional[HNCache] = None,
) -> DTTable:
    """DT invariants of every nonzero ``d <= box``, one Log per slope."""
    Q.check(theta, box)
    report = _require_generic(Q, theta, box, force)
    cache = cache or HNCache(Q, theta)
    t = _truncation(box, max_degree)
    table = DTTable(Q, tuple(theta), t, report, {}, forced=force and not report.generic)
    for mu in slopes_in_box(theta, t):
        table.entries.update(_dt_for_slope(Q, theta, mu, t, cache, report, force).entries)
    return table


# ---------------------------------------------------------------------------
# framed series and the DT/PT identity

def framed_ic_series(
    Q: Quiver,
    theta,
    mu,
    f,
    box,
    *,
    max_degree: Optional[int] = None,
    force: bool = False,
    cache: Optional[HNCache] = None,
) -> MultiSeries:
    """``P = A_f * A^{-1}`` where ``A_f`` scales the ``t^d`` coefficient by ``L^{f.d}``.

    ``P_d`` is ``L^{f.d/2}`` times the normalized IC class of the framed
    moduli space of dimension vector ``d``.
    """
    Q.check(theta, f, box)
    _require_generic(Q, theta, box, force)
    cache = cache or HNCache(Q, theta)
    t = _truncation(box, max_degree)
    a = semistable_series(Q, theta, Fraction(mu), t, cache)
    a_f = a.map_indexed(lambda d, c: c.shift(2 * _dot(f, d)))
    return series_mul(a_f, series_invert(a))


def _dot(f, d) -> int:
    return sum(x * y for x, y in zip(f, d))


def projective_class(n: int) -> VPolynomial:
    """``[P^{n-1}] = 1 + L + ... + L^{n-1}``; zero for ``n = 0``."""
    return VPolynomial({2 * k: 1 for k in range(n)})


def virtual_projective_class(n: int) -> VPolynomial:
    """``(v^n - v^-n) / (v - v^-1)``."""
    return projective_class(n).shift(1 - n) if n else VPolynomial()


@dataclass
class SlopeCheck:
    slope: Fraction
    form: str
    equal: bool
    mismatches: List[DimVector]
    lhs: MultiSeries
    rhs: MultiSeries


@dataclass
class VerificationReport:
    passed: bool
    checks: List[SlopeCheck]
    notes: List[str] = field(default_factory=list)


def dtpt_verify(
    Q: Quiver,
    theta,
    mu,
    f,
    box,
    *,
    max_degree: Optional[int] = None,
    force: bool = False,
) -> VerificationReport:
    """Compare the framed series with ``Sym(sum v [P^{fd-1}] DT_d t^d)``.

    ``mu=None`` checks every slope occurring in the box. For framing vectors
    with all entries even the alternative form with ``[P^{fd-1}]_vir`` is
    checked as well.
    """
    Q.check(theta, f, box)
    report = _require_generic(Q, theta, box, force)
    cache = HNCache(Q, theta)
    t = _truncation(box, max_degree)
    slopes = slopes_in_box(theta, t) if mu is None else [Fraction(mu)]
    even = all(x % 2 == 0 for x in f)
    checks = []
    notes = []
    if not even:
        notes.append("alternative form skipped: framing vector has an odd entry")
    for m in slopes:
        lhs = framed_ic_series(Q, theta, m, f, box, max_degree=max_degree, force=True, cache=cache)
        dt = _dt_for_slope(Q, theta, m, t, cache, report, force)
        gen = MultiSeries(
            t, {d: c * CoeffFraction(projective_class(_dot(f, d)).shift(1)) for d, c in dt.entries.items()}
        )
        checks.append(_compare(m, "standard", lhs, pleth_exp(gen)))
        if even:
            lhs_alt = lhs.map_indexed(lambda d, c: c.shift(-_dot(f, d)))
            gen_alt = MultiSeries(
                t,
                {d: c * CoeffFraction(virtual_projective_class(_dot(f, d))) for d, c in dt.entries.items()},
            )
            checks.append(_compare(m, "alternative", lhs_alt, pleth_exp(gen_alt)))
    return VerificationReport(all(c.equal for c in checks), checks, notes)


def _compare(mu, form, lhs: MultiSeries, rhs: MultiSeries) -> SlopeCheck:
    keys = sorted(set(lhs.coeffs) | set(rhs.coeffs))
    bad = [d for d in keys if lhs[d] != rhs[d]]
    return SlopeCheck(mu, form, not bad, bad, lhs, rhs)


# ---------------------------------------------------------------------------
# point values

@dataclass(frozen=True)
class PolystablePoint:
    """``E_1^{m_1} + ... + E_s^{m_s}`` recorded by ``(dim E_k, m_k)`` pairs."""

    parts: Tuple[Tuple[DimVector, int], ...]

    def __post_init__(self):
        parts = tuple((tuple(int(x) for x in d), int(m)) for d, m in self.parts)
        if not parts:
            raise ValueError("a polystable point needs at least one summand")
        for d, m in parts:
            if m < 1:
                raise ValueError("multiplicities must be positive")
            if not any(d):
                raise ZeroDimension("summands must have nonzero dimension vector")
        object.__setattr__(self, "parts", parts)

    @property
    def dimension_vectors(self) -> List[DimVector]:
        return [d for d, _ in self.parts]

    @property
    def multiplicities(self) -> DimVector:
        return tuple(m for _, m in self.parts)

    def total(self) -> DimVector:
        n = len(self.parts[0][0])
        return tuple(sum(m * d[i] for d, m in self.parts) for i in range(n))


def local_dt(Q: Quiver, theta, point, *, force: bool = False) -> CoeffFraction:
    """Value of the DT function at a split polystable point.

    Computes ``DT(Q_xi)`` at trivial stability up to the multiplicity vector,
    applies ``v -> 1/v`` and reads off the coefficient at the multiplicities.
    """
    if not isinstance(point, PolystablePoint):
        point = PolystablePoint(tuple(point))
    vecs = point.dimension_vectors
    Q.check(theta, *vecs)
    slopes = {slope(theta, d) for d in vecs}
    if len(slopes) != 1:
        raise ValueError("summands of a polystable point must share one slope")
    total = point.total()
    _require_generic(Q, theta, total, force)
    for d in vecs:
        if euler_form(Q, d, d) > 1:
            raise ValueError(f"no stable representations of dimension {d}: (d,d) > 1")
    local = ext_quiver(Q, vecs)
    m = point.multiplicities
    table = dt_slope(local, (0,) * len(vecs), 0, m, force=True)
    return bar(table[m])


# ---------------------------------------------------------------------------
# checks

@dataclass
class IntegralityReport:
    passed: bool
    offenders: List[DimVector]


def check_integral(table: DTTable) -> IntegralityReport:
    offenders = [d for d, c in table.items() if not c.is_laurent()]
    return IntegralityReport(not offenders, offenders)


@dataclass
class PalindromyVerdict:
    palindromic: bool
    positive: bool


@dataclass
class PositivityReport:
    passed: bool
    verdicts: Dict[DimVector, PalindromyVerdict]


def is_palindromic(p: VPolynomial) -> bool:
    return p == p.bar()


def check_palindromic_positive(table) -> PositivityReport:
    """Bar-invariance and positivity of every nonzero entry.

    Accepts a :class:`DTTable` or a mapping from dimension vectors to values.
    """
    entries = table.entries if isinstance(table, DTTable) else dict(table)
    verdicts = {}
    for d, c in sorted(entries.items()):
        c = CoeffFraction.coerce(c)
        if not c.is_laurent():
            raise NonIntegralInput(f"entry at {d} is not a Laurent polynomial: {c}")
        p = c.numerator
        if not p:
            continue
        verdicts[d] = PalindromyVerdict(is_palindromic(p), all(x >= 0 for x in p.coeffs))
    passed = all(v.palindromic and v.positive for v in verdicts.values())
    return PositivityReport(passed, verdicts)
