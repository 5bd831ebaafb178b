"""Truncated multivariate power series over the localized coefficient ring.

A series is indexed by dimension vectors ``d`` inside a box ``d <= box``,
optionally further cut at total degree ``|d| <= max_degree``. Both cuts are
order ideals, so products, Adams operations and plethystic Exp/Log computed
in a truncation agree with the untruncated values on every retained index.

Exp and Log go through the ordinary exponential and logarithm,
``Exp(f) = exp(sum_n psi_n(f) / n)`` and
``Log(g) = sum_n mu(n)/n psi_n(log g)``, with exact rational intermediates.
The ordinary exp/log themselves use the Euler-derivation recurrence
``|d| g_d = sum_{0 < e <= d} |e| h_e g_{d-e}`` for ``g = exp(h)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from .coeff import CoeffFraction, RationalCoeff, adams, frac_sum, rational_sum
from .errors import (
    ConstantTermNotOne,
    NonUnitConstantTerm,
    NonzeroConstantTerm,
    TruncationMismatch,
)
from .quiver import box_vectors, slope

DimVector = Tuple[int, ...]


@dataclass(frozen=True)
class SeriesTruncation:
    box: DimVector
    max_degree: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "box", tuple(int(b) for b in self.box))
        if any(b < 0 for b in self.box):
            raise ValueError("truncation box must be nonnegative")

    @property
    def nvars(self) -> int:
        return len(self.box)

    @property
    def top_degree(self) -> int:
        top = sum(self.box)
        if self.max_degree is not None:
            top = min(top, self.max_degree)
        return top

    def contains(self, d: Sequence[int]) -> bool:
        if self.max_degree is not None and sum(d) > self.max_degree:
            return False
        return all(x <= b for x, b in zip(d, self.box))

    def indices(self, include_zero: bool = True):
        return box_vectors(self.box, include_zero=include_zero, max_degree=self.max_degree)

    @property
    def zero(self) -> DimVector:
        return (0,) * len(self.box)


def _as_truncation(t) -> SeriesTruncation:
    if isinstance(t, SeriesTruncation):
        return t
    return SeriesTruncation(tuple(t))


class MultiSeries:
    """Immutable truncated series; ``coeffs`` maps dimension vectors to coefficients.

    Absent indices are zero and zero coefficients are never stored.
    """

    __slots__ = ("truncation", "coeffs")

    def __init__(self, truncation, coeffs: Optional[Mapping] = None):
        truncation = _as_truncation(truncation)
        stored = {}
        for d, c in (coeffs or {}).items():
            d = tuple(d)
            if len(d) != truncation.nvars:
                raise TruncationMismatch(f"index {d} does not match {truncation.nvars} variables")
            if not truncation.contains(d):
                continue
            if not isinstance(c, (CoeffFraction, RationalCoeff)):
                c = CoeffFraction.coerce(c)
            if c:
                stored[d] = c
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "coeffs", stored)

    @classmethod
    def _raw(cls, truncation, coeffs):
        self = object.__new__(cls)
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "coeffs", coeffs)
        return self

    @classmethod
    def one(cls, truncation) -> "MultiSeries":
        truncation = _as_truncation(truncation)
        return cls(truncation, {truncation.zero: 1})

    def __setattr__(self, name, value):
        raise AttributeError("MultiSeries is immutable")

    def __getitem__(self, d) -> CoeffFraction:
        return self.coeffs.get(tuple(d), CoeffFraction.coerce(0))

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def constant_term(self):
        return self[self.truncation.zero]

    def _check(self, other: "MultiSeries"):
        if self.truncation != other.truncation:
            raise TruncationMismatch(f"{self.truncation} != {other.truncation}")

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        if self.truncation != other.truncation:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self[d] == other[d] for d in keys)

    __hash__ = None

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out[d] + c if d in out else c
        return MultiSeries._raw(self.truncation, {d: c for d, c in out.items() if c})

    def __neg__(self):
        return MultiSeries._raw(self.truncation, {d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MultiSeries):
            return series_mul(self, other)
        c = CoeffFraction.coerce(other)
        return self.map_indexed(lambda d, x: x * c)

    __rmul__ = __mul__

    def map_indexed(self, fn: Callable[[DimVector, CoeffFraction], CoeffFraction]) -> "MultiSeries":
        out = {}
        for d, c in self.coeffs.items():
            x = fn(d, c)
            if x:
                out[d] = x
        return MultiSeries._raw(self.truncation, out)

    def restrict(self, truncation) -> "MultiSeries":
        """Reinterpret in a smaller truncation, dropping indices that leave it."""
        truncation = _as_truncation(truncation)
        return MultiSeries(truncation, self.coeffs)

    def __repr__(self):
        body = ", ".join(f"{d}: {c}" for d, c in self.items())
        return f"MultiSeries({self.truncation.box}, {{{body}}})"


def series_mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    """Truncated convolution over the stored supports."""
    a._check(b)
    t = a.truncation
    acc: Dict[DimVector, list] = {}
    for d, x in a.coeffs.items():
        for e, y in b.coeffs.items():
            s = tuple(i + j for i, j in zip(d, e))
            if t.contains(s):
                acc.setdefault(s, []).append(x * y)
    out = {}
    for s, terms in acc.items():
        c = _sum(terms)
        if c:
            out[s] = c
    return MultiSeries._raw(t, out)


def _sum(terms):
    if any(isinstance(x, RationalCoeff) for x in terms):
        return rational_sum(RationalCoeff.coerce(x) for x in terms)
    return frac_sum(terms)


def series_invert(a: MultiSeries) -> MultiSeries:
    """Two-sided inverse; the constant term must be a unit of the coefficient ring."""
    t = a.truncation
    a0 = a.constant_term()
    if not a0:
        raise NonUnitConstantTerm("constant term is zero")
    inv0 = a0.inverse()
    b: Dict[DimVector, CoeffFraction] = {t.zero: inv0}
    support = [(d, c) for d, c in a.coeffs.items() if any(d)]
    for d in t.indices(include_zero=False):
        terms = []
        for e, c in support:
            rest = tuple(i - j for i, j in zip(d, e))
            if min(rest) >= 0 and rest in b:
                terms.append(c * b[rest])
        s = frac_sum(terms)
        if s:
            b[d] = -(inv0 * s)
    return MultiSeries._raw(t, {d: c for d, c in b.items() if c})


def series_adams(a: MultiSeries, n: int) -> MultiSeries:
    """``t^d -> t^(nd)`` with coefficients mapped by ``psi_n``."""
    if n < 1:
        raise ValueError("Adams operations are indexed by n >= 1")
    t = a.truncation
    out = {}
    for d, c in a.coeffs.items():
        nd = tuple(n * x for x in d)
        if t.contains(nd):
            out[nd] = c.adams(n) if isinstance(c, RationalCoeff) else adams(c, n)
    return MultiSeries._raw(t, out)


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _adams_sum(f: Dict[DimVector, object], t: SeriesTruncation, weight: Callable[[int], Fraction]):
    """``sum_n weight(n) psi_n(f)`` as a dict of RationalCoeff."""
    acc: Dict[DimVector, list] = {}
    for n in range(1, t.top_degree + 1):
        w = weight(n)
        if not w:
            continue
        for d, c in f.items():
            nd = tuple(n * x for x in d)
            if not t.contains(nd):
                continue
            c = RationalCoeff.coerce(c)
            acc.setdefault(nd, []).append(c.adams(n).scale(w))
    out = {}
    for d, terms in acc.items():
        s = rational_sum(terms)
        if s:
            out[d] = s
    return out


def _exp_dict(h: Dict[DimVector, RationalCoeff], t: SeriesTruncation):
    """Ordinary exponential of ``h`` (no constant term), rational coefficients."""
    g: Dict[DimVector, RationalCoeff] = {t.zero: RationalCoeff(1)}
    support = sorted(h.items(), key=lambda kv: sum(kv[0]))
    for d in t.indices(include_zero=False):
        terms = []
        for e, c in support:
            rest = tuple(i - j for i, j in zip(d, e))
            if min(rest) < 0:
                continue
            gr = g.get(rest)
            if gr is not None:
                terms.append((c * gr).scale(sum(e)))
        s = rational_sum(terms)
        if s:
            g[d] = s.scale(Fraction(1, sum(d)))
    return g


def _log_dict(g: Dict[DimVector, object], t: SeriesTruncation):
    """Ordinary logarithm of ``g`` with ``g_0 = 1``, rational coefficients."""
    h: Dict[DimVector, RationalCoeff] = {}
    for d in t.indices(include_zero=False):
        size = sum(d)
        terms = []
        for e, c in h.items():
            rest = tuple(i - j for i, j in zip(d, e))
            if min(rest) < 0 or not any(rest):
                continue
            gr = g.get(rest)
            if gr is not None:
                terms.append((c * gr).scale(sum(e)))
        gd = g.get(d)
        s = rational_sum(terms).scale(Fraction(-1, size))
        if gd is not None:
            s = s + RationalCoeff.coerce(gd)
        if s:
            h[d] = s
    return h


def _integral(d: Dict[DimVector, object], t: SeriesTruncation) -> MultiSeries:
    out = {}
    for k, c in d.items():
        c = c.to_fraction() if isinstance(c, RationalCoeff) else c
        if c:
            out[k] = c
    return MultiSeries._raw(t, out)


def pleth_exp(f: MultiSeries) -> MultiSeries:
    """Plethystic exponential ``Sym(f) = exp(sum_n psi_n(f)/n)``; needs ``f_0 = 0``."""
    t = f.truncation
    if f.coeffs.get(t.zero):
        raise NonzeroConstantTerm("Sym needs a series without constant term")
    h = _adams_sum(f.coeffs, t, lambda n: Fraction(1, n))
    return _integral(_exp_dict(h, t), t)


def pleth_log(g: MultiSeries) -> MultiSeries:
    """Inverse of :func:`pleth_exp`; needs ``g_0 = 1``."""
    t = g.truncation
    if g.constant_term() != 1:
        raise ConstantTermNotOne(f"constant term is {g.constant_term()}, expected 1")
    h = _log_dict(g.coeffs, t)
    return _integral(_adams_sum(h, t, lambda n: Fraction(_mobius(n), n)), t)


def restrict_to_slope(a: MultiSeries, theta: Sequence[int], mu) -> MultiSeries:
    """Keep the constant term and the indices of slope ``mu``."""
    mu = Fraction(mu)
    return MultiSeries._raw(
        a.truncation,
        {d: c for d, c in a.coeffs.items() if not any(d) or slope(theta, d) == mu},
    )
