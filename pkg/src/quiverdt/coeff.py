"""Exact arithmetic in Z[v, 1/v] and its localization at the factors L^r - 1.

Throughout, ``v`` is the formal square root of the Lefschetz class, so
``L = v**2`` and half-integer powers of ``L`` are integer powers of ``v``.

A :class:`CoeffFraction` is a Laurent polynomial divided by a multiset of
factors ``v**(2r) - 1``; the multiset is stored as a sorted tuple of the
``r`` values and is never multiplied out.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Union

from . import kernels
from .errors import NonIntegralResult, NonUnitConstantTerm, NotDivisible

# exponents are kept inside the int64 range; Python ints would silently grow
_EXP_LIMIT = 2**62


class VPolynomial:
    """Immutable Laurent polynomial in ``v`` with integer coefficients.

    Stored densely as a lowest exponent plus a tuple of coefficients, both
    ends trimmed, so the zero polynomial is ``low=0, coeffs=()``.
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, terms: Union[None, int, Mapping[int, int], "VPolynomial"] = None):
        if terms is None:
            low, coeffs = 0, []
        elif isinstance(terms, VPolynomial):
            low, coeffs = terms.low, list(terms.coeffs)
        elif isinstance(terms, int):
            low, coeffs = 0, [terms]
        else:
            items = {int(k): int(c) for k, c in terms.items() if c}
            if not items:
                low, coeffs = 0, []
            else:
                low, high = min(items), max(items)
                coeffs = [0] * (high - low + 1)
                for k, c in items.items():
                    coeffs[k - low] = c
        low, coeffs = _trim(low, coeffs)
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_dense(cls, low: int, coeffs) -> "VPolynomial":
        self = object.__new__(cls)
        low, coeffs = _trim(low, coeffs)
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "coeffs", coeffs)
        return self

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "VPolynomial":
        return cls.from_dense(k, (c,))

    def __setattr__(self, name, value):
        raise AttributeError("VPolynomial is immutable")

    # -- inspection --------------------------------------------------------
    @property
    def terms(self) -> dict:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.low + len(self.coeffs) - 1

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return self.low

    def coefficient(self, k: int) -> int:
        i = k - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def evaluate(self, x):
        """Value at ``x`` (an int or Fraction); negative powers give Fractions."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.low >= 0:
            return acc * x**self.low
        return Fraction(acc) / Fraction(x) ** (-self.low)

    # -- ring operations -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = VPolynomial(other)
        if not isinstance(other, VPolynomial):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.low, self.coeffs))

    def __neg__(self):
        return VPolynomial.from_dense(self.low, [-c for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, int):
            other = VPolynomial(other)
        if not isinstance(other, VPolynomial):
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        low = min(self.low, other.low)
        high = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        out = [0] * (high - low)
        off = self.low - low
        for i, c in enumerate(self.coeffs):
            out[off + i] = c
        off = other.low - low
        for i, c in enumerate(other.coeffs):
            out[off + i] += c
        return VPolynomial.from_dense(low, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = VPolynomial(other)
        if not isinstance(other, VPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return VPolynomial()
            return VPolynomial.from_dense(self.low, [c * other for c in self.coeffs])
        if not isinstance(other, VPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return VPolynomial()
        if len(other.coeffs) == 1:
            c = other.coeffs[0]
            return VPolynomial.from_dense(self.low + other.low, [x * c for x in self.coeffs])
        if len(self.coeffs) == 1:
            c = self.coeffs[0]
            return VPolynomial.from_dense(self.low + other.low, [x * c for x in other.coeffs])
        return VPolynomial.from_dense(
            self.low + other.low, kernels.mul(self.coeffs, other.coeffs)
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial() and abs(self.coeffs[0]) == 1:
                return VPolynomial.monomial(self.low * n, self.coeffs[0] ** (-n))
            raise NotDivisible("negative power of a non-unit")
        result = VPolynomial(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "VPolynomial":
        """Multiply by ``v**k``."""
        if not self.coeffs:
            return self
        return VPolynomial.from_dense(self.low + k, self.coeffs)

    def mul_binomial(self, n: int) -> "VPolynomial":
        """Multiply by ``v**n - 1``."""
        if not self.coeffs:
            return self
        return VPolynomial.from_dense(self.low, kernels.mul_binomial(self.coeffs, n))

    def div_binomial(self, n: int):
        """Exact quotient by ``v**n - 1`` or ``None``."""
        if not self.coeffs:
            return self
        q = kernels.div_binomial(self.coeffs, n)
        if q is None:
            return None
        return VPolynomial.from_dense(self.low, q)

    def exact_div(self, q: "VPolynomial") -> "VPolynomial":
        return poly_exact_div(self, q)

    # -- lambda-ring structure -------------------------------------------
    def adams(self, n: int) -> "VPolynomial":
        """``v**k -> (-1)**((n-1)k) v**(nk)``; see :func:`adams`."""
        if n < 1:
            raise ValueError("Adams operations are indexed by n >= 1")
        if n == 1 or not self.coeffs:
            return self
        flip = n % 2 == 0
        out = [0] * ((len(self.coeffs) - 1) * n + 1)
        for i, c in enumerate(self.coeffs):
            if flip and (self.low + i) % 2:
                c = -c
            out[i * n] = c
        return VPolynomial.from_dense(self.low * n, out)

    def bar(self) -> "VPolynomial":
        """Substitute ``v -> 1/v``."""
        if not self.coeffs:
            return self
        return VPolynomial.from_dense(-self.degree, self.coeffs[::-1])

    # -- display -------------------------------------------------------------
    def __repr__(self):
        return f"VPolynomial({self.terms!r})"

    def __str__(self):
        return format_poly(self)


def _trim(low, coeffs):
    coeffs = list(coeffs)
    start = 0
    n = len(coeffs)
    while start < n and coeffs[start] == 0:
        start += 1
    if start == n:
        return 0, ()
    end = n
    while coeffs[end - 1] == 0:
        end -= 1
    low += start
    if low < -_EXP_LIMIT or low + end - start > _EXP_LIMIT:
        raise OverflowError("exponent of v outside the int64 range")
    return low, tuple(coeffs[start:end])


V = VPolynomial.monomial(1)
L = VPolynomial.monomial(2)
ONE = VPolynomial(1)
ZERO = VPolynomial()


def poly_exact_div(p: VPolynomial, q: VPolynomial) -> VPolynomial:
    """Return ``s`` with ``p == q * s`` or raise :class:`NotDivisible`."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return ZERO
    qc = q.coeffs
    if len(qc) == 1:
        c = qc[0]
        if any(x % c for x in p.coeffs):
            raise NotDivisible(f"{p} is not divisible by {q}")
        return VPolynomial.from_dense(p.low - q.low, [x // c for x in p.coeffs])
    if qc[0] == -1 and qc[-1] == 1 and not any(qc[1:-1]):
        s = p.div_binomial(len(qc) - 1)
        if s is None:
            raise NotDivisible(f"{p} is not divisible by {q}")
        return s.shift(-q.low)
    if len(p.coeffs) < len(qc):
        raise NotDivisible(f"{p} is not divisible by {q}")
    rem = list(p.coeffs)
    nq = len(qc)
    lead = qc[-1]
    slen = len(rem) - nq + 1
    s = [0] * slen
    for i in range(slen - 1, -1, -1):
        top = rem[i + nq - 1]
        if top:
            if top % lead:
                raise NotDivisible(f"{p} is not divisible by {q}")
            c = top // lead
            s[i] = c
            for j, qj in enumerate(qc):
                if qj:
                    rem[i + j] -= c * qj
    if any(rem):
        raise NotDivisible(f"{p} is not divisible by {q}")
    return VPolynomial.from_dense(p.low - q.low, s)


# ---------------------------------------------------------------------------
# fractions

def _reduce(num: VPolynomial, den):
    """Greedily cancel denominator factors that divide the numerator."""
    if not num.coeffs:
        return ZERO, ()
    if not den:
        return num, ()
    counts = Counter(den)
    kept = []
    for r in sorted(counts, reverse=True):
        k = counts[r]
        while k:
            q = num.div_binomial(2 * r)
            if q is None:
                break
            num = q
            k -= 1
        kept.extend([r] * k)
    kept.sort()
    return num, tuple(kept)


def _lift(num: VPolynomial, have: Counter, target: Counter) -> VPolynomial:
    for r, k in target.items():
        for _ in range(k - have.get(r, 0)):
            num = num.mul_binomial(2 * r)
    return num


def _union(counters) -> Counter:
    out = Counter()
    for c in counters:
        for r, k in c.items():
            if k > out[r]:
                out[r] = k
    return out


class CoeffFraction:
    """Element ``numerator / prod(v**(2r) - 1 for r in denominator)``.

    Constructed values are reduced: no remaining factor divides the numerator
    exactly. Equality is decided by subtraction, so it is sound even when two
    reduced forms of one value differ.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator=0, denominator: Iterable[int] = ()):
        if not isinstance(numerator, VPolynomial):
            numerator = VPolynomial(numerator)
        den = tuple(sorted(int(r) for r in denominator))
        if den and den[0] < 1:
            raise ValueError("denominator factors L^r - 1 need r >= 1")
        num, den = _reduce(numerator, den)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def _raw(cls, num: VPolynomial, den: tuple) -> "CoeffFraction":
        self = object.__new__(cls)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)
        return self

    @classmethod
    def coerce(cls, x) -> "CoeffFraction":
        if isinstance(x, CoeffFraction):
            return x
        if isinstance(x, (int, VPolynomial)):
            return cls._raw(VPolynomial(x), ())
        raise TypeError(f"cannot interpret {x!r} as a CoeffFraction")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "CoeffFraction":
        return cls._raw(VPolynomial.monomial(k, c), ())

    def __setattr__(self, name, value):
        raise AttributeError("CoeffFraction is immutable")

    # -- predicates ----------------------------------------------------------
    def __bool__(self):
        return bool(self.numerator)

    def is_zero(self) -> bool:
        return not self.numerator

    def is_laurent(self) -> bool:
        return not self.denominator

    def to_polynomial(self) -> VPolynomial:
        if self.denominator:
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.numerator

    def evaluate(self, x):
        """Exact value at a rational point ``x`` with ``x**2`` not a root of unity."""
        val = Fraction(self.numerator.evaluate(Fraction(x)))
        for r in self.denominator:
            val /= Fraction(x) ** (2 * r) - 1
        return val

    # -- arithmetic ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, VPolynomial)):
            other = CoeffFraction.coerce(other)
        if not isinstance(other, CoeffFraction):
            return NotImplemented
        if self.denominator == other.denominator:
            return self.numerator == other.numerator
        return (self - other).is_zero()

    def __hash__(self):
        # any exact evaluation is compatible with equality
        return hash(self.evaluate(2))

    def __neg__(self):
        return CoeffFraction._raw(-self.numerator, self.denominator)

    def __add__(self, other):
        try:
            other = CoeffFraction.coerce(other)
        except TypeError:
            return NotImplemented
        return frac_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = CoeffFraction.coerce(other)
        except TypeError:
            return NotImplemented
        return frac_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return CoeffFraction._raw(ZERO, ())
            return CoeffFraction(self.numerator * other, self.denominator)
        try:
            other = CoeffFraction.coerce(other)
        except TypeError:
            return NotImplemented
        return frac_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CoeffFraction.coerce(1)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, k: int) -> "CoeffFraction":
        """Multiply by ``v**k``."""
        return CoeffFraction._raw(self.numerator.shift(k), self.denominator)

    def inverse(self) -> "CoeffFraction":
        """Inverse in the localized ring.

        Units are ``±v^k`` times products of cyclotomic polynomials in ``L``
        (each divides some ``L^r - 1``); anything else raises.
        """
        if not self.numerator:
            raise ZeroDivisionError("zero is not invertible")
        num = self.numerator
        top = ONE
        stripped = []
        # deg Phi_k = phi(k) >= sqrt(k/2), so k <= 2 deg^2 suffices
        k = 1
        while len(num.coeffs) > 1 and k <= (len(num.coeffs) - 1) ** 2 // 2 + 2:
            phi = cyclotomic_in_l(k)
            if len(phi.coeffs) > len(num.coeffs):
                k += 1
                continue
            try:
                num = poly_exact_div(num, phi)
            except NotDivisible:
                k += 1
                continue
            # 1/Phi_k(L) = ((L^k - 1)/Phi_k(L)) / (L^k - 1)
            top = top * poly_exact_div(lp_binomial(k), phi)
            stripped.append(k)
        if not (num.is_monomial() and abs(num.coeffs[0]) == 1):
            raise NonUnitConstantTerm(f"{self} is not a unit")
        top = top * VPolynomial.monomial(-num.low, num.coeffs[0])
        for r in self.denominator:
            top = top.mul_binomial(2 * r)
        return CoeffFraction(top, stripped)

    def adams(self, n: int) -> "CoeffFraction":
        return adams(self, n)

    def bar(self) -> "CoeffFraction":
        return bar(self)

    def __repr__(self):
        if not self.denominator:
            return f"CoeffFraction({self.numerator.terms!r})"
        return f"CoeffFraction({self.numerator.terms!r}, {list(self.denominator)!r})"

    def __str__(self):
        return format_fraction(self)


def frac_add(a: CoeffFraction, b: CoeffFraction) -> CoeffFraction:
    """Exact sum over the union denominator, reduced."""
    if not a.numerator:
        return b
    if not b.numerator:
        return a
    if a.denominator == b.denominator:
        if not a.denominator:
            return CoeffFraction._raw(a.numerator + b.numerator, ())
        num, den = _reduce(a.numerator + b.numerator, a.denominator)
        return CoeffFraction._raw(num, den)
    ca, cb = Counter(a.denominator), Counter(b.denominator)
    u = _union((ca, cb))
    num = _lift(a.numerator, ca, u) + _lift(b.numerator, cb, u)
    num, den = _reduce(num, tuple(sorted(u.elements())))
    return CoeffFraction._raw(num, den)


def frac_sum(terms: Iterable[CoeffFraction]) -> CoeffFraction:
    """Sum many fractions with a single common denominator and one reduction."""
    terms = [t for t in terms if t.numerator]
    if not terms:
        return CoeffFraction._raw(ZERO, ())
    if len(terms) == 1:
        return terms[0]
    counters = [Counter(t.denominator) for t in terms]
    u = _union(counters)
    num = ZERO
    for t, c in zip(terms, counters):
        num = num + _lift(t.numerator, c, u)
    num, den = _reduce(num, tuple(sorted(u.elements())))
    return CoeffFraction._raw(num, den)


def frac_mul(a: CoeffFraction, b: CoeffFraction) -> CoeffFraction:
    """Exact product, reduced."""
    if not a.numerator or not b.numerator:
        return CoeffFraction._raw(ZERO, ())
    if not b.denominator and not a.denominator:
        return CoeffFraction._raw(a.numerator * b.numerator, ())
    na, db = _reduce(a.numerator, b.denominator)
    nb, da = _reduce(b.numerator, a.denominator)
    num, den = _reduce(na * nb, da + db)
    return CoeffFraction._raw(num, den)


def adams(f, n: int) -> CoeffFraction:
    """Adams operation for which ``-v`` is a line element.

    ``psi_n(v**k) = (-1)**((n-1)k) v**(nk)`` on numerators and
    ``psi_n(L**r - 1) = L**(nr) - 1`` on denominator factors.
    """
    f = CoeffFraction.coerce(f)
    if n < 1:
        raise ValueError("Adams operations are indexed by n >= 1")
    if n == 1:
        return f
    return CoeffFraction(f.numerator.adams(n), [n * r for r in f.denominator])


def bar(f) -> CoeffFraction:
    """Involution ``v -> 1/v``; ``1/(L^r-1) -> -L^r/(L^r-1)``."""
    f = CoeffFraction.coerce(f)
    num = f.numerator.bar()
    if f.denominator:
        num = num.shift(2 * sum(f.denominator))
        if len(f.denominator) % 2:
            num = -num
    return CoeffFraction(num, f.denominator)


def lp_binomial(r: int) -> VPolynomial:
    """``L**r - 1`` as a polynomial in ``v``."""
    return VPolynomial({2 * r: 1, 0: -1})


_CYCLOTOMIC: dict = {}


def cyclotomic_in_l(k: int) -> VPolynomial:
    """The cyclotomic polynomial ``Phi_k`` evaluated at ``L = v**2``."""
    if k not in _CYCLOTOMIC:
        p = lp_binomial(k)
        for j in range(1, k):
            if k % j == 0:
                p = poly_exact_div(p, cyclotomic_in_l(j))
        _CYCLOTOMIC[k] = p
    return _CYCLOTOMIC[k]


def gauss_binomial(N: int, k: int) -> VPolynomial:
    """Gaussian binomial ``[N choose k]`` in ``L = v**2``."""
    if k < 0 or N < 0 or k > N:
        raise ValueError(f"need 0 <= k <= N, got N={N}, k={k}")
    k = min(k, N - k)
    num = ONE
    for i in range(k):
        num = num.mul_binomial(2 * (N - i))
    for i in range(1, k + 1):
        q = num.div_binomial(2 * i)
        assert q is not None
        num = q
    return num


def class_gl(n: int) -> CoeffFraction:
    """Class of the general linear group: ``L**C(n,2) * prod_{r<=n} (L**r - 1)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = VPolynomial.monomial(n * (n - 1))
    for r in range(1, n + 1):
        p = p.mul_binomial(2 * r)
    return CoeffFraction._raw(p, ())


# ---------------------------------------------------------------------------
# rational intermediates

class RationalCoeff:
    """``value / denominator`` with a positive integer denominator.

    Only used inside plethystic Exp/Log, where terms ``1/n`` appear.
    """

    __slots__ = ("value", "denominator")

    def __init__(self, value, denominator: int = 1):
        value = CoeffFraction.coerce(value)
        if denominator == 0:
            raise ZeroDivisionError("zero integer denominator")
        if denominator < 0:
            value, denominator = -value, -denominator
        if denominator != 1:
            g = math.gcd(value.numerator.content(), denominator)
            if g > 1:
                value = CoeffFraction._raw(
                    VPolynomial.from_dense(
                        value.numerator.low, [c // g for c in value.numerator.coeffs]
                    ),
                    value.denominator,
                )
                denominator //= g
            if not value.numerator:
                denominator = 1
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("RationalCoeff is immutable")

    @classmethod
    def coerce(cls, x) -> "RationalCoeff":
        if isinstance(x, RationalCoeff):
            return x
        return cls(CoeffFraction.coerce(x), 1)

    def __bool__(self):
        return bool(self.value)

    def __neg__(self):
        return RationalCoeff(-self.value, self.denominator)

    def __add__(self, other):
        return rational_sum((self, RationalCoeff.coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return rational_sum((self, -RationalCoeff.coerce(other)))

    def __mul__(self, other):
        if isinstance(other, Fraction):
            return self.scale(other)
        other = RationalCoeff.coerce(other)
        return RationalCoeff(self.value * other.value, self.denominator * other.denominator)

    __rmul__ = __mul__

    def scale(self, q) -> "RationalCoeff":
        q = Fraction(q)
        return RationalCoeff(self.value * q.numerator, self.denominator * q.denominator)

    def adams(self, n: int) -> "RationalCoeff":
        return RationalCoeff(adams(self.value, n), self.denominator)

    def __eq__(self, other):
        if not isinstance(other, RationalCoeff):
            try:
                other = RationalCoeff.coerce(other)
            except TypeError:
                return NotImplemented
        return self.value * other.denominator == other.value * self.denominator

    __hash__ = None

    def to_fraction(self) -> CoeffFraction:
        if self.denominator != 1:
            raise NonIntegralResult(
                f"coefficient {self.value} / {self.denominator} did not clear its integer denominator"
            )
        return self.value

    def __repr__(self):
        return f"RationalCoeff({self.value!r}, {self.denominator})"


def rational_sum(terms: Iterable[RationalCoeff]) -> RationalCoeff:
    terms = [t for t in terms if t.value]
    if not terms:
        return RationalCoeff(0)
    if len(terms) == 1:
        return terms[0]
    den = 1
    for t in terms:
        den = den * t.denominator // math.gcd(den, t.denominator)
    if den == 1:
        return RationalCoeff(frac_sum(t.value for t in terms), 1)
    return RationalCoeff(frac_sum(t.value * (den // t.denominator) for t in terms), den)


# ---------------------------------------------------------------------------
# formatting

def _term_pretty(c: int, k: int, latex: bool) -> str:
    if k == 0:
        mono = ""
    elif k == 1:
        mono = "v"
    elif latex:
        mono = f"v^{{{k}}}"
    else:
        mono = f"v^{k}"
    a = abs(c)
    if not mono:
        return str(a)
    if a == 1:
        return mono
    return f"{a}{mono}" if latex else f"{a}*{mono}"


def format_poly(p: VPolynomial, latex: bool = False) -> str:
    """Terms in decreasing exponent, e.g. ``v + v^-1`` / ``v + v^{-1}``."""
    if not p:
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        t = _term_pretty(c, p.low + i, latex)
        if not parts:
            parts.append(t if c > 0 else "-" + t)
        else:
            parts.append(("+ " if c > 0 else "- ") + t)
    return " ".join(parts)


def format_fraction(f: CoeffFraction, latex: bool = False) -> str:
    num = format_poly(f.numerator, latex)
    if not f.denominator:
        return num
    factors = []
    for r, k in sorted(Counter(f.denominator).items()):
        base = f"v^{{{2 * r}}} - 1" if latex else f"v^{2 * r} - 1"
        if k == 1:
            factors.append(f"({base})")
        else:
            factors.append(f"({base})^{{{k}}}" if latex else f"({base})^{k}")
    if latex:
        return f"\\frac{{{num}}}{{{''.join(factors)}}}"
    return f"({num}) / ({' '.join(factors)})" if len(factors) > 1 else f"({num}) / {factors[0]}"
